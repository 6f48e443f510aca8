// supershift-lab command-line front end; talks to the library only through the C API.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "supershift_lab.h"

namespace {

using nlohmann::json;

enum Exit { kPass = 0, kVerdictFail = 1, kUsage = 2, kNumeric = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int report_error(const std::string& code, const std::string& message, int exit_code) {
  std::string one_line = message;
  for (char& c : one_line)
    if (c == '\n' || c == '\r') c = ' ';
  std::fprintf(stderr, "ERROR %s %s\n", code.c_str(), one_line.c_str());
  return exit_code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  if (!out) throw UsageError("write failed for '" + path.string() + "'");
}

// One subcommand's options, stored as text and forwarded verbatim as config strings.
struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::string psi_path;

  Command(CLI::App& parent, const std::string& sub, const std::string& full, const std::string& help)
      : name(full), app(parent.add_subcommand(sub, help)) {}

  Command& opt(const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option(flag, values[key], help)->allow_extra_args(false);
    return *this;
  }
  Command& psi() {
    app->add_option("--psi", psi_path, "function spec JSON file")->required();
    return *this;
  }

  json config() const {
    json cfg = json::object();
    for (auto& [k, v] : values)
      if (!v.empty()) cfg[k] = v;
    if (!psi_path.empty()) {
      try {
        cfg["psi"] = json::parse(read_file(psi_path));
      } catch (const json::exception& e) {
        throw UsageError("'" + psi_path + "' is not valid JSON: " + e.what());
      }
    }
    return cfg;
  }
};

int emit(const sslab_report* rep, const std::string& out, std::string format, bool transform) {
  std::string json_text = sslab_report_json(rep);
  std::string csv_text = sslab_report_csv(rep);
  if (format.empty()) {
    std::string ext = std::filesystem::path(out).extension().string();
    format = ext == ".csv" ? "csv" : "json";
  }
  if (transform && format != "json") throw UsageError("transforms emit a function spec; use --format json");
  if (out.empty()) {
    std::fputs((format == "csv" ? csv_text : json_text).c_str(), stdout);
    std::fputc('\n', stdout);
  } else if (format == "both") {
    std::filesystem::path p(out);
    write_file(std::filesystem::path(p).replace_extension(".json"), json_text);
    write_file(std::filesystem::path(p).replace_extension(".csv"), csv_text);
  } else {
    write_file(out, format == "csv" ? csv_text : json_text);
  }
  return sslab_report_passed(rep) ? kPass : kVerdictFail;
}

int exit_for(sslab_status s) {
  return s == SSLAB_PARSE || s == SSLAB_INVALID_ARGUMENT ? kUsage : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supershift-lab: superoscillation and supershift numerics"};
  app.set_version_flag("--version", std::string(sslab_version()));
  app.require_subcommand(1, 1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string precision = "auto", out, format;
  int jobs = 1;
  app.add_option("--precision", precision, "auto or a working width in bits")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads, 0 = hardware concurrency")->capture_default_str();
  app.add_option("--out", out, "output path; format follows the extension unless --format is given");
  app.add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));

  std::vector<Command> cmds;
  cmds.reserve(16);
  cmds.emplace_back(app, "superosc", "superosc", "superoscillating sequence ladder");
  cmds.back().opt("--a", "a", "superoscillation parameter").opt("--x", "x", "grid start:end:step or list")
      .opt("--n", "n", "N ladder").opt("--eps", "eps", "epsilon family");
  cmds.emplace_back(app, "bernstein", "bernstein", "Bernstein sums against their Newton form");
  cmds.back().psi().opt("--b", "b", "real range or 're-range x im-range'").opt("--bprime", "bprime", "shift b'")
      .opt("--n", "n", "N ladder").opt("--eps", "eps", "epsilon family");

  CLI::App* regions = app.add_subcommand("regions", "lemniscate loops and W_A membership");
  regions->require_subcommand(1, 1);
  cmds.emplace_back(*regions, "lemniscate", "regions.lemniscate", "classify a grid against the loops");
  cmds.back().opt("--c", "c", "loop centre parameter").opt("--grid", "grid", "'re-range x im-range'")
      .opt("--resolution", "resolution", "segment samples");
  cmds.emplace_back(*regions, "wa", "regions.wa", "membership in W_A");
  cmds.back().opt("--interval", "interval", "lo,hi").opt("--z", "z", "re,im");

  cmds.emplace_back(app, "kantorovich", "kantorovich", "two-limit experiment for a glued target");
  cmds.back().opt("--gminus", "gminus", "left polynomial coefficients").opt("--gplus", "gplus", "right polynomial coefficients")
      .opt("--zminus", "zminus", "left evaluation point re,im").opt("--zplus", "zplus", "right evaluation point re,im")
      .opt("--bprime", "bprime", "shift b'").opt("--eta", "eta", "c-range margin").opt("--n", "n", "N ladder")
      .opt("--eps", "eps", "epsilon family");

  CLI::App* ss = app.add_subcommand("supershift", "supershift checks and transforms");
  ss->require_subcommand(1, 1);
  cmds.emplace_back(*ss, "check", "supershift.check", "family-max supershift convergence");
  cmds.back().psi().opt("--interval", "interval", "lo,hi").opt("--grid-step", "grid_step", "grid step")
      .opt("--n", "n", "N ladder").opt("--eps", "eps", "epsilon families")
      .opt("--probe", "probe", "analyticity probe glue_lo,glue_hi,width");
  cmds.emplace_back(*ss, "convolve", "supershift.convolve", "mollify with the scaled bump");
  cmds.back().psi().opt("--support", "support", "bump support").opt("--nodes", "nodes", "quadrature nodes");
  cmds.emplace_back(*ss, "primitive", "supershift.primitive", "antiderivative vanishing at a0");
  cmds.back().psi().opt("--a0", "a0", "base point");
  cmds.emplace_back(*ss, "multiply", "supershift.multiply", "multiply by the identity");
  cmds.back().psi();

  cmds.emplace_back(app, "evolve", "evolve", "Schroedinger evolution of superoscillating data");
  cmds.back().opt("--potential", "potential", "free or harmonic").opt("--a", "a", "superoscillation parameter")
      .opt("--t", "t", "time range").opt("--x", "x", "space range").opt("--n", "n", "N ladder");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kUsage);
  }

  const Command* chosen = nullptr;
  for (auto& c : cmds)
    if (c.app->parsed()) chosen = &c;
  if (!chosen) return report_error("usage", "no subcommand given", kUsage);

  if (const char* env = std::getenv("SUPERSHIFT_LAB_PRECISION"); env && *env) precision = env;

  sslab_report* rep = nullptr;
  try {
    json cfg = chosen->config();
    bool transform = chosen->name.rfind("supershift.", 0) == 0 && chosen->name != "supershift.check";
    if (!transform) {
      cfg["precision"] = precision;
      cfg["jobs"] = jobs;
    }
    sslab_status st = sslab_run(chosen->name.c_str(), cfg.dump().c_str(), &rep);
    if (st != SSLAB_OK) return report_error(sslab_status_string(st), sslab_last_error(), exit_for(st));
    int code = emit(rep, out, format, transform);
    sslab_report_free(rep);
    return code;
  } catch (const UsageError& e) {
    sslab_report_free(rep);
    return report_error("io", e.what(), kUsage);
  } catch (const std::exception& e) {
    sslab_report_free(rep);
    return report_error("internal", e.what(), kNumeric);
  }
}
