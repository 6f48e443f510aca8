#include "sslab/runs.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sslab/bernstein.hpp"
#include "sslab/evolve.hpp"
#include "sslab/kantorovich.hpp"
#include "sslab/parallel.hpp"
#include "sslab/regions.hpp"
#include "sslab/superosc.hpp"
#include "sslab/supershift.hpp"

namespace sslab::runs {

using nlohmann::json;
using numkernel::FunctionSpec;
using numkernel::PrecisionPolicy;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  auto e = s.find_last_not_of(" \t\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double to_number(const std::string& raw) {
  std::string s = trim(raw);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) fail(Errc::parse, "bad number '" + raw + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

// Reads config values that may be CLI-syntax strings or native JSON, recording what was used.
class Config {
 public:
  explicit Config(const std::string& text) {
    try {
      in_ = text.empty() ? json::object() : json::parse(text);
    } catch (const json::exception& e) {
      fail(Errc::parse, std::string("config is not valid JSON: ") + e.what());
    }
    if (!in_.is_object()) fail(Errc::parse, "config must be a JSON object");
    resolved_ = json::object();
  }

  bool has(const std::string& k) const { return in_.contains(k) && !in_[k].is_null(); }

  double number(const std::string& k, double def) {
    json v = has(k) ? in_[k] : json(def);
    double d = v.is_string() ? to_number(v.get<std::string>()) : v.is_number() ? v.get<double>() : bad(k);
    resolved_[k] = d;
    return d;
  }

  int integer(const std::string& k, int def) {
    double d = number(k, def);
    if (d != std::floor(d) || std::fabs(d) > 1e9) fail(Errc::parse, k + " must be an integer");
    resolved_[k] = static_cast<int>(d);
    return static_cast<int>(d);
  }

  std::string text(const std::string& k, const std::string& def) {
    json v = has(k) ? in_[k] : json(def);
    if (!v.is_string()) bad(k);
    resolved_[k] = v;
    return v.get<std::string>();
  }

  std::vector<double> range(const std::string& k, const std::string& def) {
    json v = has(k) ? in_[k] : json(def);
    resolved_[k] = v;
    if (v.is_string()) return parse_range(v.get<std::string>());
    if (v.is_number()) return {v.get<double>()};
    if (v.is_array()) {
      std::vector<double> out;
      for (auto& e : v) out.push_back(e.get<double>());
      if (out.empty()) fail(Errc::parse, k + " is empty");
      return out;
    }
    bad(k);
  }

  std::vector<int> ints(const std::string& k, const std::string& def) {
    json v = has(k) ? in_[k] : json(def);
    std::vector<int> out;
    if (v.is_string()) out = parse_int_list(v.get<std::string>());
    else if (v.is_number_integer()) out = {v.get<int>()};
    else if (v.is_array())
      for (auto& e : v) out.push_back(e.get<int>());
    else bad(k);
    if (out.empty()) fail(Errc::parse, k + " is empty");
    resolved_[k] = out;
    return out;
  }

  std::complex<double> complex(const std::string& k, std::complex<double> def) {
    json v = has(k) ? in_[k] : complex_json(def);
    resolved_[k] = v;
    if (v.is_string()) return parse_complex_pair(v.get<std::string>());
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
    bad(k);
  }

  std::vector<std::complex<double>> coeffs(const std::string& k, const std::string& def) {
    json v = has(k) ? in_[k] : json(def);
    resolved_[k] = v;
    std::vector<std::complex<double>> out;
    if (v.is_string()) {
      for (auto& t : split(v.get<std::string>(), ',')) out.emplace_back(to_number(t), 0.0);
    } else if (v.is_array()) {
      for (auto& e : v) {
        if (e.is_number()) out.emplace_back(e.get<double>(), 0.0);
        else if (e.is_array() && e.size() == 2) out.emplace_back(e[0].get<double>(), e[1].get<double>());
        else bad(k);
      }
    } else {
      bad(k);
    }
    if (out.empty()) fail(Errc::parse, k + " needs at least one coefficient");
    return out;
  }

  std::vector<sampling::EpsilonSpec> families(const std::string& k, const std::string& def) {
    json v = has(k) ? in_[k] : json(def);
    std::vector<sampling::EpsilonSpec> out;
    if (v.is_string()) out = sampling::EpsilonSpec::parse_many(v.get<std::string>());
    else if (v.is_array())
      for (auto& e : v) out.push_back(sampling::EpsilonSpec::parse(e.get<std::string>()));
    else bad(k);
    if (out.empty()) fail(Errc::parse, k + " names no epsilon family");
    json labels = json::array();
    for (auto& f : out) labels.push_back(f.label());
    resolved_[k] = labels;
    return out;
  }

  sampling::EpsilonSpec family(const std::string& k, const std::string& def) {
    auto f = families(k, def);
    if (f.size() != 1) fail(Errc::parse, k + " must name exactly one epsilon family");
    resolved_[k] = f[0].label();
    return f[0];
  }

  FunctionSpec spec(const std::string& k) {
    if (!has(k)) fail(Errc::parse, "config needs '" + k + "'");
    const json& v = in_[k];
    FunctionSpec f = FunctionSpec::from_json(v.is_string() ? v.get<std::string>() : v.dump());
    resolved_[k] = json::parse(f.to_json());
    return f;
  }

  PrecisionPolicy policy() {
    int guard = has("guard_bits") ? integer("guard_bits", 64) : 64;
    json v = has("precision") ? in_["precision"] : json("auto");
    std::string p;
    if (v.is_string()) p = v.get<std::string>();
    else if (v.is_number_integer()) p = std::to_string(v.get<int>());
    else bad("precision");
    PrecisionPolicy pol = parse_precision(p, guard);
    resolved_["precision"] = pol.mode == PrecisionPolicy::Mode::automatic ? json("auto") : json(pol.fixed_bits);
    resolved_["guard_bits"] = pol.guard_bits;
    return pol;
  }

  int jobs() {
    int j = has("jobs") ? integer("jobs", 1) : 1;
    if (j < 0) fail(Errc::parse, "jobs must be >= 0");
    resolved_.erase("jobs");  // parallelism never changes results, keep reports identical
    return j;
  }

  const json& resolved() const { return resolved_; }

 private:
  [[noreturn]] static double bad(const std::string& k) { fail(Errc::parse, "config value '" + k + "' has the wrong type"); }
  json in_;
  json resolved_;
};

json base_report(const std::string& command, const Config& cfg, const PrecisionPolicy& pol, int bits_used) {
  json r;
  r["tool"] = "supershift-lab";
  r["version"] = SSLAB_VERSION;
  r["command"] = command;
  r["config"] = cfg.resolved();
  r["precision"] = {{"mode", pol.mode == PrecisionPolicy::Mode::automatic ? "auto" : "fixed"},
                    {"fixed_bits", pol.mode == PrecisionPolicy::Mode::fixed ? json(pol.fixed_bits) : json(nullptr)},
                    {"guard_bits", pol.guard_bits},
                    {"bits_used", bits_used}};
  return r;
}

json ladder_thresholds(const ConvergenceReport& rep) {
  return {{"strict_decrease", true},
          {"required_reduction", rep.require_reduction ? json(rep.required_reduction) : json(nullptr)},
          {"reduction_rule", "4 per 8x growth in N, i.e. 4^(log8(N_last/N_first))"},
          {"exactness_floor", rep.floor},
          {"final_max", rep.final_max > 0 ? json(rep.final_max) : json(nullptr)}};
}

json convergence_json(const ConvergenceReport& rep) {
  json ladder = json::array();
  for (std::size_t i = 0; i < rep.n_ladder.size(); ++i)
    ladder.push_back({{"N", rep.n_ladder[i]}, {"sup_error", rep.sup_errors[i]}});
  return {{"grid", rep.grid},
          {"ladder", ladder},
          {"reduction_factor", number_or_null(rep.reduction_factor)},
          {"verdict", rep.pass ? "pass" : "fail"},
          {"reason", rep.reason},
          {"bits_used", rep.bits_used},
          {"thresholds", ladder_thresholds(rep)}};
}

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (auto* h : header) {
      os_ << (first ? "" : ",") << h;
      first = false;
    }
    os_ << "\n";
  }
  Csv& cell(const std::string& s) { sep(); os_ << s; return *this; }
  Csv& cell(double v) { return cell(format_double(v)); }
  Csv& cell(int v) { return cell(std::to_string(v)); }
  Csv& end() { os_ << "\n"; fresh_ = true; return *this; }
  std::string str() const { return os_.str(); }

 private:
  void sep() {
    if (!fresh_) os_ << ",";
    fresh_ = false;
  }
  std::ostringstream os_;
  bool fresh_ = true;
};

const char* verdict(bool pass) { return pass ? "pass" : "fail"; }

const char* kFamilyNote =
    "uniformity over all epsilon-sequences is certified only over the configured finite families (max reported)";

RunOutput run_superosc(Config& cfg) {
  PrecisionPolicy pol = cfg.policy();
  double a = cfg.number("a", 2.0);
  auto xs = cfg.range("x", "-3:3:0.1");
  auto ladder = cfg.ints("n", "25,50,100,200");
  auto eps = cfg.family("eps", "zero");
  int jobs = cfg.jobs();
  auto run = superosc::superosc_convergence(a, xs, ladder, eps, pol, jobs);
  json r = base_report("superosc", cfg, pol, run.report.bits_used);
  r["convergence"] = convergence_json(run.report);
  json eps_used = json::array();
  for (int n : ladder) eps_used.push_back({{"N", n}, {"eps_N", eps.at(n)}});
  r["epsilons"] = eps_used;
  r["verdict"] = verdict(run.report.pass);
  r["notes"] = json::array({kFamilyNote});
  Csv csv({"N", "x", "re_TN", "im_TN", "abs_err", "re_TN_hex", "im_TN_hex"});
  for (auto& s : run.samples)
    csv.cell(s.n).cell(s.x).cell(s.value.real()).cell(s.value.imag()).cell(s.abs_err)
        .cell(to_hex(s.value_mp.re)).cell(to_hex(s.value_mp.im)).end();
  return {r.dump(2), csv.str(), run.report.pass};
}

std::vector<std::complex<double>> complex_grid(const std::string& text) {
  auto xpos = text.find('x');
  std::vector<std::complex<double>> out;
  if (xpos == std::string::npos) {
    for (double v : parse_range(text)) out.emplace_back(v, 0.0);
    return out;
  }
  auto re = parse_range(text.substr(0, xpos)), im = parse_range(text.substr(xpos + 1));
  for (double y : im)
    for (double x : re) out.emplace_back(x, y);
  return out;
}

RunOutput run_bernstein(Config& cfg) {
  PrecisionPolicy pol = cfg.policy();
  FunctionSpec psi = cfg.spec("psi");
  std::string bspec = cfg.text("b", "0:1:0.05");
  auto bs = complex_grid(bspec);
  double bprime = cfg.number("bprime", 0.0);
  auto ladder = cfg.ints("n", "8,16,32");
  auto eps = cfg.family("eps", "zero");
  int jobs = cfg.jobs();
  struct Row {
    std::complex<double> value;
    Complex value_mp{53};
    double residual = 0, tol = 0;
    int bits = 0;
  };
  std::vector<Row> rows(ladder.size() * bs.size());
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    bernstein::BernsteinParams p{ladder[k], eps.at(ladder[k]), bprime};
    bernstein::SampleCache cache(psi, p);
    parallel_for(bs.size(), jobs, [&](std::size_t j) {
      auto v = bernstein::bernstein_eval(cache, p, bs[j], pol);
      auto nf = bernstein::newton_form_eval(psi, p, bs[j], pol);
      int bits = std::max(v.bits, nf.bits);
      double res = abs(Complex(v.value, bits) - Complex(nf.value, bits)).to_double();
      double scale = std::max(abs(v.value).to_double(), abs(nf.value).to_double());
      double tol = numkernel::guard_tolerance(16, pol) * (scale > 0 ? scale : 1.0);
      rows[k * bs.size() + j] = Row{v.value.to_complex(), std::move(v.value), res, tol, bits};
    });
  }
  bool pass = true;
  int bits_used = 0;
  double worst_rel = 0;
  for (auto& r : rows) {
    pass = pass && r.residual <= r.tol;
    bits_used = std::max(bits_used, r.bits);
    worst_rel = std::max(worst_rel, r.residual / r.tol * numkernel::guard_tolerance(16, pol));
  }
  json r = base_report("bernstein", cfg, pol, bits_used);
  r["points"] = bs.size();
  r["newton_identity"] = {{"max_relative_residual", worst_rel}, {"tolerance", numkernel::guard_tolerance(16, pol)}};
  r["thresholds"] = {{"relative_residual", numkernel::guard_tolerance(16, pol)}};
  r["verdict"] = verdict(pass);
  Csv csv({"N", "b_re", "b_im", "value_re", "value_im", "newton_residual", "value_re_hex", "value_im_hex"});
  for (std::size_t k = 0; k < ladder.size(); ++k)
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const Row& row = rows[k * bs.size() + j];
      csv.cell(ladder[k]).cell(bs[j].real()).cell(bs[j].imag()).cell(row.value.real()).cell(row.value.imag())
          .cell(row.residual).cell(to_hex(row.value_mp.re)).cell(to_hex(row.value_mp.im)).end();
    }
  return {r.dump(2), csv.str(), pass};
}

RunOutput run_lemniscate(Config& cfg) {
  double c = cfg.number("c", 0.5);
  std::string g = cfg.text("grid", "-0.5:1.5:0.01x-0.6:0.6:0.01");
  if (g.find('x') == std::string::npos) fail(Errc::parse, "lemniscate grid needs 're-range x im-range'");
  auto zs = complex_grid(g);
  int res = cfg.integer("resolution", 64);
  int jobs = cfg.jobs();
  std::vector<double> phi(zs.size());
  std::vector<std::string> cls(zs.size());
  parallel_for(zs.size(), jobs, [&](std::size_t i) {
    phi[i] = regions::lemniscate_value(c, zs[i]);
    try {
      cls[i] = regions::loop_name(regions::classify(c, zs[i], res));
    } catch (const Error& e) {
      if (e.code() != Errc::ambiguous) throw;
      cls[i] = "ambiguous";
    }
  });
  std::map<std::string, int> counts;
  for (auto& s : cls) counts[s]++;
  PrecisionPolicy pol;
  json r = base_report("regions.lemniscate", cfg, pol, 53);
  r["counts"] = counts;
  r["boundary_tolerance"] = regions::kBoundaryTol;
  r["verdict"] = "pass";
  json pts = json::array();
  Csv csv({"re", "im", "phi", "class"});
  for (std::size_t i = 0; i < zs.size(); ++i) {
    pts.push_back({zs[i].real(), zs[i].imag(), phi[i], cls[i]});
    csv.cell(zs[i].real()).cell(zs[i].imag()).cell(phi[i]).cell(cls[i]).end();
  }
  r["points"] = pts;
  return {r.dump(2), csv.str(), true};
}

std::pair<double, double> parse_interval(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) fail(Errc::parse, "interval must be 'lo,hi'");
  double lo = to_number(parts[0]), hi = to_number(parts[1]);
  if (!(lo < hi)) fail(Errc::parse, "interval must satisfy lo < hi");
  return {lo, hi};
}

RunOutput run_wa(Config& cfg) {
  auto [lo, hi] = parse_interval(cfg.text("interval", "-2,2"));
  auto z = cfg.complex("z", {0.3, 1.1});
  int samples = cfg.integer("samples", 4096);
  bool inside = regions::wA_contains(lo, hi, z, samples);
  double r_len = hi - lo;
  double dist = std::abs(z - std::complex<double>(std::clamp(z.real(), lo, hi), 0.0));
  PrecisionPolicy pol;
  json r = base_report("regions.wa", cfg, pol, 53);
  r["contains"] = inside;
  r["outer_bound"] = {{"dist_to_closure", dist}, {"bound", std::max(2.0, r_len - 2)}};
  r["verdict"] = "pass";
  Csv csv({"z_re", "z_im", "contains", "dist_to_closure"});
  csv.cell(z.real()).cell(z.imag()).cell(std::string(inside ? "true" : "false")).cell(dist).end();
  return {r.dump(2), csv.str(), true};
}

RunOutput run_kantorovich(Config& cfg) {
  PrecisionPolicy pol = cfg.policy();
  auto gm = cfg.coeffs("gminus", "1,-2");
  auto gp = cfg.coeffs("gplus", "-1,2");
  kantorovich::TwoLimitConfig k;
  k.z_minus = cfg.complex("zminus", {0.1, 0});
  k.z_plus = cfg.complex("zplus", {0.9, 0});
  k.b_prime = cfg.number("bprime", 0.0);
  k.eta = cfg.number("eta", 0.05);
  k.ladder = cfg.ints("n", "50,100,200,400");
  k.eps = cfg.family("eps", "zero");
  k.policy = pol;
  k.jobs = cfg.jobs();
  auto target = kantorovich::make_target(gm, gp);
  auto run = kantorovich::two_limit_experiment(target, k);
  json r = base_report("kantorovich", cfg, pol, std::max(run.minus.bits_used, run.plus.bits_used));
  r["left"] = convergence_json(run.minus);
  r["right"] = convergence_json(run.plus);
  r["q"] = {{"left", run.q_minus}, {"right", run.q_plus}};
  r["c_range"] = run.c_range;
  double sep_l = run.wrong_minus.back() / std::max(run.minus.sup_errors.back(), 1e-300);
  double sep_r = run.wrong_plus.back() / std::max(run.plus.sup_errors.back(), 1e-300);
  r["wrong_limit_separation"] = {{"left", sep_l}, {"right", sep_r}};
  r["verdict"] = verdict(run.pass);
  Csv csv({"side", "N", "z_re", "z_im", "value_re", "value_im", "limit_err", "wrong_limit_err"});
  for (std::size_t i = 0; i < k.ladder.size(); ++i) {
    csv.cell(std::string("left")).cell(k.ladder[i]).cell(k.z_minus.real()).cell(k.z_minus.imag())
        .cell(run.values_minus[i].real()).cell(run.values_minus[i].imag()).cell(run.minus.sup_errors[i])
        .cell(run.wrong_minus[i]).end();
    csv.cell(std::string("right")).cell(k.ladder[i]).cell(k.z_plus.real()).cell(k.z_plus.imag())
        .cell(run.values_plus[i].real()).cell(run.values_plus[i].imag()).cell(run.plus.sup_errors[i])
        .cell(run.wrong_plus[i]).end();
  }
  return {r.dump(2), csv.str(), run.pass};
}

RunOutput run_supershift_check(Config& cfg) {
  PrecisionPolicy pol = cfg.policy();
  FunctionSpec psi = cfg.spec("psi");
  std::string def_interval = psi.domain().bounded()
                                 ? format_double(psi.domain().lo) + "," + format_double(psi.domain().hi)
                                 : "-2.5,2.5";
  auto [lo, hi] = parse_interval(cfg.text("interval", def_interval));
  double step = cfg.number("grid_step", 0.25);
  auto ladder = cfg.ints("n", "25,50,100,200");
  auto fams = cfg.families("eps", "zero,c_over_N:1");
  int jobs = cfg.jobs();
  supershift::DomainA dom{lo, hi};
  auto grid = supershift::make_grid(dom, step);
  auto rep = supershift::tcsp_check(psi, dom, grid, ladder, fams, pol, jobs);
  json r = base_report("supershift.check", cfg, pol, rep.family_max.bits_used);
  r["domain"] = {{"lo", lo}, {"hi", hi}, {"R", hi - lo}};
  r["grid"] = {{"step", step}, {"points", grid.size()}, {"boundary_margin", supershift::kGridMargin}};
  json ladder_j = json::array();
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    json per = json::object();
    for (std::size_t f = 0; f < fams.size(); ++f) per[rep.labels[f]] = rep.per_family[k][f];
    ladder_j.push_back({{"N", ladder[k]}, {"per_family", per}, {"family_max", rep.family_max.sup_errors[k]}});
  }
  r["ladder"] = ladder_j;
  r["reduction_factor"] = number_or_null(rep.family_max.reduction_factor);
  r["thresholds"] = ladder_thresholds(rep.family_max);
  r["reason"] = rep.family_max.reason;
  r["verdict"] = verdict(rep.family_max.pass);
  json notes = json::array({kFamilyNote});
  if (cfg.has("probe")) {
    auto parts = split(cfg.text("probe", ""), ',');
    if (parts.size() != 3) fail(Errc::parse, "probe must be 'glue_lo,glue_hi,width'");
    auto pr = supershift::analyticity_probe(psi, to_number(parts[0]), to_number(parts[1]), to_number(parts[2]));
    r["analyticity_probe"] = {{"degree", pr.degree},           {"points", pr.points},
                              {"fit_interval", {pr.fit_lo, pr.fit_hi}},
                              {"probe_interval", {pr.probe_lo, pr.probe_hi}},
                              {"fit_residual", pr.fit_residual}, {"mispredict", pr.mispredict},
                              {"non_analytic_evidence", pr.non_analytic}};
    notes.push_back("analyticity probe is a numerical surrogate (one-sided polynomial fit), not a proof");
  }
  r["notes"] = notes;
  Csv csv({"N", "family", "sup_err"});
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    for (std::size_t f = 0; f < fams.size(); ++f) csv.cell(ladder[k]).cell(rep.labels[f]).cell(rep.per_family[k][f]).end();
    csv.cell(ladder[k]).cell(std::string("family_max")).cell(rep.family_max.sup_errors[k]).end();
  }
  return {r.dump(2), csv.str(), rep.family_max.pass};
}

RunOutput run_transform(const std::string& which, Config& cfg) {
  FunctionSpec psi = cfg.spec("psi");
  if (which == "convolve") {
    double support = cfg.number("support", 0.4);
    int nodes = cfg.integer("nodes", 64);
    return {supershift::convolve(psi, support, nodes).to_json(), "", true};
  }
  if (which == "primitive") return {supershift::primitive(psi, cfg.number("a0", 0.0)).to_json(), "", true};
  return {supershift::multiply_by_identity(psi).to_json(), "", true};
}

RunOutput run_evolve(Config& cfg) {
  PrecisionPolicy pol = cfg.policy();
  auto pot = evolve::parse_potential(cfg.text("potential", "free"));
  double a = cfg.number("a", 2.0);
  auto ts = cfg.range("t", "0:1:0.1");
  auto xs = cfg.range("x", "-3:3:0.25");
  auto ladder = cfg.ints("n", "25,50,100");
  int jobs = cfg.jobs();
  auto run = evolve::evolution_convergence(pot, a, ts, xs, ladder, pol, jobs);
  json r = base_report("evolve", cfg, pol, run.report.bits_used);
  r["potential"] = evolve::potential_name(pot);
  r["convergence"] = convergence_json(run.report);
  // initial condition: ψ_N(t=0) against the superoscillating datum
  double ic = -1;
  for (auto& s : run.samples) {
    if (s.t != 0.0) continue;
    auto f = superosc::eval_closed(s.n, 0.0, a, {s.x, 0.0}, pol);
    ic = std::max(ic, abs(Complex(f.value, s.value_mp.bits()) - s.value_mp).to_double());
  }
  if (ic >= 0) r["initial_condition_max_diff"] = ic;
  r["verdict"] = verdict(run.report.pass);
  Csv csv({"potential", "N", "t", "x", "re", "im", "abs_err_vs_limit", "re_hex", "im_hex"});
  for (auto& s : run.samples)
    csv.cell(std::string(evolve::potential_name(pot))).cell(s.n).cell(s.t).cell(s.x).cell(s.value.real())
        .cell(s.value.imag()).cell(s.abs_err).cell(to_hex(s.value_mp.re)).cell(to_hex(s.value_mp.im)).end();
  return {r.dump(2), csv.str(), run.report.pass};
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_range(const std::string& raw) {
  std::string text = trim(raw);
  if (text.empty()) fail(Errc::parse, "empty range");
  if (text.find(':') == std::string::npos) {
    std::vector<double> out;
    for (auto& t : split(text, ',')) out.push_back(to_number(t));
    return out;
  }
  auto parts = split(text, ':');
  if (parts.size() != 3) fail(Errc::parse, "range must be start:end:step");
  double start = to_number(parts[0]), end = to_number(parts[1]), step = to_number(parts[2]);
  if (!(step > 0)) fail(Errc::parse, "range step must be positive");
  if (start > end) fail(Errc::parse, "range start exceeds end");
  double span = (end - start) / step;
  if (span > 1e7) fail(Errc::parse, "range has too many points");
  // endpoints within rounding of the step are included exactly
  double rounded = std::round(span);
  bool exact = std::fabs(span - rounded) <= 1e-12 * std::max(1.0, rounded);
  long count = static_cast<long>(exact ? rounded : std::floor(span)) + 1;
  std::vector<double> out;
  for (long k = 0; k < count; ++k) out.push_back(start + k * step);
  if (exact) out.back() = end;
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (auto& t : split(text, ',')) {
    double v = to_number(t);
    if (v != std::floor(v) || v < 1 || v > 1e6) fail(Errc::parse, "ladder entries must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) fail(Errc::parse, "empty integer list");
  return out;
}

std::complex<double> parse_complex_pair(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() == 1) return {to_number(parts[0]), 0.0};
  if (parts.size() == 2) return {to_number(parts[0]), to_number(parts[1])};
  fail(Errc::parse, "complex value must be 're' or 're,im'");
}

PrecisionPolicy parse_precision(const std::string& text, int guard_bits) {
  PrecisionPolicy p;
  p.guard_bits = guard_bits;
  std::string t = trim(text);
  if (t == "auto" || t.empty()) {
    p.mode = PrecisionPolicy::Mode::automatic;
  } else {
    double b = to_number(t);
    if (b != std::floor(b)) fail(Errc::parse, "precision must be 'auto' or an integer bit count");
    p.mode = PrecisionPolicy::Mode::fixed;
    p.fixed_bits = static_cast<int>(b);
  }
  try {
    p.validate();
  } catch (const Error& e) {
    fail(Errc::parse, e.what());
  }
  return p;
}

RunOutput run_command(const std::string& command, const std::string& config_json) {
  Config cfg(config_json);
  if (command == "superosc") return run_superosc(cfg);
  if (command == "bernstein") return run_bernstein(cfg);
  if (command == "regions.lemniscate") return run_lemniscate(cfg);
  if (command == "regions.wa") return run_wa(cfg);
  if (command == "kantorovich") return run_kantorovich(cfg);
  if (command == "supershift.check") return run_supershift_check(cfg);
  if (command == "supershift.convolve") return run_transform("convolve", cfg);
  if (command == "supershift.primitive") return run_transform("primitive", cfg);
  if (command == "supershift.multiply") return run_transform("multiply", cfg);
  if (command == "evolve") return run_evolve(cfg);
  fail(Errc::invalid_argument, "unknown command '" + command + "'");
}

}  // namespace sslab::runs
