#include "sslab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "sslab/error.hpp"

namespace sslab::sampling {

namespace {

double parse_number(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    fail(Errc::parse, "bad number '" + s + "' in epsilon spec");
  return v;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

EpsilonSpec EpsilonSpec::parse(const std::string& raw) {
  std::string text = trim(raw);
  EpsilonSpec s;
  if (text == "zero") return s;
  auto colon = text.find(':');
  if (colon == std::string::npos) fail(Errc::parse, "unknown epsilon family '" + text + "'");
  std::string fam = text.substr(0, colon), arg = text.substr(colon + 1);
  if (fam == "list") {
    s.family = Family::list;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      double v = parse_number(trim(tok));
      if (v < 0) fail(Errc::domain, "negative epsilon in list");
      s.values.push_back(v);
    }
    if (s.values.empty()) fail(Errc::parse, "empty epsilon list");
    return s;
  }
  if (fam == "c_over_N") s.family = Family::c_over_N;
  else if (fam == "c_over_sqrtN") s.family = Family::c_over_sqrtN;
  else if (fam == "c_over_logN") s.family = Family::c_over_logN;
  else fail(Errc::parse, "unknown epsilon family '" + fam + "'");
  s.c = parse_number(trim(arg));
  if (s.c < 0) fail(Errc::domain, "epsilon family constant must be nonnegative");
  return s;
}

std::vector<EpsilonSpec> EpsilonSpec::parse_many(const std::string& text) {
  std::vector<std::string> groups;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    bool continuation = !groups.empty() && groups.back().rfind("list:", 0) == 0 && tok != "zero" &&
                        tok.find(':') == std::string::npos;
    if (continuation) groups.back() += "," + tok;
    else groups.push_back(tok);
  }
  std::vector<EpsilonSpec> out;
  for (auto& g : groups) out.push_back(parse(g));
  if (out.empty()) fail(Errc::parse, "no epsilon families given");
  return out;
}

std::string EpsilonSpec::label() const {
  switch (family) {
    case Family::zero: return "zero";
    case Family::c_over_N: return "c_over_N:" + format_number(c);
    case Family::c_over_sqrtN: return "c_over_sqrtN:" + format_number(c);
    case Family::c_over_logN: return "c_over_logN:" + format_number(c);
    case Family::list: {
      std::string s = "list:";
      for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_number(values[i]);
      return s;
    }
  }
  return "?";
}

double EpsilonSpec::at(int n) const {
  if (n < 1) fail(Errc::domain, "epsilon index must be >= 1");
  double e = 0.0;
  switch (family) {
    case Family::zero: e = 0.0; break;
    case Family::c_over_N: e = c / n; break;
    case Family::c_over_sqrtN: e = c / std::sqrt(static_cast<double>(n)); break;
    // log 1 = 0, so N=1 saturates at the cap
    case Family::c_over_logN: e = n == 1 ? (c > 0 ? kEpsilonCap : 0.0) : c / std::log(static_cast<double>(n)); break;
    case Family::list: e = static_cast<std::size_t>(n) <= values.size() ? values[n - 1] : 0.0; break;
  }
  if (c < 0) fail(Errc::domain, "epsilon family constant must be nonnegative");
  return std::clamp(e, 0.0, kEpsilonCap);
}

std::vector<double> make_epsilons(const EpsilonSpec& spec, int n_max) {
  if (n_max < 1) fail(Errc::domain, "N_max must be >= 1");
  std::vector<double> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) out.push_back(spec.at(n));
  return out;
}

FrequencyRow frequencies(int n, double eps) {
  if (n < 1) fail(Errc::domain, "N must be >= 1");
  if (!(eps >= 0.0 && eps < 1.0)) fail(Errc::domain, "eps_N must lie in [0,1)");
  FrequencyRow row{n, eps, std::vector<double>(n + 1)};
  double dn = n;
  for (int v = 0; v <= n; ++v) row.h[v] = 1.0 - 2.0 * (v + eps * (n - v)) / dn;
  row.h[n] = -1.0;
  return row;
}

}  // namespace sslab::sampling
