#pragma once

#include <string>
#include <vector>

namespace sslab::sampling {

inline constexpr double kEpsilonCap = 0.999;

struct EpsilonSpec {
  enum class Family { zero, c_over_N, c_over_sqrtN, c_over_logN, list };
  Family family = Family::zero;
  double c = 0.0;
  std::vector<double> values;  // list family: ε_1, ε_2, ...

  static EpsilonSpec parse(const std::string& text);
  // Comma-separated family list; numeric tokens continue a preceding "list:" entry.
  static std::vector<EpsilonSpec> parse_many(const std::string& text);
  std::string label() const;
  double at(int n) const;  // ε_N, clamped
};

std::vector<double> make_epsilons(const EpsilonSpec& spec, int n_max);

struct FrequencyRow {
  int n = 0;
  double eps = 0.0;
  std::vector<double> h;  // h_0 .. h_N
};

FrequencyRow frequencies(int n, double eps);

inline double upsilon(double a) { return 2.0 * a - 1.0; }
inline double upsilon_inv(double b) { return (1.0 + b) / 2.0; }

}  // namespace sslab::sampling
