#pragma once

#include <string>
#include <vector>

namespace sslab {

struct ConvergenceReport {
  std::vector<int> n_ladder;
  std::vector<double> sup_errors;
  std::string grid;
  double reduction_factor = 1.0;
  double required_reduction = 4.0;
  double floor = 0.0;  // errors at or below this count as exact
  bool require_reduction = true;
  double final_max = 0.0;  // extra cap on the last error when > 0
  bool pass = false;
  std::string reason;
  int bits_used = 0;
};

// Strict decrease (ignoring entries at the floor) and reduction of at least
// 4 per 8x growth in N, scaled as 4^{log8(N_last/N_first)}.
void judge_ladder(ConvergenceReport& r);

double required_reduction(int n_first, int n_last);

}  // namespace sslab
