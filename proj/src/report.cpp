#include "sslab/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sslab/error.hpp"

namespace sslab {

double required_reduction(int n_first, int n_last) {
  return std::pow(4.0, std::log(static_cast<double>(n_last) / n_first) / std::log(8.0));
}

void judge_ladder(ConvergenceReport& r) {
  const auto& e = r.sup_errors;
  if (e.empty() || e.size() != r.n_ladder.size()) fail(Errc::invalid_argument, "ladder and errors differ in length");
  double first = e.front(), last = e.back();
  if (last > 0) r.reduction_factor = first / last;
  else r.reduction_factor = first > 0 ? std::numeric_limits<double>::infinity() : 1.0;
  r.required_reduction = required_reduction(r.n_ladder.front(), r.n_ladder.back());

  std::ostringstream why;
  r.pass = true;
  if (e.size() == 1 && r.require_reduction) {
    r.pass = last <= r.floor;
    if (!r.pass) why << "single-entry ladder above the exactness floor";
  }
  for (std::size_t i = 1; i < e.size() && r.pass; ++i) {
    if (!(e[i] < e[i - 1] || e[i] <= r.floor)) {
      r.pass = false;
      why << "error does not decrease from N=" << r.n_ladder[i - 1] << " to N=" << r.n_ladder[i];
    }
  }
  if (r.pass && r.final_max > 0 && last > r.final_max) {
    r.pass = false;
    why << "final error " << last << " above " << r.final_max;
  }
  if (r.pass && r.require_reduction && e.size() > 1 && last > r.floor &&
      r.reduction_factor < r.required_reduction) {
    r.pass = false;
    why << "reduction " << r.reduction_factor << " below required " << r.required_reduction;
  }
  r.reason = r.pass ? "ok" : why.str();
}

}  // namespace sslab
