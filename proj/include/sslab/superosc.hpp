#pragma once

#include <complex>
#include <vector>

#include "sslab/mp.hpp"
#include "sslab/numkernel.hpp"
#include "sslab/report.hpp"
#include "sslab/sampling.hpp"

namespace sslab::superosc {

using numkernel::Evaluated;
using numkernel::PrecisionPolicy;

// C(N,ν)((1+a)/2)^{N-ν}((1-a)/2)^ν
Real coeff(int n, int nu, double a, int bits);
std::vector<Real> coefficients(int n, double a, int bits);
// log2 sum_ν |C_ν(N,a)|
double log2_coeff_mass(int n, double a);

// h^ε_{N,ν} at the given width
Real frequency(int n, int nu, double eps, int bits);

// a-priori cancellation (bits) of the sum form: log2 sum|terms| - log2|T|
double sum_cancellation(int n, double eps, double a, std::complex<double> z);

Evaluated eval_sum(int n, double eps, double a, std::complex<double> z, const PrecisionPolicy& policy);
Evaluated eval_closed(int n, double eps, double a, std::complex<double> z, const PrecisionPolicy& policy);

// Exact-rational Lagrange weights for a node row; ε=0 rows use nodes (N-2ν)/N exactly.
class LagrangeBasis {
 public:
  LagrangeBasis(const sampling::FrequencyRow& row, double a);
  Evaluated eval(std::complex<double> z, const PrecisionPolicy& policy) const;
  // Evaluate with at least min_bits of working width.
  Evaluated eval(std::complex<double> z, const PrecisionPolicy& policy, int min_bits) const;
  const std::vector<mpq_class>& nodes() const { return nodes_; }
  const std::vector<mpq_class>& weights() const { return weights_; }

 private:
  std::vector<mpq_class> nodes_;
  std::vector<mpq_class> weights_;
  mpq_class weight_sum_;
  double log2_mass_ = 0;
};

Evaluated lagrange_eval(const sampling::FrequencyRow& row, double a, std::complex<double> z,
                        const PrecisionPolicy& policy);
double lagrange_bound(int n, double a, double x);

struct ConvergenceSample {
  int n;
  double x;
  std::complex<double> value;
  Complex value_mp;
  double abs_err;
};

struct ConvergenceRun {
  ConvergenceReport report;
  std::vector<ConvergenceSample> samples;  // ladder-major, then grid order
};

ConvergenceRun superosc_convergence(double a, const std::vector<double>& x_grid, const std::vector<int>& ladder,
                                    const sampling::EpsilonSpec& eps, const PrecisionPolicy& policy, int jobs = 1);

}  // namespace sslab::superosc
