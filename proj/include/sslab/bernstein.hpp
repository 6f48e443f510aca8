#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include "sslab/mp.hpp"
#include "sslab/numkernel.hpp"

namespace sslab::bernstein {

using numkernel::Evaluated;
using numkernel::FunctionSpec;
using numkernel::PrecisionPolicy;

struct BernsteinParams {
  int n = 1;
  double eps = 0.0;
  double b_prime = 0.0;
  double rate() const { return (1.0 - eps) / n; }
  void validate() const;
};

// b' + ν(1-ε)/N at the given width
Real sample_point(const BernsteinParams& p, int nu, int bits);

// Caches Ψ(b' + ν·rate) per working width; safe to share across threads.
class SampleCache {
 public:
  SampleCache(const FunctionSpec& psi, const BernsteinParams& p) : psi_(psi), p_(p) {}
  const std::vector<Complex>& at(int bits);

 private:
  const FunctionSpec& psi_;
  BernsteinParams p_;
  std::mutex mu_;
  std::map<int, std::vector<Complex>> rows_;
};

Evaluated bernstein_eval(const FunctionSpec& psi, const BernsteinParams& p, std::complex<double> b,
                         const PrecisionPolicy& policy);
Evaluated bernstein_eval(SampleCache& samples, const BernsteinParams& p, std::complex<double> b,
                         const PrecisionPolicy& policy);
// Same sum with at least min_bits of width.
Evaluated bernstein_eval(SampleCache& samples, const BernsteinParams& p, std::complex<double> b,
                         const PrecisionPolicy& policy, int min_bits);

std::vector<Complex> forward_differences(const FunctionSpec& psi, double b_prime, double rate, int k, int bits);
// Oracle form: sum_j (-1)^{K-j} C(K,j) Ψ(b'+j·rate)
Complex forward_difference_direct(const FunctionSpec& psi, double b_prime, double rate, int k, int bits);

Evaluated newton_form_eval(const FunctionSpec& psi, const BernsteinParams& p, std::complex<double> b,
                           const PrecisionPolicy& policy);

Evaluated moment_poly(int n, int kappa, double c, double eps, std::complex<double> z, const PrecisionPolicy& policy);
// B_{N,0..kappa_max}(z) sharing one set of weights.
std::vector<Complex> moment_polys(int n, int kappa_max, double c, double eps, std::complex<double> z,
                                  const PrecisionPolicy& policy, int* bits_used = nullptr);

struct BoundCheck {
  std::complex<double> z;
  int kappa = 0;
  double lhs = 0, rhs = 0;
  bool precondition_ok = true;
  bool holds = false;
};

std::vector<BoundCheck> coefficient_bound_check(double c, int kappa_max, const std::vector<std::complex<double>>& z);

}  // namespace sslab::bernstein
