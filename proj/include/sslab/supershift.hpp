#pragma once

#include <string>
#include <vector>

#include "sslab/numkernel.hpp"
#include "sslab/report.hpp"
#include "sslab/sampling.hpp"

namespace sslab::supershift {

using numkernel::FunctionSpec;
using numkernel::PrecisionPolicy;

inline constexpr double kGridMargin = 1e-9;

struct DomainA {
  double lo = -2.5, hi = 2.5;
  void validate() const;
  double length() const { return hi - lo; }
  // (a, a') in the open set {a' + [-1,1] ⊂ A, a + a' ∈ A}, shrunk by margin
  bool admissible(double a, double a_prime, double margin = kGridMargin) const;
};

struct GridPoint {
  double a;
  double a_prime;
};

// Multiples of step on both axes, restricted to the margin-shrunk domain.
std::vector<GridPoint> make_grid(const DomainA& dom, double step);

struct SupershiftReport {
  DomainA domain;
  std::vector<GridPoint> grid;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> per_family;  // [ladder index][family index]
  ConvergenceReport family_max;
};

SupershiftReport tcsp_check(const FunctionSpec& psi, const DomainA& dom, const std::vector<GridPoint>& grid,
                            const std::vector<int>& ladder, const std::vector<sampling::EpsilonSpec>& families,
                            const PrecisionPolicy& policy, int jobs = 1);

FunctionSpec convolve(const FunctionSpec& psi, double eps_support, int quadrature_nodes = 64);
FunctionSpec multiply_by_identity(const FunctionSpec& psi);
FunctionSpec primitive(const FunctionSpec& psi, double a0);

struct Residual {
  double residual = 0;
  double scale = 0;      // magnitude mass of the terms involved
  double tolerance = 0;  // 2^{16-bits} scale
  bool ok() const { return residual <= tolerance; }
};

Residual multiplication_recursion_residual(const FunctionSpec& Psi, int n, double eps, double b, double b_prime,
                                           int bits);
Residual primitive_derivative_residual(const FunctionSpec& Psi, const FunctionSpec& Phi, int n, double eps, double b,
                                       double b_prime0, int bits, int quad_nodes = 16);

struct ProbeResult {
  int degree = 12;
  int points = 32;
  double fit_lo = 0, fit_hi = 0, probe_lo = 0, probe_hi = 0;
  double fit_residual = 0;
  double mispredict = 0;
  bool non_analytic = false;  // mispredict >= 10 x fit residual and above the absolute floor
};

inline constexpr double kProbeFloor = 1e-4;

// Least-squares polynomial fit on [glue_lo - width, glue_lo], checked on [glue_hi, glue_hi + width].
ProbeResult analyticity_probe(const FunctionSpec& psi, double glue_lo, double glue_hi, double width, int degree = 12,
                              int points = 32);

}  // namespace sslab::supershift
