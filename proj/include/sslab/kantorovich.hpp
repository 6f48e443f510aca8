#pragma once

#include <complex>
#include <vector>

#include "sslab/numkernel.hpp"
#include "sslab/report.hpp"
#include "sslab/sampling.hpp"

namespace sslab::kantorovich {

using numkernel::FunctionSpec;
using numkernel::PrecisionPolicy;

struct PiecewiseTarget {
  FunctionSpec g_minus;
  FunctionSpec g_plus;
  FunctionSpec glued;  // G^- below 1/2, G^+ from 1/2 on
  std::vector<std::complex<double>> minus_coeffs, plus_coeffs;

  // g^±((1+a)/2) in the frequency frame, kink at a = 0
  FunctionSpec lifted() const;
};

PiecewiseTarget make_target(const std::vector<std::complex<double>>& g_minus,
                            const std::vector<std::complex<double>>& g_plus);

struct TwoLimitConfig {
  std::complex<double> z_minus{0.1, 0};
  std::complex<double> z_plus{0.9, 0};
  double b_prime = 0.0;
  double eta = 0.05;
  std::vector<int> ladder{50, 100, 200, 400};
  sampling::EpsilonSpec eps;
  PrecisionPolicy policy;
  int c_samples = 11;
  int resolution = 64;
  double final_max = 0.05;
  int jobs = 1;
};

struct TwoLimitRun {
  ConvergenceReport minus, plus;
  std::vector<std::complex<double>> values_minus, values_plus;
  std::vector<double> wrong_minus, wrong_plus;  // distance to the other loop's limit
  double q_minus = 0, q_plus = 0;
  std::vector<double> c_range;
  bool pass = false;
};

TwoLimitRun two_limit_experiment(const PiecewiseTarget& t, const TwoLimitConfig& cfg);

// Width that resolves errors of size q^N at z: guard + N log2(1/q) + N log2(|z|+|1-z|).
int resolving_bits(int n, double q, std::complex<double> z, const PrecisionPolicy& policy);

// sup over a real grid in [0,1] of |B_N[g](b) - g(b'+b)|, decrease-only verdict.
ConvergenceReport real_segment_check(const PiecewiseTarget& t, const std::vector<double>& grid,
                                     const std::vector<int>& ladder, const sampling::EpsilonSpec& eps,
                                     double b_prime, const PrecisionPolicy& policy, int jobs = 1);

}  // namespace sslab::kantorovich
