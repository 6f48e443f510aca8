#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sslab/mp.hpp"
#include "sslab/numkernel.hpp"
#include "sslab/report.hpp"

namespace sslab::evolve {

using numkernel::Evaluated;
using numkernel::PrecisionPolicy;

inline constexpr double kSingularCos = 1e-6;

struct EvolutionPoint {
  double t = 0;
  double x = 0;
  double a = 0;
  int n = 1;
};

enum class Potential { free, harmonic };
const char* potential_name(Potential p);
Potential parse_potential(const std::string& s);

Evaluated free_psiN(const EvolutionPoint& p, const PrecisionPolicy& policy);
Complex free_limit(double a, double t, double x, int bits = 64);
Evaluated harmonic_psiN(const EvolutionPoint& p, const PrecisionPolicy& policy);
Complex harmonic_limit(double a, double t, double x, int bits = 64);

struct EvolutionSample {
  int n;
  double t, x;
  std::complex<double> value;
  double abs_err;
  Complex value_mp;
};

struct EvolutionRun {
  ConvergenceReport report;
  std::vector<EvolutionSample> samples;  // ladder-major, then t, then x
};

EvolutionRun evolution_convergence(Potential pot, double a, const std::vector<double>& ts,
                                   const std::vector<double>& xs, const std::vector<int>& ladder,
                                   const PrecisionPolicy& policy, int jobs = 1);

}  // namespace sslab::evolve
