#include "sslab/evolve.hpp"

#include <cmath>

#include "sslab/parallel.hpp"
#include "sslab/superosc.hpp"

namespace sslab::evolve {

namespace {

void check_time(double t) {
  if (std::fabs(std::cos(t)) <= kSingularCos)
    fail(Errc::singular_time, "harmonic evolution singular at t=" + std::to_string(t) + " (|cos t| <= 1e-6)");
}

// (cos t)^{-1/2}, principal branch
Complex inv_sqrt_cos(const Real& c) {
  int bits = c.bits();
  if (c.sign() > 0) return Complex(Real(1L, bits) / sqrt(c), Real(bits));
  return Complex(Real(bits), -(Real(1L, bits) / sqrt(-c)));
}

// sum_k C_k e^{i(α h_k - β h_k^2)}, h_k = 1 - 2k/N
Evaluated phase_sum(int n, double a, const std::function<void(int, Real&, Real&)>& coeffs_ab,
                    const PrecisionPolicy& policy) {
  if (n < 1) fail(Errc::domain, "N must be >= 1");
  policy.validate();
  auto eval = [&](int bits) {
    int work = bits + 4;
    auto c = superosc::coefficients(n, a, work);
    Real alpha(work), beta(work);
    coeffs_ab(work, alpha, beta);
    Complex acc(work);
    Log2Sum mass;
    for (int k = 0; k <= n; ++k) {
      if (c[k].is_zero()) continue;
      Real h = Real(long(n - 2 * k), work) / Real(long(n), work);
      Complex t = expi(alpha * h - beta * h * h) * c[k];
      mass.add(log2_abs(c[k]));
      acc += t;
    }
    return numkernel::SumOutcome{Complex(acc, bits), mass.value()};
  };
  return numkernel::adaptive_sum(n, superosc::log2_coeff_mass(n, a), policy, eval);
}

}  // namespace

const char* potential_name(Potential p) { return p == Potential::free ? "free" : "harmonic"; }

Potential parse_potential(const std::string& s) {
  if (s == "free") return Potential::free;
  if (s == "harmonic") return Potential::harmonic;
  fail(Errc::parse, "unknown potential '" + s + "'");
}

Evaluated free_psiN(const EvolutionPoint& p, const PrecisionPolicy& policy) {
  return phase_sum(p.n, p.a,
                   [&](int bits, Real& alpha, Real& beta) {
                     alpha = Real(p.x, bits);
                     beta = Real(p.t, bits);
                   },
                   policy);
}

Complex free_limit(double a, double t, double x, int bits) {
  Real ar(a, bits);
  return expi(ar * Real(x, bits) - ar * ar * Real(t, bits));
}

Evaluated harmonic_psiN(const EvolutionPoint& p, const PrecisionPolicy& policy) {
  check_time(p.t);
  Evaluated s = phase_sum(p.n, p.a,
                          [&](int bits, Real& alpha, Real& beta) {
                            Real tt(p.t, bits);
                            alpha = Real(p.x, bits) / cos(tt);
                            beta = (sin(tt) / cos(tt)) / Real(2L, bits);
                          },
                          policy);
  int bits = s.bits + 4;
  Real tt(p.t, bits), c = cos(Real(p.t, bits));
  Real tan_t = sin(tt) / c;
  Real xx(p.x, bits);
  Complex pre = inv_sqrt_cos(c) * expi(-(xx * xx * tan_t / Real(2L, bits)));
  return {Complex(pre * s.value, s.bits), s.bits};
}

Complex harmonic_limit(double a, double t, double x, int bits) {
  check_time(t);
  Real tt(t, bits), c = cos(tt);
  Real tan_t = sin(tt) / c;
  Real ar(a, bits), xx(x, bits), two(2L, bits);
  Real phase = -(xx * xx * tan_t / two) - ar * ar * tan_t / two + ar * xx / c;
  return inv_sqrt_cos(c) * expi(phase);
}

EvolutionRun evolution_convergence(Potential pot, double a, const std::vector<double>& ts,
                                   const std::vector<double>& xs, const std::vector<int>& ladder,
                                   const PrecisionPolicy& policy, int jobs) {
  if (ts.empty() || xs.empty() || ladder.empty()) fail(Errc::invalid_argument, "evolution needs t, x grids and a ladder");
  if (pot == Potential::harmonic)
    for (double t : ts) check_time(t);
  std::size_t per_n = ts.size() * xs.size();
  std::vector<EvolutionSample> samples(ladder.size() * per_n, EvolutionSample{0, 0, 0, {}, 0, Complex(53)});
  std::vector<int> bits(samples.size(), 0);
  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    int n = ladder[i / per_n];
    double t = ts[(i % per_n) / xs.size()];
    double x = xs[i % xs.size()];
    EvolutionPoint p{t, x, a, n};
    Evaluated v = pot == Potential::free ? free_psiN(p, policy) : harmonic_psiN(p, policy);
    Complex lim = pot == Potential::free ? free_limit(a, t, x, v.bits) : harmonic_limit(a, t, x, v.bits);
    double err = abs(v.value - lim).to_double();
    samples[i] = EvolutionSample{n, t, x, v.value.to_complex(), err, std::move(v.value)};
    bits[i] = v.bits;
  });
  EvolutionRun run;
  run.report.n_ladder = ladder;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    double sup = 0;
    for (std::size_t j = 0; j < per_n; ++j) sup = std::max(sup, samples[k * per_n + j].abs_err);
    run.report.sup_errors.push_back(sup);
  }
  for (int b : bits) run.report.bits_used = std::max(run.report.bits_used, b);
  double scale = 1.0;
  if (pot == Potential::harmonic)
    for (double t : ts) scale = std::max(scale, 1.0 / std::sqrt(std::fabs(std::cos(t))));
  run.report.floor = numkernel::guard_tolerance(8, policy) * scale;
  run.report.grid = std::to_string(ts.size()) + " times x " + std::to_string(xs.size()) + " positions";
  judge_ladder(run.report);
  run.samples = std::move(samples);
  return run;
}

}  // namespace sslab::evolve
