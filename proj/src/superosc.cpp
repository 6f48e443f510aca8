#include "sslab/superosc.hpp"

#include <cmath>
#include <numbers>

#include "sslab/parallel.hpp"

namespace sslab::superosc {

namespace {

constexpr double kLn2 = std::numbers::ln2;

Complex from(std::complex<double> z, int bits) { return Complex(z, bits); }

}  // namespace

Real coeff(int n, int nu, double a, int bits) {
  if (n < 0 || nu < 0 || nu > n) fail(Errc::domain, "coeff: need 0 <= nu <= N");
  Real two(2L, bits);
  Real p = (Real(1L, bits) + Real(a, bits)) / two;
  Real q = (Real(1L, bits) - Real(a, bits)) / two;
  return Real(numkernel::binomial(n, nu), bits) * pow(p, n - nu) * pow(q, nu);
}

std::vector<Real> coefficients(int n, double a, int bits) {
  if (n < 0) fail(Errc::domain, "coefficients: N must be nonnegative");
  int work = bits + 8;
  Real two(2L, work);
  Real p = (Real(1L, work) + Real(a, work)) / two;
  Real q = (Real(1L, work) - Real(a, work)) / two;
  std::vector<Real> ppow(n + 1, Real(work)), qpow(n + 1, Real(work));
  ppow[0] = Real(1L, work);
  qpow[0] = Real(1L, work);
  for (int k = 1; k <= n; ++k) {
    ppow[k] = ppow[k - 1] * p;
    qpow[k] = qpow[k - 1] * q;
  }
  std::vector<Real> out;
  out.reserve(n + 1);
  mpz_class bin = 1;
  for (int v = 0; v <= n; ++v) {
    if (v > 0) {
      bin *= (n - v + 1);
      bin /= v;
    }
    out.emplace_back(Real(bin, work) * ppow[n - v] * qpow[v], bits);
  }
  return out;
}

double log2_coeff_mass(int n, double a) {
  // (|p| + |q|)^N
  return n * std::log2(std::fabs((1 + a) / 2) + std::fabs((1 - a) / 2));
}

Real frequency(int n, int nu, double eps, int bits) {
  Real e(eps, bits);
  Real num = Real(long(nu), bits) + e * Real(long(n - nu), bits);
  return Real(1L, bits) - Real(2L, bits) * num / Real(long(n), bits);
}

double sum_cancellation(int n, double eps, double a, std::complex<double> z) {
  double y = z.imag();
  double p = std::fabs((1 + a) / 2), q = std::fabs((1 - a) / 2);
  // sum |C_ν| e^{-h_ν y} = e^{-y(1-2ε)} (|p| + |q| e^{2y(1-ε)/N})^N, in log2
  double step = 2 * y * (1 - eps) / n;
  double inner = step > 0 ? std::log(p * std::exp(-step) + q) + step : std::log(p + q * std::exp(step));
  double log2_mass = (-y * (1 - 2 * eps) + n * inner) / kLn2;
  std::complex<double> w = z * (1 - eps) / static_cast<double>(n);
  std::complex<double> base = std::cos(w) + std::complex<double>(0, a) * std::sin(w);
  double log2_t = (eps * y + n * std::log(std::abs(base))) / kLn2;
  if (!std::isfinite(log2_t)) return std::max(0.0, log2_mass) + 64;
  return std::max(0.0, log2_mass - log2_t);
}

Evaluated eval_sum(int n, double eps, double a, std::complex<double> z, const PrecisionPolicy& policy) {
  policy.validate();
  if (n < 1) fail(Errc::domain, "N must be >= 1");
  if (!(eps >= 0 && eps < 1)) fail(Errc::domain, "eps_N must lie in [0,1)");
  auto eval = [&](int bits) {
    int work = bits + 4;
    auto c = coefficients(n, a, work);
    Complex zz = from(z, work);
    Complex acc(work);
    Log2Sum mass;
    for (int v = 0; v <= n; ++v) {
      if (c[v].is_zero()) continue;
      Real h = frequency(n, v, eps, work);
      // e^{i h z} = e^{-h Im z} e^{i h Re z}
      Complex e = expi(h * zz.re);
      if (!zz.im.is_zero()) e *= exp(-(h * zz.im));
      Complex t = e * c[v];
      mass.add(log2_abs(t));
      acc += t;
    }
    return numkernel::SumOutcome{Complex(acc, bits), mass.value()};
  };
  return numkernel::adaptive_sum(n, sum_cancellation(n, eps, a, z), policy, eval);
}

Evaluated eval_closed(int n, double eps, double a, std::complex<double> z, const PrecisionPolicy& policy) {
  policy.validate();
  if (n < 1) fail(Errc::domain, "N must be >= 1");
  if (!(eps >= 0 && eps < 1)) fail(Errc::domain, "eps_N must lie in [0,1)");
  auto eval = [&](int bits) {
    int work = bits + 4;
    Complex zz = from(z, work);
    Real scale = (Real(1L, work) - Real(eps, work)) / Real(long(n), work);
    Complex w = zz * scale;
    Complex cw = cos(w), sw = sin(w);
    Real ar(a, work);
    // cos w + i a sin w
    Complex base(cw.re - ar * sw.im, cw.im + ar * sw.re);
    // e^{-iεz}: h_ν = (1-ε)(1-2ν/N) - ε
    Complex pre = exp(Complex(Real(eps, work) * zz.im, -(Real(eps, work) * zz.re)));
    Complex value = pre * pow(base, static_cast<unsigned long>(n));
    // rounding mass: |prefactor| (|cos w| + |a||sin w|)^N
    double cond = std::log2(std::exp2(log2_abs(cw)) + std::fabs(a) * std::exp2(log2_abs(sw)));
    double mass = log2_abs(pre) + n * cond;
    return numkernel::SumOutcome{Complex(value, bits), mass};
  };
  return numkernel::adaptive_sum(n, sum_cancellation(n, eps, a, z), policy, eval);
}

LagrangeBasis::LagrangeBasis(const sampling::FrequencyRow& row, double a) {
  int n = row.n;
  if (row.h.size() != static_cast<std::size_t>(n) + 1) fail(Errc::invalid_argument, "malformed frequency row");
  for (int v = 0; v <= n; ++v) {
    if (row.eps == 0.0) nodes_.emplace_back(mpq_class(n - 2 * v, n));
    else nodes_.emplace_back(row.h[v]);
    nodes_.back().canonicalize();
  }
  for (int v = 0; v <= n; ++v)
    for (int u = v + 1; u <= n; ++u)
      if (nodes_[u] == nodes_[v]) fail(Errc::domain, "lagrange: duplicate nodes");
  mpq_class aq(a);
  weight_sum_ = 0;
  Log2Sum mass;
  for (int v = 0; v <= n; ++v) {
    mpq_class w = 1;
    for (int u = 0; u <= n; ++u)
      if (u != v) w *= (aq - nodes_[u]) / (nodes_[v] - nodes_[u]);
    weight_sum_ += w;
    mass.add(log2_abs(Real(w, 64)));
    weights_.push_back(std::move(w));
  }
  log2_mass_ = mass.value();
}

Evaluated LagrangeBasis::eval(std::complex<double> z, const PrecisionPolicy& policy) const {
  return eval(z, policy, numkernel::kMinBits);
}

Evaluated LagrangeBasis::eval(std::complex<double> z, const PrecisionPolicy& policy, int min_bits) const {
  policy.validate();
  int n = static_cast<int>(nodes_.size()) - 1;
  double max_growth = std::fabs(z.imag()) / kLn2;  // |e^{i h z}| ≤ e^{|Im z|}
  double apriori = std::max(0.0, log2_mass_ + max_growth);
  auto eval = [&](int bits) {
    int work = std::max(bits, min_bits) + 4;
    Complex zz = from(z, work);
    Complex acc(Real(weight_sum_, work), Real(work));
    Log2Sum mass;
    mass.add(log2_abs(acc.re));
    Complex one(Real(1L, work), Real(work));
    for (int v = 0; v <= n; ++v) {
      if (weights_[v] == 0) continue;
      Real h(nodes_[v], work);
      Complex e = expi(h * zz.re);
      if (!zz.im.is_zero()) e *= exp(-(h * zz.im));
      Real w(weights_[v], work);
      mass.add(log2_abs(w) + log2_abs(e));
      // sum w = 1 exactly, so T = sum w + sum w (e - 1)
      acc += (e - one) * w;
    }
    return numkernel::SumOutcome{Complex(acc, std::max(bits, min_bits)), mass.value()};
  };
  Evaluated r = numkernel::adaptive_sum(n, apriori, policy, eval);
  r.bits = std::max(r.bits, min_bits);
  return r;
}

Evaluated lagrange_eval(const sampling::FrequencyRow& row, double a, std::complex<double> z,
                        const PrecisionPolicy& policy) {
  return LagrangeBasis(row, a).eval(z, policy);
}

double lagrange_bound(int n, double a, double x) {
  if (x == 0) return 0.0;
  double m = n + 1.0;
  return std::exp(m * std::log((std::fabs(a) + 1) * std::fabs(x)) - std::lgamma(m + 1));
}

ConvergenceRun superosc_convergence(double a, const std::vector<double>& xs, const std::vector<int>& ladder,
                                    const sampling::EpsilonSpec& eps, const PrecisionPolicy& policy, int jobs) {
  if (xs.empty() || ladder.empty()) fail(Errc::invalid_argument, "superosc_convergence needs a grid and a ladder");
  ConvergenceRun run;
  run.report.n_ladder = ladder;
  run.report.grid = std::to_string(xs.size()) + " real points";
  std::size_t nx = xs.size();
  std::vector<ConvergenceSample> samples(ladder.size() * nx, ConvergenceSample{0, 0, {}, Complex(53), 0});
  std::vector<int> bits(samples.size(), 0);
  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    int n = ladder[i / nx];
    double x = xs[i % nx];
    double e = eps.at(n);
    Evaluated t = eval_closed(n, e, a, {x, 0.0}, policy);
    int work = t.bits;
    Complex limit = expi(Real(a, work) * Real(x, work));
    double err = abs(t.value - limit).to_double();
    samples[i] = ConvergenceSample{n, x, t.value.to_complex(), std::move(t.value), err};
    bits[i] = work;
  });
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    double sup = 0;
    for (std::size_t j = 0; j < nx; ++j) sup = std::max(sup, samples[k * nx + j].abs_err);
    run.report.sup_errors.push_back(sup);
  }
  for (int b : bits) run.report.bits_used = std::max(run.report.bits_used, b);
  run.report.floor = numkernel::guard_tolerance(8, policy);
  judge_ladder(run.report);
  run.samples = std::move(samples);
  return run;
}

}  // namespace sslab::superosc
