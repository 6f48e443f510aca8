#include "sslab/kantorovich.hpp"

#include <cmath>

#include "sslab/bernstein.hpp"
#include "sslab/parallel.hpp"
#include "sslab/regions.hpp"

namespace sslab::kantorovich {

namespace {

using numkernel::QComplex;

QComplex eval_exact(const std::vector<QComplex>& c, const mpq_class& x) {
  QComplex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc.re = acc.re * x + c[k].re;
    acc.im = acc.im * x + c[k].im;
  }
  return acc;
}

std::vector<QComplex> derivative(const std::vector<QComplex>& c) {
  std::vector<QComplex> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back({c[k].re * long(k), c[k].im * long(k)});
  if (d.empty()) d.push_back({0, 0});
  return d;
}

// p((1+a)/2) expanded in powers of a
std::vector<QComplex> compose_half_shift(const std::vector<QComplex>& c) {
  std::vector<QComplex> out(c.size(), QComplex{0, 0});
  std::vector<mpq_class> power{1};  // coefficients of ((1+a)/2)^k
  for (std::size_t k = 0; k < c.size(); ++k) {
    for (std::size_t j = 0; j < power.size(); ++j) {
      out[j].re += c[k].re * power[j];
      out[j].im += c[k].im * power[j];
    }
    std::vector<mpq_class> next(power.size() + 1, 0);
    for (std::size_t j = 0; j < power.size(); ++j) {
      next[j] += power[j] / 2;
      next[j + 1] += power[j] / 2;
    }
    power = std::move(next);
  }
  return out;
}

double distance(const QComplex& a, const QComplex& b) {
  return std::hypot(mpq_class(a.re - b.re).get_d(), mpq_class(a.im - b.im).get_d());
}

double magnitude(const QComplex& a) { return std::hypot(a.re.get_d(), a.im.get_d()); }

}  // namespace

FunctionSpec PiecewiseTarget::lifted() const {
  using numkernel::Piece;
  std::vector<Piece> pieces{
      Piece{0.0, compose_half_shift(numkernel::to_rational(minus_coeffs))},
      Piece{std::numeric_limits<double>::infinity(), compose_half_shift(numkernel::to_rational(plus_coeffs))}};
  return FunctionSpec::piecewise_poly(std::move(pieces));
}

PiecewiseTarget make_target(const std::vector<std::complex<double>>& gm, const std::vector<std::complex<double>>& gp) {
  if (gm.empty() || gp.empty()) fail(Errc::domain, "G^- and G^+ need at least one coefficient");
  auto qm = numkernel::to_rational(gm), qp = numkernel::to_rational(gp);
  mpq_class half(1, 2);
  QComplex vm = eval_exact(qm, half), vp = eval_exact(qp, half);
  double scale = std::max({1.0, magnitude(vm), magnitude(vp)});
  if (distance(vm, vp) > 1e-12 * scale) fail(Errc::glue, "G^-(1/2) != G^+(1/2)");
  QComplex dm = eval_exact(derivative(qm), half), dp = eval_exact(derivative(qp), half);
  if (distance(dm, dp) <= 1e-12 * std::max({1.0, magnitude(dm), magnitude(dp)}))
    fail(Errc::degenerate, "G^- and G^+ have equal derivatives at 1/2");
  using numkernel::Piece;
  std::vector<Piece> pieces{Piece{0.5, qm}, Piece{std::numeric_limits<double>::infinity(), qp}};
  return PiecewiseTarget{FunctionSpec::piecewise_poly({Piece{std::numeric_limits<double>::infinity(), qm}}),
                         FunctionSpec::piecewise_poly({Piece{std::numeric_limits<double>::infinity(), qp}}),
                         FunctionSpec::piecewise_poly(std::move(pieces)), gm, gp};
}

int resolving_bits(int n, double q, std::complex<double> z, const PrecisionPolicy& policy) {
  // q below 1/16 would only resolve errors far under the exactness floor
  double extra = n * std::log2(1.0 / std::max(q, 1.0 / 16)) + n * std::log2(std::abs(z) + std::abs(1.0 - z)) +
                 std::log2(n + 1.0);
  return numkernel::required_bits(n, std::max(0.0, extra) / n, policy);
}

TwoLimitRun two_limit_experiment(const PiecewiseTarget& t, const TwoLimitConfig& cfg) {
  if (cfg.ladder.empty()) fail(Errc::invalid_argument, "two-limit experiment needs a ladder");
  if (!(cfg.eta >= 0 && cfg.eta < 0.5)) fail(Errc::domain, "eta must lie in [0, 1/2)");
  if (std::fabs(cfg.b_prime) > cfg.eta) fail(Errc::domain, "b' must lie in [-eta, eta]");
  TwoLimitRun run;
  int cs = std::max(cfg.c_samples, 2);
  for (int i = 0; i < cs; ++i) run.c_range.push_back(0.5 - cfg.eta + 2 * cfg.eta * i / (cs - 1));
  for (double c : run.c_range) {
    if (regions::classify(c, cfg.z_minus, cfg.resolution) != regions::Loop::left)
      fail(Errc::domain, "z_minus is not inside the left loop for c=" + std::to_string(c));
    if (regions::classify(c, cfg.z_plus, cfg.resolution) != regions::Loop::right)
      fail(Errc::domain, "z_plus is not inside the right loop for c=" + std::to_string(c));
  }
  run.q_minus = regions::q_constant(run.c_range, {cfg.z_minus}, cfg.resolution);
  run.q_plus = regions::q_constant(run.c_range, {cfg.z_plus}, cfg.resolution);

  std::size_t m = cfg.ladder.size();
  struct Slot {
    std::complex<double> value;
    double err = 0, wrong = 0;
    int bits = 0;
  };
  std::vector<Slot> slots(2 * m);
  parallel_for(2 * m, cfg.jobs, [&](std::size_t i) {
    int n = cfg.ladder[i / 2];
    bool minus = i % 2 == 0;
    std::complex<double> z = minus ? cfg.z_minus : cfg.z_plus;
    bernstein::BernsteinParams p{n, cfg.eps.at(n), cfg.b_prime};
    int min_bits = resolving_bits(n, minus ? run.q_minus : run.q_plus, z, cfg.policy);
    bernstein::SampleCache cache(t.glued, p);
    auto b = bernstein::bernstein_eval(cache, p, z, cfg.policy, min_bits);
    Complex at(Complex(z, b.bits).re + Real(cfg.b_prime, b.bits), Real(z.imag(), b.bits));
    Complex right = (minus ? t.g_minus : t.g_plus).eval(at, b.bits);
    Complex wrong = (minus ? t.g_plus : t.g_minus).eval(at, b.bits);
    slots[i] = Slot{b.value.to_complex(), abs(b.value - right).to_double(), abs(b.value - wrong).to_double(), b.bits};
  });
  for (auto* rep : {&run.minus, &run.plus}) {
    rep->n_ladder = cfg.ladder;
    rep->require_reduction = false;
    rep->final_max = cfg.final_max;
    rep->floor = numkernel::guard_tolerance(8, cfg.policy);
  }
  for (std::size_t k = 0; k < m; ++k) {
    const Slot& a = slots[2 * k];
    const Slot& b = slots[2 * k + 1];
    run.minus.sup_errors.push_back(a.err);
    run.plus.sup_errors.push_back(b.err);
    run.values_minus.push_back(a.value);
    run.values_plus.push_back(b.value);
    run.wrong_minus.push_back(a.wrong);
    run.wrong_plus.push_back(b.wrong);
    run.minus.bits_used = std::max(run.minus.bits_used, a.bits);
    run.plus.bits_used = std::max(run.plus.bits_used, b.bits);
  }
  auto describe = [](std::complex<double> z) {
    return "z=" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) + "i";
  };
  run.minus.grid = describe(cfg.z_minus);
  run.plus.grid = describe(cfg.z_plus);
  judge_ladder(run.minus);
  judge_ladder(run.plus);
  run.pass = run.minus.pass && run.plus.pass;
  return run;
}

ConvergenceReport real_segment_check(const PiecewiseTarget& t, const std::vector<double>& grid,
                                     const std::vector<int>& ladder, const sampling::EpsilonSpec& eps,
                                     double b_prime, const PrecisionPolicy& policy, int jobs) {
  if (grid.empty() || ladder.empty()) fail(Errc::invalid_argument, "real segment check needs a grid and a ladder");
  ConvergenceReport r;
  r.n_ladder = ladder;
  r.require_reduction = false;
  r.floor = numkernel::guard_tolerance(8, policy);
  std::size_t nx = grid.size();
  std::vector<double> err(ladder.size() * nx);
  std::vector<int> bits(err.size());
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    bernstein::BernsteinParams p{ladder[k], eps.at(ladder[k]), b_prime};
    bernstein::SampleCache cache(t.glued, p);
    parallel_for(nx, jobs, [&](std::size_t j) {
      double b = grid[j];
      if (b < 0 || b > 1) fail(Errc::domain, "real segment grid must lie in [0,1]");
      auto v = bernstein::bernstein_eval(cache, p, {b, 0.0}, policy);
      Complex exact = t.glued.eval(Complex(Real(b, v.bits) + Real(b_prime, v.bits), Real(v.bits)), v.bits);
      err[k * nx + j] = abs(v.value - exact).to_double();
      bits[k * nx + j] = v.bits;
    });
  }
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    double sup = 0;
    for (std::size_t j = 0; j < nx; ++j) sup = std::max(sup, err[k * nx + j]);
    r.sup_errors.push_back(sup);
  }
  for (int b : bits) r.bits_used = std::max(r.bits_used, b);
  r.grid = "real segment [0,1], " + std::to_string(nx) + " points";
  judge_ladder(r);
  return r;
}

}  // namespace sslab::kantorovich
