#include "sslab/supershift.hpp"

#include <cmath>
#include <map>

#include "sslab/parallel.hpp"
#include "sslab/quadrature.hpp"
#include "sslab/superosc.hpp"

namespace sslab::supershift {

void DomainA::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi - lo > 2)) fail(Errc::domain, "A must have length R > 2");
}

bool DomainA::admissible(double a, double ap, double margin) const {
  return ap - 1 > lo + margin && ap + 1 < hi - margin && a + ap > lo + margin && a + ap < hi - margin;
}

std::vector<GridPoint> make_grid(const DomainA& dom, double step) {
  dom.validate();
  if (!(step > 0) || !std::isfinite(step)) fail(Errc::domain, "grid step must be positive");
  std::vector<GridPoint> out;
  long k0 = static_cast<long>(std::ceil((dom.lo + 1) / step)) - 1;
  long k1 = static_cast<long>(std::floor((dom.hi - 1) / step)) + 1;
  for (long k = k0; k <= k1; ++k) {
    double ap = k * step;
    if (!(ap - 1 > dom.lo + kGridMargin && ap + 1 < dom.hi - kGridMargin)) continue;
    long j0 = static_cast<long>(std::ceil((dom.lo - ap) / step)) - 1;
    long j1 = static_cast<long>(std::floor((dom.hi - ap) / step)) + 1;
    for (long j = j0; j <= j1; ++j) {
      double a = j * step;
      if (dom.admissible(a, ap)) out.push_back({a, ap});
    }
  }
  if (out.empty()) fail(Errc::domain, "grid step leaves no admissible points");
  return out;
}

namespace {

// ψ(a' + h_ν) rows per width, for one (N, ε_N, a')
class ShiftSamples {
 public:
  ShiftSamples(const FunctionSpec& psi, int n, double eps, double ap) : psi_(psi), n_(n), eps_(eps), ap_(ap) {}
  const std::vector<Complex>& at(int bits) {
    auto it = rows_.find(bits);
    if (it != rows_.end()) return it->second;
    std::vector<Complex> row;
    for (int v = 0; v <= n_; ++v) {
      Real x = Real(ap_, bits) + superosc::frequency(n_, v, eps_, bits);
      row.push_back(psi_.eval(Complex(x, Real(bits)), bits));
    }
    return rows_.emplace(bits, std::move(row)).first->second;
  }

 private:
  const FunctionSpec& psi_;
  int n_;
  double eps_, ap_;
  std::map<int, std::vector<Complex>> rows_;
};

}  // namespace

SupershiftReport tcsp_check(const FunctionSpec& psi, const DomainA& dom, const std::vector<GridPoint>& grid,
                            const std::vector<int>& ladder, const std::vector<sampling::EpsilonSpec>& families,
                            const PrecisionPolicy& policy, int jobs) {
  dom.validate();
  policy.validate();
  if (grid.empty() || ladder.empty() || families.empty())
    fail(Errc::invalid_argument, "tcsp_check needs a grid, a ladder and at least one family");
  for (const auto& g : grid)
    if (!dom.admissible(g.a, g.a_prime, 0.0))
      fail(Errc::domain, "grid point (" + std::to_string(g.a) + ", " + std::to_string(g.a_prime) + ") outside the domain");
  for (int n : ladder)
    if (n < 1) fail(Errc::domain, "ladder entries must be >= 1");

  // group grid points by shift so samples are shared
  std::map<double, std::vector<double>> groups;
  for (const auto& g : grid) groups[g.a_prime].push_back(g.a);
  std::vector<double> shifts;
  std::vector<std::vector<double>> by_shift;
  for (auto& [ap, as] : groups) {
    shifts.push_back(ap);
    by_shift.push_back(as);
  }

  std::size_t nl = ladder.size(), nf = families.size(), ns = shifts.size();
  std::vector<double> err(nl * nf * ns, 0.0), target_mag(nl * nf * ns, 0.0);
  std::vector<int> bits_used(err.size(), 0);
  parallel_for(err.size(), jobs, [&](std::size_t idx) {
    std::size_t s = idx % ns, f = (idx / ns) % nf, k = idx / (ns * nf);
    int n = ladder[k];
    double eps = families[f].at(n);
    double ap = shifts[s];
    ShiftSamples samples(psi, n, eps, ap);
    double worst = 0, mag = 0;
    int used = 0;
    for (double a : by_shift[s]) {
      auto eval = [&](int bits) {
        int work = bits + 4;
        auto c = superosc::coefficients(n, a, work);
        const auto& row = samples.at(work);
        Complex acc(work);
        Log2Sum mass;
        for (int v = 0; v <= n; ++v) {
          Complex t = row[v] * c[v];
          mass.add(log2_abs(t));
          acc += t;
        }
        return numkernel::SumOutcome{Complex(acc, bits), mass.value()};
      };
      auto r = numkernel::adaptive_sum(n, superosc::log2_coeff_mass(n, a), policy, eval);
      Complex exact = psi.eval(Complex(Real(a, r.bits) + Real(ap, r.bits), Real(r.bits)), r.bits);
      worst = std::max(worst, abs(r.value - exact).to_double());
      mag = std::max(mag, abs(exact).to_double());
      used = std::max(used, r.bits);
    }
    err[idx] = worst;
    target_mag[idx] = mag;
    bits_used[idx] = used;
  });

  SupershiftReport rep;
  rep.domain = dom;
  rep.grid = grid;
  for (const auto& f : families) rep.labels.push_back(f.label());
  ConvergenceReport& fm = rep.family_max;
  fm.n_ladder = ladder;
  double scale = 1.0;
  for (double m : target_mag) scale = std::max(scale, m);
  for (std::size_t k = 0; k < nl; ++k) {
    std::vector<double> row(nf, 0.0);
    for (std::size_t f = 0; f < nf; ++f)
      for (std::size_t s = 0; s < ns; ++s) row[f] = std::max(row[f], err[(k * nf + f) * ns + s]);
    double mx = 0;
    for (double v : row) mx = std::max(mx, v);
    rep.per_family.push_back(std::move(row));
    fm.sup_errors.push_back(mx);
  }
  for (int b : bits_used) fm.bits_used = std::max(fm.bits_used, b);
  fm.floor = numkernel::guard_tolerance(8, policy) * scale;
  fm.grid = std::to_string(grid.size()) + " points in the shift domain of (" + std::to_string(dom.lo) + ", " +
            std::to_string(dom.hi) + ")";
  judge_ladder(fm);
  return rep;
}

FunctionSpec convolve(const FunctionSpec& psi, double eps_support, int nodes) {
  return FunctionSpec::convolved(psi, eps_support, nodes);
}

FunctionSpec multiply_by_identity(const FunctionSpec& psi) { return FunctionSpec::product_with_identity(psi); }

FunctionSpec primitive(const FunctionSpec& psi, double a0) { return FunctionSpec::primitive(psi, a0); }

namespace {

struct WeightedSum {
  Complex value;
  Log2Sum mass;
};

// sum_ν C(n,ν) b^ν (1-b)^{n-ν} f(x0 + ν r)
WeightedSum bernstein_real(const FunctionSpec& f, int n, const Real& b, const Real& x0, const Real& r, int bits) {
  Real one(1L, bits);
  Real nb = one - b;
  WeightedSum out{Complex(bits), {}};
  mpz_class bin = 1;
  for (int v = 0; v <= n; ++v) {
    if (v > 0) {
      bin *= (n - v + 1);
      bin /= v;
    }
    Real w = Real(bin, bits) * pow(b, v) * pow(nb, n - v);
    Real x = x0 + Real(long(v), bits) * r;
    Complex t = f.eval(Complex(x, Real(bits)), bits) * w;
    out.mass.add(log2_abs(t));
    out.value += t;
  }
  return out;
}

}  // namespace

Residual multiplication_recursion_residual(const FunctionSpec& Psi, int n, double eps, double b, double b_prime,
                                           int bits) {
  if (n < 2) fail(Errc::domain, "multiplication recursion needs N >= 2");
  if (!(eps >= 0 && eps < 1)) fail(Errc::domain, "eps_N must lie in [0,1)");
  if (bits < numkernel::kMinBits) fail(Errc::invalid_argument, "bits must be >= 53");
  FunctionSpec Phi = FunctionSpec::product_with_identity(Psi);
  Real bb(b, bits), bp(b_prime, bits), one(1L, bits);
  Real r = (one - Real(eps, bits)) / Real(long(n), bits);
  WeightedSum lhs = bernstein_real(Phi, n, bb, bp, r, bits);
  // level N-1 at shift b'+r; rate relation 1 - ε' = (N-1)/N (1-ε) keeps the same step r
  Real eps1 = one - Real(long(n - 1), bits) * (one - Real(eps, bits)) / Real(long(n), bits);
  Real r1 = (one - eps1) / Real(long(n - 1), bits);
  WeightedSum low = bernstein_real(Psi, n - 1, bb, bp + r, r1, bits);
  WeightedSum same = bernstein_real(Psi, n, bb, bp, r, bits);
  Complex rhs = low.value * ((one - Real(eps, bits)) * bb) + same.value * bp;
  Log2Sum mass = lhs.mass;
  mass.add(low.mass.value() + log2_abs((one - Real(eps, bits)) * bb));
  mass.add(same.mass.value() + log2_abs(bp));
  Residual res;
  res.residual = abs(lhs.value - rhs).to_double();
  res.scale = std::exp2(std::max(mass.value(), -1000.0));
  res.tolerance = std::ldexp(res.scale, 16 - bits);
  return res;
}

Residual primitive_derivative_residual(const FunctionSpec& Psi, const FunctionSpec& Phi, int n, double eps, double b,
                                       double b_prime0, int bits, int quad_nodes) {
  if (n < 2) fail(Errc::domain, "primitive identity needs N >= 2");
  if (!(eps >= 0 && eps < 1)) fail(Errc::domain, "eps_N must lie in [0,1)");
  if (bits < numkernel::kMinBits) fail(Errc::invalid_argument, "bits must be >= 53");
  Real bb(b, bits), bp(b_prime0, bits), one(1L, bits);
  Real r = (one - Real(eps, bits)) / Real(long(n), bits);
  Real nb = one - bb;
  std::vector<Complex> phi;
  for (int v = 0; v <= n; ++v) phi.push_back(Phi.eval(Complex(bp + Real(long(v), bits) * r, Real(bits)), bits));
  // d/db of the level-N sum: N sum_ν C(N-1,ν) b^ν (1-b)^{N-1-ν} (Φ_{ν+1} - Φ_ν)
  Complex lhs(bits);
  Log2Sum mass;
  std::vector<Real> w;
  mpz_class bin = 1;
  for (int v = 0; v < n; ++v) {
    if (v > 0) {
      bin *= (n - v);
      bin /= v;
    }
    w.push_back(Real(bin, bits) * pow(bb, v) * pow(nb, n - 1 - v));
    Complex t = (phi[v + 1] - phi[v]) * (w.back() * Real(long(n), bits));
    mass.add(log2_abs(t));
    lhs += t;
  }
  // (1-ε) ∫_0^1 sum_ν C(N-1,ν) b^ν (1-b)^{N-1-ν} Ψ(b0' + rξ + νr) dξ
  auto rule = quadrature::gauss_legendre(quad_nodes, bits);
  Complex integral(bits);
  Real two(2L, bits);
  for (int j = 0; j < quad_nodes; ++j) {
    Real xi = (rule->nodes[j] + one) / two;
    Complex inner(bits);
    for (int v = 0; v < n; ++v) {
      Real x = bp + r * xi + Real(long(v), bits) * r;
      inner += Psi.eval(Complex(x, Real(bits)), bits) * w[v];
    }
    integral += inner * (rule->weights[j] / two);
  }
  Complex rhs = integral * (one - Real(eps, bits));
  mass.add(log2_abs(rhs));
  Residual res;
  res.residual = abs(lhs - rhs).to_double();
  res.scale = std::exp2(std::max(mass.value(), -1000.0));
  res.tolerance = std::ldexp(res.scale, 16 - bits);
  return res;
}

ProbeResult analyticity_probe(const FunctionSpec& psi, double glue_lo, double glue_hi, double width, int degree,
                              int points) {
  if (!(width > 0) || !(glue_hi >= glue_lo)) fail(Errc::domain, "probe needs width > 0 and glue_lo <= glue_hi");
  if (degree < 0 || points <= degree) fail(Errc::domain, "probe needs more points than the fit degree");
  constexpr int bits = 256;
  ProbeResult pr;
  pr.degree = degree;
  pr.points = points;
  pr.fit_lo = glue_lo - width;
  pr.fit_hi = glue_lo;
  pr.probe_lo = glue_hi;
  pr.probe_hi = glue_hi + width;
  double center = glue_lo - width / 2, half = width / 2;
  auto xs = [&](double lo, int i) { return lo + width * i / (points - 1); };
  int m = degree + 1;
  // normal equations in the scaled variable t = (x - center)/half, solved at high width
  std::vector<std::vector<Real>> ata(m, std::vector<Real>(m, Real(bits)));
  std::vector<Complex> atb(m, Complex(bits));
  std::vector<Complex> fit_vals;
  auto powers = [&](double x) {
    std::vector<Real> p;
    Real t = (Real(x, bits) - Real(center, bits)) / Real(half, bits);
    Real acc(1L, bits);
    for (int k = 0; k < m; ++k) {
      p.push_back(acc);
      acc *= t;
    }
    return p;
  };
  for (int i = 0; i < points; ++i) {
    double x = xs(pr.fit_lo, i);
    auto p = powers(x);
    Complex y = psi.eval(x, bits);
    fit_vals.push_back(y);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) ata[r][c] += p[r] * p[c];
      atb[r] += y * p[r];
    }
  }
  // Gaussian elimination with partial pivoting
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (abs(ata[r][col]) > abs(ata[piv][col])) piv = r;
    std::swap(ata[col], ata[piv]);
    std::swap(atb[col], atb[piv]);
    if (ata[col][col].is_zero()) fail(Errc::degenerate, "probe fit is singular");
    for (int r = col + 1; r < m; ++r) {
      Real f = ata[r][col] / ata[col][col];
      for (int c = col; c < m; ++c) ata[r][c] -= f * ata[col][c];
      atb[r] -= atb[col] * f;
    }
  }
  std::vector<Complex> coef(m, Complex(bits));
  for (int r = m - 1; r >= 0; --r) {
    Complex s = atb[r];
    for (int c = r + 1; c < m; ++c) s -= coef[c] * ata[r][c];
    coef[r] = Complex(s.re / ata[r][r], s.im / ata[r][r]);
  }
  auto model = [&](double x) {
    auto p = powers(x);
    Complex acc(bits);
    for (int k = 0; k < m; ++k) acc += coef[k] * p[k];
    return acc;
  };
  for (int i = 0; i < points; ++i)
    pr.fit_residual = std::max(pr.fit_residual, abs(model(xs(pr.fit_lo, i)) - fit_vals[i]).to_double());
  for (int i = 0; i < points; ++i) {
    double x = xs(pr.probe_lo, i);
    pr.mispredict = std::max(pr.mispredict, abs(model(x) - psi.eval(x, bits)).to_double());
  }
  pr.non_analytic = pr.mispredict >= 10 * pr.fit_residual && pr.mispredict >= kProbeFloor;
  return pr;
}

}  // namespace sslab::supershift
