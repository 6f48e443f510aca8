#include "sslab/bernstein.hpp"

#include <cmath>

namespace sslab::bernstein {

namespace {

// w_ν = C(N,ν) b^ν (1-b)^{N-ν}
std::vector<Complex> weights(int n, const Complex& b) {
  int bits = b.bits();
  Complex one(Real(1L, bits), Real(bits));
  Complex nb = one - b;
  std::vector<Complex> bp(n + 1, Complex(bits)), np(n + 1, Complex(bits));
  bp[0] = one;
  np[0] = one;
  for (int k = 1; k <= n; ++k) {
    bp[k] = bp[k - 1] * b;
    np[k] = np[k - 1] * nb;
  }
  std::vector<Complex> w;
  w.reserve(n + 1);
  mpz_class bin = 1;
  for (int v = 0; v <= n; ++v) {
    if (v > 0) {
      bin *= (n - v + 1);
      bin /= v;
    }
    w.push_back(bp[v] * np[n - v] * Real(bin, bits));
  }
  return w;
}

double weight_cancellation(int n, std::complex<double> b) {
  return n * std::log2(std::abs(b) + std::abs(1.0 - b));
}

}  // namespace

void BernsteinParams::validate() const {
  if (n < 1) fail(Errc::domain, "Bernstein order N must be >= 1");
  if (!(eps >= 0 && eps < 1)) fail(Errc::domain, "eps_N must lie in [0,1)");
  if (!std::isfinite(b_prime)) fail(Errc::domain, "b' must be finite");
}

Real sample_point(const BernsteinParams& p, int nu, int bits) {
  Real span = Real(long(nu), bits) * (Real(1L, bits) - Real(p.eps, bits)) / Real(long(p.n), bits);
  return Real(p.b_prime, bits) + span;
}

const std::vector<Complex>& SampleCache::at(int bits) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rows_.find(bits);
    if (it != rows_.end()) return it->second;
  }
  std::vector<Complex> row;
  row.reserve(p_.n + 1);
  for (int v = 0; v <= p_.n; ++v) {
    Real s = sample_point(p_, v, bits);
    row.push_back(psi_.eval(Complex(s, Real(bits)), bits));
  }
  std::lock_guard<std::mutex> lock(mu_);
  return rows_.emplace(bits, std::move(row)).first->second;
}

Evaluated bernstein_eval(SampleCache& samples, const BernsteinParams& p, std::complex<double> b,
                         const PrecisionPolicy& policy, int min_bits) {
  p.validate();
  policy.validate();
  auto eval = [&](int bits) {
    int work = std::max(bits, min_bits) + 4;
    const auto& psi = samples.at(work);
    auto w = weights(p.n, Complex(b, work));
    Complex acc(work);
    Log2Sum mass;
    for (int v = 0; v <= p.n; ++v) {
      Complex t = w[v] * psi[v];
      mass.add(log2_abs(t));
      acc += t;
    }
    return numkernel::SumOutcome{Complex(acc, std::max(bits, min_bits)), mass.value()};
  };
  Evaluated r = numkernel::adaptive_sum(p.n, weight_cancellation(p.n, b), policy, eval);
  r.bits = std::max(r.bits, min_bits);
  return r;
}

Evaluated bernstein_eval(SampleCache& samples, const BernsteinParams& p, std::complex<double> b,
                         const PrecisionPolicy& policy) {
  return bernstein_eval(samples, p, b, policy, numkernel::kMinBits);
}

Evaluated bernstein_eval(const FunctionSpec& psi, const BernsteinParams& p, std::complex<double> b,
                         const PrecisionPolicy& policy) {
  SampleCache cache(psi, p);
  return bernstein_eval(cache, p, b, policy);
}

std::vector<Complex> forward_differences(const FunctionSpec& psi, double b_prime, double rate, int k, int bits) {
  if (k < 0) fail(Errc::domain, "forward_differences: K must be nonnegative");
  std::vector<Complex> d;
  for (int j = 0; j <= k; ++j) {
    Real s = Real(b_prime, bits) + Real(long(j), bits) * Real(rate, bits);
    d.push_back(psi.eval(Complex(s, Real(bits)), bits));
  }
  std::vector<Complex> out{d[0]};
  for (int level = 1; level <= k; ++level) {
    for (int j = 0; j + level <= k; ++j) d[j] = d[j + 1] - d[j];
    out.push_back(d[0]);
  }
  return out;
}

Complex forward_difference_direct(const FunctionSpec& psi, double b_prime, double rate, int k, int bits) {
  Complex acc(bits);
  for (int j = 0; j <= k; ++j) {
    Real s = Real(b_prime, bits) + Real(long(j), bits) * Real(rate, bits);
    Complex t = psi.eval(Complex(s, Real(bits)), bits) * Real(numkernel::binomial(k, j), bits);
    if ((k - j) % 2) acc -= t;
    else acc += t;
  }
  return acc;
}

Evaluated newton_form_eval(const FunctionSpec& psi, const BernsteinParams& p, std::complex<double> b,
                           const PrecisionPolicy& policy) {
  p.validate();
  policy.validate();
  // differences of order κ carry rounding mass sum_j C(κ,j)|Ψ_j| ≤ 2^κ max|Ψ|
  double apriori = p.n * std::log2(1.0 + std::abs(b)) + p.n;
  auto eval = [&](int bits) {
    int work = bits + 4;
    std::vector<Complex> d;
    std::vector<Real> dm;
    for (int j = 0; j <= p.n; ++j) {
      Real s = sample_point(p, j, work);
      d.push_back(psi.eval(Complex(s, Real(work)), work));
      dm.push_back(abs(d.back()));
    }
    Complex bb(b, work);
    Complex bpow(Real(1L, work), Real(work));
    Complex acc(work);
    Log2Sum mass;
    mpz_class bin = 1;
    for (int kappa = 0; kappa <= p.n; ++kappa) {
      if (kappa > 0) {
        for (int j = 0; j + kappa <= p.n; ++j) {
          d[j] = d[j + 1] - d[j];
          dm[j] = dm[j + 1] + dm[j];
        }
        bin *= (p.n - kappa + 1);
        bin /= kappa;
        bpow = bpow * bb;
      }
      // N!/(N-κ)!/κ! = C(N,κ)
      Real coef(bin, work);
      acc += d[0] * bpow * coef;
      mass.add(log2_abs(coef) + log2_abs(bpow) + log2_abs(dm[0]));
    }
    return numkernel::SumOutcome{Complex(acc, bits), mass.value()};
  };
  return numkernel::adaptive_sum(p.n, apriori, policy, eval);
}

std::vector<Complex> moment_polys(int n, int kappa_max, double c, double eps, std::complex<double> z,
                                  const PrecisionPolicy& policy, int* bits_used) {
  if (n < 1) fail(Errc::domain, "moment_poly: N must be >= 1");
  if (kappa_max < 0) fail(Errc::domain, "moment_poly: kappa must be >= 0");
  if (!(eps >= 0 && eps < 1)) fail(Errc::domain, "eps_N must lie in [0,1)");
  policy.validate();
  std::vector<Complex> values;
  auto eval = [&](int bits) {
    int work = bits + 4;
    auto w = weights(n, Complex(z, work));
    std::vector<Complex> acc(kappa_max + 1, Complex(work));
    std::vector<Log2Sum> mass(kappa_max + 1);
    Real cc(c, work), rate = (Real(1L, work) - Real(eps, work)) / Real(long(n), work);
    for (int v = 0; v <= n; ++v) {
      Real d = Real(long(v), work) * rate - cc;
      Real dk(1L, work);
      for (int k = 0; k <= kappa_max; ++k) {
        Complex t = w[v] * dk;
        mass[k].add(log2_abs(t));
        acc[k] += t;
        dk *= d;
      }
    }
    // report the worst-conditioned nonzero entry to the width controller
    double worst = -1;
    std::size_t pick = 0;
    for (int k = 0; k <= kappa_max; ++k) {
      if (acc[k].is_zero()) continue;
      double cancel = mass[k].value() - log2_abs(acc[k]);
      if (cancel > worst) {
        worst = cancel;
        pick = k;
      }
    }
    values.clear();
    for (auto& a : acc) values.emplace_back(a, bits);
    return numkernel::SumOutcome{values[pick], mass[pick].value()};
  };
  Evaluated r = numkernel::adaptive_sum(n, n * std::log2(std::abs(z) + std::abs(1.0 - z)), policy, eval);
  if (bits_used) *bits_used = r.bits;
  return values;
}

Evaluated moment_poly(int n, int kappa, double c, double eps, std::complex<double> z, const PrecisionPolicy& policy) {
  int bits = 0;
  auto v = moment_polys(n, kappa, c, eps, z, policy, &bits);
  return {v[kappa], bits};
}

std::vector<BoundCheck> coefficient_bound_check(double c, int kappa_max, const std::vector<std::complex<double>>& zs) {
  std::vector<BoundCheck> out;
  double rmin = std::max(c, 1 - c);
  for (auto z : zs) {
    double dist = std::abs(z - c);
    bool pre = dist >= rmin * (1 - 1e-12);
    for (int k = 1; k <= kappa_max; ++k) {
      BoundCheck b;
      b.z = z;
      b.kappa = k;
      b.lhs = std::abs(z * std::pow(1 - c, k) + (1.0 - z) * std::pow(-c, k));
      b.rhs = std::pow(dist, k);
      b.precondition_ok = pre;
      b.holds = b.lhs <= b.rhs * (1 + 1e-12);
      out.push_back(b);
    }
  }
  return out;
}

}  // namespace sslab::bernstein
