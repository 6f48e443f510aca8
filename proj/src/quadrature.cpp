#include "sslab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "sslab/error.hpp"

namespace sslab::quadrature {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence
void legendre(int n, const Real& x, Real& p, Real& dp) {
  int bits = x.bits();
  Real p0(1L, bits), p1 = x;
  for (int k = 2; k <= n; ++k) {
    Real p2 = (Real(long(2 * k - 1), bits) * x * p1 - Real(long(k - 1), bits) * p0) / Real(long(k), bits);
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  p = p1;
  Real one(1L, bits);
  dp = Real(long(n), bits) * (x * p1 - p0) / (x * x - one);
}

std::shared_ptr<const Rule> compute_gl(int n, int bits) {
  int work = bits + 32;
  auto rule = std::make_shared<Rule>();
  rule->nodes.resize(n, Real(work));
  rule->weights.resize(n, Real(work));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double guess = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    Real x(guess, work), p(work), dp(work);
    // Newton converges quadratically; stop once the update drops below the working ulp
    for (int it = 0; it < 200; ++it) {
      legendre(n, x, p, dp);
      Real dx = p / dp;
      x -= dx;
      if (dx.is_zero() || log2_abs(dx) < log2_abs(x) - work + 2) {
        legendre(n, x, p, dp);
        break;
      }
    }
    Real one(1L, work);
    Real w = Real(2L, work) / ((one - x * x) * dp * dp);
    // descending cosine guesses give nodes from +1 down; store ascending
    rule->nodes[n - 1 - i] = x;
    rule->weights[n - 1 - i] = w;
    rule->nodes[i] = -x;
    rule->weights[i] = w;
  }
  if (n % 2 == 1) rule->nodes[n / 2] = Real(work);
  for (auto& x : rule->nodes) x = Real(x, bits);
  for (auto& w : rule->weights) w = Real(w, bits);
  return rule;
}

std::shared_ptr<const Rule> compute_bump(int n, int bits) {
  auto gl = gauss_legendre(n, bits + 16);
  int work = bits + 16;
  auto rule = std::make_shared<Rule>();
  Real total(work);
  Real one(1L, work), two(2L, work);
  std::vector<Real> w(n, Real(work));
  for (int j = 0; j < n; ++j) {
    const Real& t = gl->nodes[j];
    Real q = one - t * t;
    w[j] = gl->weights[j] * exp(-(one / q));
    total += w[j];
  }
  for (int j = 0; j < n; ++j) {
    rule->nodes.emplace_back((one + gl->nodes[j]) / two, bits);
    rule->weights.emplace_back(w[j] / total, bits);
  }
  return rule;
}

template <class F>
std::shared_ptr<const Rule> cached(std::map<std::pair<int, int>, std::shared_ptr<const Rule>>& cache,
                                   std::mutex& mu, int n, int bits, F compute) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, bits});
    if (it != cache.end()) return it->second;
  }
  auto rule = compute(n, bits);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(n, bits), rule).first->second;
}

}  // namespace

std::shared_ptr<const Rule> gauss_legendre(int n, int bits) {
  if (n < 1) fail(Errc::invalid_argument, "quadrature needs at least one node");
  static std::map<std::pair<int, int>, std::shared_ptr<const Rule>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, bits, compute_gl);
}

std::shared_ptr<const Rule> bump_rule(int n, int bits) {
  if (n < 1) fail(Errc::invalid_argument, "quadrature needs at least one node");
  static std::map<std::pair<int, int>, std::shared_ptr<const Rule>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, bits, compute_bump);
}

Complex integrate(const std::function<Complex(const Complex&)>& f, const Complex& a, const Complex& b,
                  int bits) {
  constexpr int kNodes = 24;
  constexpr int kMaxPanels = 1 << 12;
  int work = bits + 8;
  auto rule = gauss_legendre(kNodes, work);
  Complex lo(a, work), span = Complex(b, work) - Complex(a, work);
  Real two(2L, work);
  auto composite = [&](int panels) {
    Complex sum(work);
    Real width = Real(1L, work) / Real(long(panels), work);
    for (int p = 0; p < panels; ++p) {
      Real left = Real(long(p), work) * width;
      for (int j = 0; j < kNodes; ++j) {
        Real u = left + width * (rule->nodes[j] + Real(1L, work)) / two;
        Complex x = lo + span * u;
        sum += f(x) * (rule->weights[j] * width / two);
      }
    }
    return sum * span;
  };
  Complex prev = composite(1);
  for (int panels = 2; panels <= kMaxPanels; panels *= 2) {
    Complex cur = composite(panels);
    Real diff = abs(cur - prev);
    double scale = std::max(log2_abs(cur), -static_cast<double>(bits));
    if (diff.is_zero() || log2_abs(diff) <= scale - bits + 4) return Complex(cur, bits);
    prev = std::move(cur);
  }
  throw PrecisionError(bits, "adaptive quadrature did not converge");
}

}  // namespace sslab::quadrature
