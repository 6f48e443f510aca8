#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "sslab/bernstein.hpp"
#include "sslab/error.hpp"

using namespace sslab;
using namespace sslab::bernstein;
using cd = std::complex<double>;

namespace {

const auto kAuto = numkernel::PrecisionPolicy::automatic_with(64);

cd eval(const FunctionSpec& psi, BernsteinParams p, cd b) { return bernstein_eval(psi, p, b, kAuto).value.to_complex(); }

// Direct double sum of binomial weights times samples.
cd brute(const std::function<cd(double)>& f, int n, double eps, double bp, cd b) {
  cd s = 0;
  for (int v = 0; v <= n; ++v) {
    double c = std::tgamma(n + 1.0) / (std::tgamma(v + 1.0) * std::tgamma(n - v + 1.0));
    s += c * std::pow(b, v) * std::pow(1.0 - b, n - v) * f(bp + v * (1 - eps) / n);
  }
  return s;
}

FunctionSpec random_cubic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  return FunctionSpec::polynomial({u(rng), u(rng), u(rng), u(rng)});
}

}  // namespace

TEST_CASE("partition of unity and linear reproduction") {
  auto one = FunctionSpec::polynomial({1.0});
  for (int n : {1, 5, 30}) CHECK(std::abs(eval(one, {n, 0.1, 0.2}, {0.4, 0.3}) - 1.0) < 1e-15);
  auto id = FunctionSpec::polynomial({0.0, 1.0});
  CHECK(std::abs(eval(id, {10, 0, 0}, 0.3) - 0.3) < 1e-16);
  auto sq = FunctionSpec::polynomial({0.0, 0.0, 1.0});
  CHECK(std::abs(eval(sq, {10, 0, 0}, 0.5) - 0.275) < 1e-16);
}

TEST_CASE("matches a direct double sum on real b") {
  auto f = [](double x) { return cd(std::cos(3 * x), 0); };
  auto g = FunctionSpec::from_json(R"({"kind":"exp_linear","lambda":[0,3]})");
  for (double b : {0.0, 0.25, 0.9})
    CHECK(std::abs(eval(g, {12, 0.05, 0.1}, b).real() - brute(f, 12, 0.05, 0.1, b).real()) < 1e-13);
}

TEST_CASE("forward differences") {
  auto id = FunctionSpec::polynomial({0.0, 1.0});
  auto d = forward_differences(id, 0.3, 0.125, 2, 128);
  CHECK(d[1].to_complex() == cd(0.125, 0));
  CHECK(std::abs(d[2].to_complex()) < 1e-35);
  auto sq = FunctionSpec::polynomial({0.0, 0.0, 1.0});
  CHECK(std::abs(forward_differences(sq, 0.3, 0.125, 2, 128)[2].to_complex() - 2 * 0.125 * 0.125) < 1e-35);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    auto c = random_cubic(rng);
    auto table = forward_differences(c, 0.1, 0.07, 5, 128);
    for (int k = 0; k <= 5; ++k)
      CHECK(abs(table[k] - forward_difference_direct(c, 0.1, 0.07, k, 128)).to_double() < 1e-30);
  }
}

TEST_CASE("newton form equals the bernstein sum") {
  auto c = FunctionSpec::polynomial({2.0, -1.0, 0.5});
  CHECK(std::abs(newton_form_eval(c, {8, 0, 0.15}, 0.0, kAuto).value.to_complex() -
                 c.eval(0.15, 64).to_complex()) < 1e-15);
  auto k = FunctionSpec::polynomial({4.0});
  CHECK(std::abs(newton_form_eval(k, {8, 0.2, 0.0}, {0.3, 1.0}, kAuto).value.to_complex() - 4.0) < 1e-15);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1), ub(0, 0.2);
  for (int t = 0; t < 25; ++t) {
    std::vector<numkernel::Piece> pieces;
    double brk = 0.3 + 0.4 * (u(rng) + 1) / 2;
    pieces.push_back({brk, numkernel::to_rational({u(rng), u(rng), u(rng), u(rng)})});
    pieces.push_back({INFINITY, numkernel::to_rational({u(rng), u(rng), u(rng), u(rng)})});
    auto psi = FunctionSpec::piecewise_poly(pieces);
    BernsteinParams p{8, 0.0, ub(rng)};
    auto bsum = bernstein_eval(psi, p, 0.7, kAuto);
    auto nf = newton_form_eval(psi, p, 0.7, kAuto);
    double scale = std::max(abs(bsum.value).to_double(), 1e-300);
    CHECK(abs(Complex(bsum.value, 256) - Complex(nf.value, 256)).to_double() <= std::ldexp(1.0, 16 - 64) * scale);
  }
}

TEST_CASE("moment polynomials") {
  for (cd z : {cd(0.3, 0), cd(2, 1), cd(-1, -0.5)}) CHECK(std::abs(moment_poly(7, 0, 0.4, 0.1, z, kAuto).value.to_complex() - 1.0) < 1e-15);
  CHECK(std::abs(moment_poly(9, 1, 0.3, 0.0, 0.7, kAuto).value.to_complex() - 0.4) < 1e-15);
  auto f = [](double x) { return cd((x - 0.5) * (x - 0.5), 0); };
  CHECK(std::abs(moment_poly(16, 2, 0.5, 0.0, 0.9, kAuto).value.to_complex() - brute(f, 16, 0, 0, 0.9)) < 1e-15);
  // with a width the first moment is (1-ε)z - c
  CHECK(std::abs(moment_poly(16, 1, 0.3, 0.2, -0.7, kAuto).value.to_complex() - (0.8 * -0.7 - 0.3)) < 1e-15);
}

TEST_CASE("literal moment bound fails for positive width") {
  // |B_{16,1}(-0.7)| with c = 0.3, ε = 0.2 against (ρ0 (1-ε))^1 = 0.8
  double lhs = std::abs(moment_poly(16, 1, 0.3, 0.2, -0.7, kAuto).value.to_complex());
  CHECK(lhs == doctest::Approx(0.86));
  CHECK(lhs > 0.8);
}

TEST_CASE("coefficient bound") {
  auto edge = coefficient_bound_check(0.3, 2, {cd(1.0, 0)});
  CHECK(edge[0].precondition_ok);
  CHECK(edge[1].holds);
  CHECK(edge[1].lhs == doctest::Approx(edge[1].rhs));
  // the inequality fails inside radius max(c, 1-c)
  auto short_radius = coefficient_bound_check(0.2, 2, {cd(0.2, 0.2)});
  CHECK_FALSE(short_radius[1].precondition_ok);
  CHECK_FALSE(short_radius[1].holds);
  for (auto& b : coefficient_bound_check(0.3, 12, {cd(2, 1)})) CHECK(b.holds);
  auto inside = coefficient_bound_check(0.3, 3, {cd(0.35, 0)});
  CHECK_FALSE(inside[0].precondition_ok);
}

TEST_CASE("parameter validation") {
  auto one = FunctionSpec::polynomial({1.0});
  CHECK_THROWS_AS(eval(one, {0, 0, 0}, 0.5), Error);
  CHECK_THROWS_AS(eval(one, {4, 1.0, 0}, 0.5), Error);
  auto bounded = FunctionSpec::from_json(R"({"kind":"exp_linear","lambda":[0,1],"domain":[0,0.5]})");
  CHECK_THROWS_AS(eval(bounded, {4, 0, 0}, 0.5), Error);
}
