#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "sslab/error.hpp"
#include "sslab/superosc.hpp"

using namespace sslab;
using namespace sslab::superosc;
using cd = std::complex<double>;

namespace {

const auto kAuto = numkernel::PrecisionPolicy::automatic_with(64);

double rel(cd got, cd want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// Direct double-precision sum; only trustworthy where there is no cancellation.
cd brute_sum(int n, double eps, double a, cd z) {
  double p = (1 + a) / 2, q = (1 - a) / 2;
  cd s = 0;
  for (int k = 0; k <= n; ++k) {
    double c = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) * std::pow(p, n - k) *
               std::pow(q, k);
    double h = 1 - 2 * (k + eps * (n - k)) / n;
    s += c * std::exp(cd(0, 1) * h * z);
  }
  return s;
}

}  // namespace

TEST_CASE("coefficients") {
  CHECK(coeff(1, 0, 1.0, 64).to_double() == 1.0);
  CHECK(coeff(2, 1, 0.0, 64).to_double() == 0.5);
  Real s(0L, 128);
  for (int k = 0; k <= 3; ++k) s = s + coeff(3, k, 2.5, 128);
  CHECK(std::fabs(s.to_double() - 1.0) < 1e-30);
  CHECK(log2_coeff_mass(10, 3.0) == doctest::Approx(10 * std::log2(3.0)));
  CHECK_THROWS_AS(coeff(3, 4, 0.0, 64), Error);
}

TEST_CASE("sum form against hand values") {
  CHECK(std::abs(eval_sum(1, 0, 2.0, M_PI / 2, kAuto).value.to_complex() - cd(0, 2)) < 1e-15);
  CHECK(rel(eval_sum(7, 0, 1.0, 1.0, kAuto).value.to_complex(), std::exp(cd(0, 1))) < 1e-15);
  CHECK(rel(eval_sum(6, 0.1, 0.3, cd(0.4, 0.2), kAuto).value.to_complex(), brute_sum(6, 0.1, 0.3, cd(0.4, 0.2))) <
        1e-13);
}

TEST_CASE("closed form against hand values") {
  for (double x : {-2.0, 0.3, 5.0}) CHECK(rel(eval_closed(1, 0, 0.0, x, kAuto).value.to_complex(), std::cos(x)) < 1e-15);
  for (int n : {1, 9, 40}) {
    cd z(0.7, -0.3);
    CHECK(rel(eval_closed(n, 0, 1.0, z, kAuto).value.to_complex(), std::exp(cd(0, 1) * z)) < 1e-15);
  }
}

TEST_CASE("dual forms agree where cancellation is severe") {
  for (auto [n, eps, a, z] : {std::tuple{20, 0.05, 3.0, cd(2, 0)}, std::tuple{50, 1.0 / 50, 2.0, cd(1.5, 0)},
                              std::tuple{64, 0.0, 4.0, cd(7, 7)}}) {
    auto s = eval_sum(n, eps, a, z, kAuto);
    auto c = eval_closed(n, eps, a, z, kAuto);
    int bits = std::max(s.bits, c.bits);
    double err = abs(Complex(s.value, bits) - Complex(c.value, bits)).to_double();
    CHECK(err <= std::ldexp(1.0, -64) * abs(c.value).to_double());
  }
}

TEST_CASE("cancellation estimate tracks the real loss") {
  CHECK(sum_cancellation(8, 0, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sum_cancellation(64, 0, 4.0, 3.0) > 64 * std::log2(4.0) - 10);
}

TEST_CASE("lagrange interpolant hits nodes exactly and averages for N=1") {
  auto row = sampling::frequencies(4, 0.0);
  for (double node : row.h) {
    auto v = lagrange_eval(row, node, 1.3, kAuto).value.to_complex();
    CHECK(std::abs(v - std::exp(cd(0, node * 1.3))) < 1e-15);
  }
  cd z(0.4, 0.2);
  CHECK(std::abs(lagrange_eval(sampling::frequencies(1, 0.0), 0.0, z, kAuto).value.to_complex() - std::cos(z)) < 1e-15);
  CHECK(lagrange_eval(sampling::frequencies(9, 0.0), 3.0, 0.0, kAuto).value.to_complex() == cd(1, 0));
}

TEST_CASE("lagrange remainder bound") {
  CHECK(lagrange_bound(5, 2, 1) == doctest::Approx(729.0 / 720.0));
  CHECK(lagrange_bound(7, 3, 0) == 0.0);
  CHECK(lagrange_bound(10, 1, 1) == doctest::Approx(std::pow(2.0, 11) / std::tgamma(12.0)));
  auto v = lagrange_eval(sampling::frequencies(5, 0.0), 2.0, 1.0, kAuto).value.to_complex();
  CHECK(std::abs(std::exp(cd(0, 2)) - v) <= 1.0125);
}

TEST_CASE("convergence ladder for a = 2") {
  std::vector<double> xs;
  for (int k = 0; k <= 60; ++k) xs.push_back(-3 + 0.1 * k);
  auto run = superosc_convergence(2.0, xs, {25, 50, 100, 200}, sampling::EpsilonSpec{}, kAuto);
  CHECK(run.report.pass);
  CHECK(run.report.reduction_factor >= 4.0);
  auto one = superosc_convergence(1.0, xs, {10, 20}, sampling::EpsilonSpec{}, kAuto);
  CHECK(one.report.pass);
  CHECK(one.report.sup_errors.back() <= one.report.floor);
}

TEST_CASE("a = 0 ladder matches the cosine-power formula") {
  auto eps = sampling::EpsilonSpec::parse("c_over_N:1");
  std::vector<double> xs{-2, -1, 0.5, 2};
  auto run = superosc_convergence(0.0, xs, {10, 20}, eps, kAuto);
  for (std::size_t k = 0; k < 2; ++k) {
    int n = k == 0 ? 10 : 20;
    double e = eps.at(n), sup = 0;
    for (double x : xs) sup = std::max(sup, std::abs(std::pow(std::cos((1 - e) * x / n), n) * std::exp(cd(0, e * x)) - 1.0));
    CHECK(run.report.sup_errors[k] == doctest::Approx(sup).epsilon(1e-10));
  }
  CHECK(run.report.sup_errors[1] < run.report.sup_errors[0]);
}

TEST_CASE("random dual-form agreement over the parameter box") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-6, 6), ue(0, 0.5);
  for (int t = 0; t < 40; ++t) {
    int n = 1 + static_cast<int>(rng() % 48);
    double a = u(rng), e = ue(rng);
    cd z(u(rng), u(rng) / 3);
    auto s = eval_sum(n, e, a, z, kAuto);
    auto c = eval_closed(n, e, a, z, kAuto);
    int bits = std::max(s.bits, c.bits);
    CHECK(abs(Complex(s.value, bits) - Complex(c.value, bits)).to_double() <=
          std::ldexp(1.0, -56) * abs(c.value).to_double());
  }
}
