#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "sslab/error.hpp"
#include "sslab/kantorovich.hpp"
#include "sslab/supershift.hpp"

using namespace sslab;
using namespace sslab::supershift;
using cd = std::complex<double>;

namespace {

const auto kAuto = numkernel::PrecisionPolicy::automatic_with(64);

cd at(const FunctionSpec& f, double x) { return f.eval(x, 128).to_complex(); }

std::vector<sampling::EpsilonSpec> families(const char* text) { return sampling::EpsilonSpec::parse_many(text); }

FunctionSpec random_cubic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  return FunctionSpec::polynomial({u(rng), u(rng), u(rng), u(rng)});
}

}  // namespace

TEST_CASE("domain and grid") {
  DomainA d{-2.5, 2.5};
  CHECK(d.admissible(0.0, 0.0));
  CHECK_FALSE(d.admissible(0.0, 1.5));  // a' + 1 reaches the edge
  CHECK_FALSE(d.admissible(2.0, 1.0));
  auto g = make_grid(d, 0.25);
  CHECK_FALSE(g.empty());
  for (auto& p : g) CHECK(d.admissible(p.a, p.a_prime));
  CHECK_THROWS_AS((DomainA{-1, 1}.validate()), Error);
}

TEST_CASE("constants are reproduced exactly") {
  DomainA d{-2.5, 2.5};
  auto rep = tcsp_check(FunctionSpec::polynomial({2.5}), d, make_grid(d, 0.5), {10, 20}, families("zero,c_over_N:1"),
                        kAuto);
  for (auto& row : rep.per_family)
    for (double e : row) CHECK(e <= 1e-30);
  CHECK(rep.family_max.pass);
}

TEST_CASE("linear functions are reproduced without a width, and off by O(eps) with one") {
  DomainA d{-2.5, 2.5};
  auto rep = tcsp_check(FunctionSpec::polynomial({0.0, 1.0}), d, make_grid(d, 0.5), {10, 20, 40},
                        families("zero,c_over_N:1"), kAuto);
  for (auto& row : rep.per_family) {
    CHECK(row[0] <= rep.family_max.floor);
    CHECK(row[1] > 1e-3);
  }
  CHECK(rep.per_family[2][1] < rep.per_family[0][1]);
}

TEST_CASE("entire exponential restriction converges") {
  DomainA d{-2.5, 2.5};
  auto psi = FunctionSpec::exp_linear({0.3, 0.0});
  auto rep = tcsp_check(psi, d, make_grid(d, 0.25), {25, 50, 100, 200}, families("zero,c_over_N:1"), kAuto);
  CHECK(rep.family_max.pass);
  CHECK(rep.family_max.reduction_factor >= 4.0);
}

TEST_CASE("convolution") {
  auto one = convolve(FunctionSpec::polynomial({1.0}), 0.4);
  for (double a : {-1.0, 0.3, 2.0}) CHECK(std::abs(at(one, a) - 1.0) < 1e-30);
  // the bump is symmetric on [0, ε], so its first moment is ε/2
  auto lin = convolve(FunctionSpec::polynomial({0.0, 1.0}), 0.4);
  for (double a : {-1.0, 0.3, 2.0}) CHECK(std::abs(at(lin, a) - (a - 0.2)) < 1e-25);
  auto coarse = convolve(FunctionSpec::named(numkernel::Named::cos), 0.4, 16);
  auto fine = convolve(FunctionSpec::named(numkernel::Named::cos), 0.4, 64);
  CHECK(std::abs(at(coarse, 0.7) - at(fine, 0.7)) < 1e-6);
  CHECK_THROWS_AS(convolve(FunctionSpec::polynomial({1.0}), 0.0), Error);
}

TEST_CASE("multiplication by the identity closes over polynomials") {
  FunctionSpec f = FunctionSpec::polynomial({1.0});
  CHECK(std::abs(at(multiply_by_identity(f), 0.7) - 0.7) < 1e-30);
  for (int k = 1; k <= 5; ++k) {
    f = multiply_by_identity(f);
    CHECK(std::abs(at(f, 1.3) - std::pow(1.3, k)) < 1e-14);
  }
  CHECK(std::abs(at(multiply_by_identity(FunctionSpec::polynomial({0.0, 1.0})), -0.4) - 0.16) < 1e-16);
}

TEST_CASE("primitive") {
  CHECK(std::abs(at(primitive(FunctionSpec::polynomial({1.0}), 0.0), 0.6) - 0.6) < 1e-30);
  CHECK(std::abs(at(primitive(FunctionSpec::polynomial({0.0, 2.0}), 0.0), 0.6) - 0.36) < 1e-30);
  auto smooth = convolve(kantorovich::make_target({1.0, -2.0}, {-1.0, 2.0}).lifted(), 0.4);
  auto prim = primitive(smooth, 0.0);
  double h = 1e-5, a = 0.37;
  cd deriv = (at(prim, a + h) - at(prim, a - h)) / (2 * h);
  CHECK(std::abs(deriv - at(smooth, a)) < 1e-8);
  CHECK(std::abs(at(prim, 0.0)) < 1e-25);
}

TEST_CASE("multiplication recursion residual") {
  auto one = FunctionSpec::polynomial({1.0});
  CHECK(multiplication_recursion_residual(one, 2, 0.0, 0.4, 0.1, 256).ok());
  CHECK(multiplication_recursion_residual(one, 6, 0.2, 0.0, 0.3, 256).residual <= 1e-70);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    auto r = multiplication_recursion_residual(random_cubic(rng), 10, 0.05, 0.6, 0.1, 256);
    CHECK(r.ok());
  }
  auto sq = FunctionSpec::polynomial({0.0, 0.0, 1.0});
  CHECK(multiplication_recursion_residual(sq, 10, 0.05, 0.6, 0.1, 256).ok());
}

TEST_CASE("primitive derivative residual") {
  auto zero = FunctionSpec::polynomial({0.0});
  CHECK(primitive_derivative_residual(zero, zero, 4, 0.1, 0.5, 0.0, 128).residual == 0.0);
  auto one = FunctionSpec::polynomial({1.0});
  auto lin = FunctionSpec::polynomial({-0.2, 1.0});  // b - b0'
  CHECK(primitive_derivative_residual(one, lin, 2, 0.0, 0.3, 0.2, 256).ok());
  auto quad = FunctionSpec::polynomial({0.5, -1.0, 3.0});
  auto prim = primitive(quad, 0.0);
  auto r = primitive_derivative_residual(quad, prim, 8, 0.1, 0.45, 0.05, 256);
  CHECK(r.ok());
  // a non-primitive fails the identity
  CHECK_FALSE(primitive_derivative_residual(quad, quad, 8, 0.1, 0.45, 0.05, 256).ok());
}

TEST_CASE("analyticity probe") {
  auto kink = convolve(kantorovich::make_target({1.0, -2.0}, {-1.0, 2.0}).lifted(), 0.4);
  auto pr = analyticity_probe(kink, 0.0, 0.4, 0.8);
  CHECK(pr.non_analytic);
  auto smooth = FunctionSpec::named(numkernel::Named::cos);
  CHECK_FALSE(analyticity_probe(smooth, 0.0, 0.4, 0.8).non_analytic);
  auto poly = FunctionSpec::polynomial({1.0, -2.0, 0.5});
  CHECK_FALSE(analyticity_probe(poly, 0.0, 0.4, 0.8).non_analytic);
}
