#include <doctest.h>

#include <cmath>
#include <complex>

#include "sslab/error.hpp"
#include "sslab/mp.hpp"

using namespace sslab;

TEST_CASE("real arithmetic keeps the wider operand's precision") {
  Real a(1L, 200), b(3L, 80);
  Real q = a / b;
  CHECK(q.bits() == 200);
  CHECK(std::fabs(q.to_double() - 1.0 / 3.0) < 1e-17);
}

TEST_CASE("euler identity at 256 bits") {
  Complex e = expi(pi(256));
  CHECK(std::fabs(e.re.to_double() + 1.0) < 1e-70);
  CHECK(std::fabs(e.im.to_double()) < 1e-70);
}

TEST_CASE("complex pow matches repeated multiplication") {
  Complex z(std::complex<double>(0.3, -1.7), 128);
  Complex acc(std::complex<double>(1.0, 0.0), 128);
  for (int k = 0; k < 13; ++k) acc = acc * z;
  Complex p = pow(z, 13);
  CHECK(abs(p - acc).to_double() < 1e-30 * abs(acc).to_double());
}

TEST_CASE("complex sqrt is the principal branch") {
  Complex r = sqrt(Complex(std::complex<double>(-4.0, 0.0), 64));
  CHECK(std::fabs(r.re.to_double()) < 1e-18);
  CHECK(r.im.to_double() == doctest::Approx(2.0));
  Complex s = sqrt(Complex(std::complex<double>(-4.0, -0.0), 64));
  CHECK(std::abs(s.to_complex() - std::sqrt(std::complex<double>(-4.0, -0.0))) < 1e-15);
}

TEST_CASE("transcendentals agree with libm") {
  std::complex<double> z(0.7, -0.4);
  Complex w(z, 100);
  CHECK(std::abs(exp(w).to_complex() - std::exp(z)) < 1e-15);
  CHECK(std::abs(sin(w).to_complex() - std::sin(z)) < 1e-15);
  CHECK(std::abs(cos(w).to_complex() - std::cos(z)) < 1e-15);
  CHECK(std::abs(sinh(w).to_complex() - std::sinh(z)) < 1e-15);
  CHECK(std::abs(cosh(w).to_complex() - std::cosh(z)) < 1e-15);
}

TEST_CASE("log2 of magnitude survives exponents beyond double range") {
  Real big = pow(Real(2L, 64), 5000);
  CHECK(log2_abs(big) == doctest::Approx(5000.0));
  Log2Sum s;
  s.add(5000);
  s.add(5000);
  CHECK(s.value() == doctest::Approx(5001.0));
}

TEST_CASE("hex serialization is exact") {
  Real x(0.1, 53);
  CHECK(std::strtod(to_hex(x).c_str(), nullptr) == 0.1);
}

TEST_CASE("non-finite results are rejected") {
  Complex bad(Real(1L, 53) / Real(0L, 53), Real(0L, 53));
  CHECK_THROWS_AS(ensure_finite(bad, "probe"), Error);
}
