// RAII wrappers over MPFR reals and (re, im) pairs of them.
#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <complex>
#include <limits>
#include <string>
#include <utility>

namespace sslab {

class Real {
 public:
  explicit Real(int bits = 53) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Real(double x, int bits) { mpfr_init2(v_, bits); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(long x, int bits) { mpfr_init2(v_, bits); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const mpz_class& x, int bits) { mpfr_init2(v_, bits); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(const mpq_class& x, int bits) { mpfr_init2(v_, bits); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(const Real& o, int bits) { mpfr_init2(v_, bits); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

 private:
  mpfr_t v_;
};

namespace detail {
inline int max_bits(const Real& a, const Real& b) { return a.bits() > b.bits() ? a.bits() : b.bits(); }
}  // namespace detail

inline Real operator+(const Real& a, const Real& b) { Real r(detail::max_bits(a, b)); mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
inline Real operator-(const Real& a, const Real& b) { Real r(detail::max_bits(a, b)); mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
inline Real operator*(const Real& a, const Real& b) { Real r(detail::max_bits(a, b)); mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
inline Real operator/(const Real& a, const Real& b) { Real r(detail::max_bits(a, b)); mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
inline Real operator-(const Real& a) { Real r(a.bits()); mpfr_neg(r.get(), a.get(), MPFR_RNDN); return r; }
inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pow(const Real& x, long n);
Real pi(int bits);
// log2|x| without overflow; -inf for zero
double log2_abs(const Real& x);
// hexadecimal mantissa/exponent string, exact
std::string to_hex(const Real& x);

class Complex {
 public:
  explicit Complex(int bits = 53) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(std::complex<double> z, int bits) : re(z.real(), bits), im(z.imag(), bits) {}
  Complex(const Complex& z, int bits) : re(z.re, bits), im(z.im, bits) {}
  Complex(const Complex&) = default;
  Complex(Complex&&) noexcept = default;
  Complex& operator=(const Complex&) = default;
  Complex& operator=(Complex&&) noexcept = default;

  int bits() const { return re.bits(); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }

  Real re;
  Real im;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator/(const Complex& a, const Complex& b);

Real abs(const Complex& z);
Complex conj(const Complex& z);
// e^{z}
Complex exp(const Complex& z);
// e^{i t} for real t
Complex expi(const Real& t);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex sinh(const Complex& z);
Complex cosh(const Complex& z);
// principal branch
Complex sqrt(const Complex& z);
// z^n by binary exponentiation, n >= 0
Complex pow(const Complex& z, unsigned long n);
double log2_abs(const Complex& z);

// Throws Error(overflow) if z is not finite.
const Complex& ensure_finite(const Complex& z, const char* what);

// Running log2 of a sum of magnitudes; avoids double overflow.
class Log2Sum {
 public:
  void add(double log2_mag);
  double value() const { return v_; }

 private:
  double v_ = -std::numeric_limits<double>::infinity();
};

}  // namespace sslab
