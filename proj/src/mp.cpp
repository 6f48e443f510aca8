#include "sslab/mp.hpp"

#include <cmath>
#include <cstdlib>
#include <memory>

#include "sslab/error.hpp"

namespace sslab {

Real abs(const Real& x) { Real r(x.bits()); mpfr_abs(r.get(), x.get(), MPFR_RNDN); return r; }
Real sqrt(const Real& x) { Real r(x.bits()); mpfr_sqrt(r.get(), x.get(), MPFR_RNDN); return r; }
Real exp(const Real& x) { Real r(x.bits()); mpfr_exp(r.get(), x.get(), MPFR_RNDN); return r; }
Real log(const Real& x) { Real r(x.bits()); mpfr_log(r.get(), x.get(), MPFR_RNDN); return r; }
Real sin(const Real& x) { Real r(x.bits()); mpfr_sin(r.get(), x.get(), MPFR_RNDN); return r; }
Real cos(const Real& x) { Real r(x.bits()); mpfr_cos(r.get(), x.get(), MPFR_RNDN); return r; }
Real pow(const Real& x, long n) { Real r(x.bits()); mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN); return r; }
Real pi(int bits) { Real r(bits); mpfr_const_pi(r.get(), MPFR_RNDN); return r; }

double log2_abs(const Real& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string to_hex(const Real& x) {
  if (x.is_zero()) return x.sign() < 0 ? "-0x0p+0" : "0x0p+0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", x.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

Complex operator*(const Complex& a, const Complex& b) {
  int bits = detail::max_bits(a.re, b.re);
  Complex r(bits);
  Real t(bits);
  mpfr_mul(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
  mpfr_mul(r.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
  return r;
}

Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }

Complex operator/(const Complex& a, const Complex& b) {
  Real d = b.re * b.re + b.im * b.im;
  Complex num = a * conj(b);
  return Complex(num.re / d, num.im / d);
}

Real abs(const Complex& z) {
  Real r(z.bits());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Complex expi(const Real& t) {
  Complex r(t.bits());
  mpfr_sin_cos(r.im.get(), r.re.get(), t.get(), MPFR_RNDN);
  return r;
}

Complex exp(const Complex& z) {
  Complex r = expi(z.im);
  if (z.re.is_zero()) return r;
  Real m = exp(z.re);
  r.re *= m;
  r.im *= m;
  return r;
}

namespace {
void sinh_cosh(const Real& x, Real& sh, Real& ch) { mpfr_sinh_cosh(sh.get(), ch.get(), x.get(), MPFR_RNDN); }
}  // namespace

// sin(x+iy) = sin x cosh y + i cos x sinh y
Complex sin(const Complex& z) {
  int bits = z.bits();
  Real s(bits), c(bits), sh(bits), ch(bits);
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
  sinh_cosh(z.im, sh, ch);
  return Complex(s * ch, c * sh);
}

// cos(x+iy) = cos x cosh y - i sin x sinh y
Complex cos(const Complex& z) {
  int bits = z.bits();
  Real s(bits), c(bits), sh(bits), ch(bits);
  mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
  sinh_cosh(z.im, sh, ch);
  return Complex(c * ch, -(s * sh));
}

// sinh(x+iy) = sinh x cos y + i cosh x sin y
Complex sinh(const Complex& z) {
  int bits = z.bits();
  Real s(bits), c(bits), sh(bits), ch(bits);
  mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
  sinh_cosh(z.re, sh, ch);
  return Complex(sh * c, ch * s);
}

Complex cosh(const Complex& z) {
  int bits = z.bits();
  Real s(bits), c(bits), sh(bits), ch(bits);
  mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
  sinh_cosh(z.re, sh, ch);
  return Complex(ch * c, sh * s);
}

Complex sqrt(const Complex& z) {
  int bits = z.bits();
  if (z.im.is_zero()) {
    if (z.re.sign() >= 0) return Complex(sqrt(z.re), Real(bits));
    Real r = sqrt(-z.re);
    return Complex(Real(bits), mpfr_signbit(z.im.get()) ? -r : r);  // branch cut follows the zero's sign
  }
  // w = sqrt((|z| + |x|)/2); stable form
  Real m = abs(z);
  Real w = sqrt((m + abs(z.re)) / Real(2L, bits));
  Real two_w = w * Real(2L, bits);
  if (z.re.sign() >= 0) return Complex(w, z.im / two_w);
  Real im = z.im.sign() >= 0 ? w : -w;
  return Complex(abs(z.im) / two_w, im);
}

Complex pow(const Complex& z, unsigned long n) {
  Complex result(Real(1L, z.bits()), Real(z.bits()));
  Complex base = z;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

double log2_abs(const Complex& z) {
  double a = log2_abs(z.re), b = log2_abs(z.im);
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
}

const Complex& ensure_finite(const Complex& z, const char* what) {
  if (!z.is_finite()) fail(Errc::overflow, std::string(what) + ": non-finite value");
  return z;
}

void Log2Sum::add(double l) {
  if (std::isinf(l) && l < 0) return;
  if (std::isinf(v_) && v_ < 0) { v_ = l; return; }
  double hi = std::max(v_, l), lo = std::min(v_, l);
  v_ = hi + std::log2(1.0 + std::exp2(lo - hi));
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::domain: return "domain";
    case Errc::precision: return "precision";
    case Errc::singular_time: return "singular_time";
    case Errc::ambiguous: return "ambiguous";
    case Errc::glue: return "glue";
    case Errc::degenerate: return "degenerate";
    case Errc::parse: return "parse";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::overflow: return "overflow";
  }
  return "unknown";
}

}  // namespace sslab
