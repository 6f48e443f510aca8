#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sslab/error.hpp"
#include "sslab/mp.hpp"

namespace sslab::numkernel {

inline constexpr int kMinBits = 53;
inline constexpr int kMaxBits = 1 << 20;

struct PrecisionPolicy {
  enum class Mode { automatic, fixed };
  Mode mode = Mode::automatic;
  int fixed_bits = 256;
  int guard_bits = 64;

  static PrecisionPolicy automatic_with(int guard = 64) { return {Mode::automatic, 256, guard}; }
  static PrecisionPolicy fixed_at(int bits, int guard = 64) { return {Mode::fixed, bits, guard}; }
  void validate() const;
};

mpz_class binomial(unsigned long n, unsigned long k);

int required_bits(int n, double log2_term_scale, const PrecisionPolicy& policy);

// Result of a cancellation-prone sum evaluated at some width.
struct SumOutcome {
  Complex value;
  double log2_magnitude;  // log2 of the sum of |terms| (rounding-error carrying mass)
};

struct Evaluated {
  Complex value;
  int bits;
};

// Runs eval(bits) with a budget sized from the a-priori cancellation estimate,
// then refines while the observed cancellation exceeds what the width covered.
Evaluated adaptive_sum(int n, double apriori_cancel_bits, const PrecisionPolicy& policy,
                       const std::function<SumOutcome(int)>& eval);

// 2^{slack - guard}: relative tolerance for identities checked at net guard width.
double guard_tolerance(int slack_bits, const PrecisionPolicy& policy);

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

enum class Named { exp, sin, cos, sinh, cosh, gaussian };

struct QComplex {
  mpq_class re, im;
};

// Coefficients are kept as exact rationals so antiderivatives and products stay exact.
struct Piece {
  double end;  // +inf for unbounded last piece
  std::vector<QComplex> coeffs;  // ascending degree
};

std::vector<QComplex> to_rational(const std::vector<std::complex<double>>& c);

class FunctionSpec {
 public:
  enum class Kind { piecewise_poly, exp_linear, named, convolved, primitive, product_with_identity };

  static FunctionSpec piecewise_poly(std::vector<Piece> pieces, Interval domain = {});
  static FunctionSpec polynomial(std::vector<std::complex<double>> coeffs, Interval domain = {});
  static FunctionSpec exp_linear(std::complex<double> lambda, Interval domain = {});
  static FunctionSpec named(Named name, Interval domain = {});
  static FunctionSpec convolved(const FunctionSpec& inner, double support, int nodes);
  static FunctionSpec primitive(const FunctionSpec& inner, double a0);
  static FunctionSpec product_with_identity(const FunctionSpec& inner);

  static FunctionSpec from_json(const std::string& text);
  std::string to_json() const;

  Kind kind() const { return kind_; }
  const Interval& domain() const { return domain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::complex<double> lambda() const { return lambda_; }
  Named name() const { return name_; }
  const FunctionSpec& inner() const { return *inner_; }
  double support() const { return support_; }
  int nodes() const { return nodes_; }
  double a0() const { return a0_; }

  // Equivalent piecewise polynomial, when one exists (product/primitive of polynomials).
  const std::optional<std::vector<Piece>>& as_piecewise() const { return resolved_; }
  bool is_real() const;

  Complex eval(const Complex& x, int bits) const;
  Complex eval(double x, int bits) const;

 private:
  Kind kind_ = Kind::piecewise_poly;
  Interval domain_;
  std::vector<Piece> pieces_;
  std::complex<double> lambda_{0, 0};
  Named name_ = Named::exp;
  std::shared_ptr<const FunctionSpec> inner_;
  double support_ = 0;
  int nodes_ = 0;
  double a0_ = 0;
  std::optional<std::vector<Piece>> resolved_;
  // continuous antiderivative of resolved_ (arbitrary constant)
  std::shared_ptr<const std::vector<Piece>> anti_;

  void resolve_pieces(std::vector<Piece> p);
  std::optional<Complex> closed_antiderivative(const Complex& x, int bits) const;
};

Complex eval_function(const FunctionSpec& f, const Complex& x, int bits);

const char* named_string(Named n);

}  // namespace sslab::numkernel
