#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "sslab/numkernel.hpp"
#include "sslab/quadrature.hpp"

namespace sslab::numkernel {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex to_complex(const QComplex& q, int bits) { return Complex(Real(q.re, bits), Real(q.im, bits)); }

Complex horner(const std::vector<QComplex>& c, const Complex& x, int bits) {
  Complex acc = to_complex(c.back(), bits);
  Complex xb(x, bits);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc = acc * xb;
    acc += to_complex(c[k], bits);
  }
  return acc;
}

QComplex horner_exact(const std::vector<QComplex>& c, const mpq_class& x) {
  QComplex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc.re = acc.re * x + c[k].re;
    acc.im = acc.im * x + c[k].im;
  }
  return acc;
}

std::vector<QComplex> integrate_poly(const std::vector<QComplex>& c) {
  std::vector<QComplex> out(c.size() + 1, QComplex{0, 0});
  for (std::size_t k = 0; k < c.size(); ++k) {
    mpq_class d(static_cast<long>(k + 1));
    out[k + 1] = QComplex{c[k].re / d, c[k].im / d};
  }
  return out;
}

void trim(std::vector<QComplex>& c) {
  while (c.size() > 1 && c.back().re == 0 && c.back().im == 0) c.pop_back();
}

std::size_t piece_index(const std::vector<Piece>& pieces, double x) {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (x < pieces[i].end) return i;
  if (x == pieces.back().end) return pieces.size() - 1;
  fail(Errc::domain, "argument " + std::to_string(x) + " beyond last piece");
}

// Antiderivative continuous across breakpoints; constant fixed by the first piece.
std::vector<Piece> antiderivative(const std::vector<Piece>& pieces) {
  std::vector<Piece> out;
  QComplex k{0, 0};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Piece p{pieces[i].end, integrate_poly(pieces[i].coeffs)};
    if (i > 0) {
      mpq_class e(pieces[i - 1].end);
      QComplex left = horner_exact(out.back().coeffs, e);
      QComplex right = horner_exact(p.coeffs, e);
      k = QComplex{left.re - right.re, left.im - right.im};
      p.coeffs[0].re += k.re;
      p.coeffs[0].im += k.im;
    }
    out.push_back(std::move(p));
  }
  return out;
}

Interval parse_domain(const json& j) {
  Interval d;
  if (!j.contains("domain") || j["domain"].is_null()) return d;
  const json& dj = j["domain"];
  if (!dj.is_array() || dj.size() != 2) fail(Errc::parse, "domain must be [lo, hi]");
  if (!dj[0].is_null()) d.lo = dj[0].get<double>();
  if (!dj[1].is_null()) d.hi = dj[1].get<double>();
  if (!(d.lo < d.hi)) fail(Errc::parse, "domain must satisfy lo < hi");
  return d;
}

std::complex<double> parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(Errc::parse, "complex values are [re, im] pairs");
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

Named parse_named(const std::string& s) {
  static const std::pair<const char*, Named> table[] = {
      {"exp", Named::exp},   {"sin", Named::sin},   {"cos", Named::cos},
      {"sinh", Named::sinh}, {"cosh", Named::cosh}, {"gaussian", Named::gaussian}};
  for (auto& [k, v] : table)
    if (s == k) return v;
  fail(Errc::parse, "unknown named function '" + s + "'");
}

FunctionSpec parse(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(Errc::parse, "function spec needs a string 'kind'");
  std::string kind = j["kind"];
  auto inner = [&]() {
    if (!j.contains("inner")) fail(Errc::parse, kind + " needs 'inner'");
    return parse(j["inner"]);
  };
  if (kind == "piecewise_poly") {
    if (!j.contains("pieces") || !j["pieces"].is_array()) fail(Errc::parse, "piecewise_poly needs 'pieces'");
    std::vector<Piece> pieces;
    for (const json& pj : j["pieces"]) {
      Piece p;
      p.end = (!pj.contains("end") || pj["end"].is_null()) ? kInf : pj["end"].get<double>();
      if (!pj.contains("coeffs") || !pj["coeffs"].is_array()) fail(Errc::parse, "piece needs 'coeffs'");
      std::vector<std::complex<double>> c;
      for (const json& cj : pj["coeffs"]) c.push_back(parse_complex(cj));
      p.coeffs = to_rational(c);
      pieces.push_back(std::move(p));
    }
    return FunctionSpec::piecewise_poly(std::move(pieces), parse_domain(j));
  }
  if (kind == "exp_linear") {
    if (!j.contains("lambda")) fail(Errc::parse, "exp_linear needs 'lambda'");
    return FunctionSpec::exp_linear(parse_complex(j["lambda"]), parse_domain(j));
  }
  if (kind == "named") {
    if (!j.contains("name") || !j["name"].is_string()) fail(Errc::parse, "named needs 'name'");
    return FunctionSpec::named(parse_named(j["name"]), parse_domain(j));
  }
  if (kind == "convolved") {
    double support = j.value("support", 0.0);
    int nodes = j.value("nodes", 64);
    return FunctionSpec::convolved(inner(), support, nodes);
  }
  if (kind == "primitive") return FunctionSpec::primitive(inner(), j.value("a0", 0.0));
  if (kind == "product_with_identity") return FunctionSpec::product_with_identity(inner());
  fail(Errc::parse, "unknown function kind '" + kind + "'");
}

json domain_json(const Interval& d) {
  json lo = std::isfinite(d.lo) ? json(d.lo) : json(nullptr);
  json hi = std::isfinite(d.hi) ? json(d.hi) : json(nullptr);
  return json::array({lo, hi});
}

json to_json_value(const FunctionSpec& f) {
  json j;
  switch (f.kind()) {
    case FunctionSpec::Kind::piecewise_poly: {
      j["kind"] = "piecewise_poly";
      json pieces = json::array();
      for (const Piece& p : f.pieces()) {
        json c = json::array();
        for (const QComplex& q : p.coeffs) c.push_back(json::array({q.re.get_d(), q.im.get_d()}));
        pieces.push_back({{"end", std::isfinite(p.end) ? json(p.end) : json(nullptr)}, {"coeffs", c}});
      }
      j["pieces"] = pieces;
      break;
    }
    case FunctionSpec::Kind::exp_linear:
      j["kind"] = "exp_linear";
      j["lambda"] = complex_json(f.lambda());
      break;
    case FunctionSpec::Kind::named:
      j["kind"] = "named";
      j["name"] = named_string(f.name());
      break;
    case FunctionSpec::Kind::convolved:
      j["kind"] = "convolved";
      j["support"] = f.support();
      j["nodes"] = f.nodes();
      j["inner"] = to_json_value(f.inner());
      return j;
    case FunctionSpec::Kind::primitive:
      j["kind"] = "primitive";
      j["a0"] = f.a0();
      j["inner"] = to_json_value(f.inner());
      return j;
    case FunctionSpec::Kind::product_with_identity:
      j["kind"] = "product_with_identity";
      j["inner"] = to_json_value(f.inner());
      return j;
  }
  if (std::isfinite(f.domain().lo) || std::isfinite(f.domain().hi)) j["domain"] = domain_json(f.domain());
  return j;
}

void check_in_domain(const Interval& d, const Complex& x) {
  double r = x.re.to_double();
  if (!d.contains(r))
    fail(Errc::domain, "argument " + std::to_string(r) + " outside domain [" + std::to_string(d.lo) + ", " +
                           std::to_string(d.hi) + "]");
}

Complex eval_named(Named n, const Complex& x) {
  switch (n) {
    case Named::exp: return exp(x);
    case Named::sin: return sin(x);
    case Named::cos: return cos(x);
    case Named::sinh: return sinh(x);
    case Named::cosh: return cosh(x);
    case Named::gaussian: return exp(-(x * x));
  }
  fail(Errc::invalid_argument, "bad named function");
}

}  // namespace

std::vector<QComplex> to_rational(const std::vector<std::complex<double>>& c) {
  std::vector<QComplex> out;
  for (auto z : c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(Errc::parse, "non-finite coefficient");
    out.push_back(QComplex{mpq_class(z.real()), mpq_class(z.imag())});
  }
  return out;
}

const char* named_string(Named n) {
  switch (n) {
    case Named::exp: return "exp";
    case Named::sin: return "sin";
    case Named::cos: return "cos";
    case Named::sinh: return "sinh";
    case Named::cosh: return "cosh";
    case Named::gaussian: return "gaussian";
  }
  return "?";
}

void FunctionSpec::resolve_pieces(std::vector<Piece> p) {
  for (auto& piece : p) trim(piece.coeffs);
  anti_ = std::make_shared<const std::vector<Piece>>(antiderivative(p));
  resolved_ = std::move(p);
}

FunctionSpec FunctionSpec::piecewise_poly(std::vector<Piece> pieces, Interval domain) {
  if (pieces.empty()) fail(Errc::parse, "piecewise_poly needs at least one piece");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].coeffs.empty()) fail(Errc::parse, "every piece needs at least one coefficient");
    if (std::isnan(pieces[i].end)) fail(Errc::parse, "breakpoint is NaN");
    if (i + 1 < pieces.size() && !std::isfinite(pieces[i].end))
      fail(Errc::parse, "only the last piece may extend to +inf");
    if (i > 0 && !(pieces[i - 1].end < pieces[i].end)) fail(Errc::parse, "breakpoints must be strictly increasing");
  }
  FunctionSpec f;
  f.kind_ = Kind::piecewise_poly;
  f.domain_ = domain;
  f.domain_.hi = std::min(f.domain_.hi, pieces.back().end);
  if (!(f.domain_.lo < f.domain_.hi)) fail(Errc::parse, "empty domain");
  f.pieces_ = pieces;
  f.resolve_pieces(std::move(pieces));
  return f;
}

FunctionSpec FunctionSpec::polynomial(std::vector<std::complex<double>> coeffs, Interval domain) {
  if (coeffs.empty()) fail(Errc::parse, "polynomial needs at least one coefficient");
  return piecewise_poly({Piece{kInf, to_rational(coeffs)}}, domain);
}

FunctionSpec FunctionSpec::exp_linear(std::complex<double> lambda, Interval domain) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) fail(Errc::parse, "lambda must be finite");
  FunctionSpec f;
  f.kind_ = Kind::exp_linear;
  f.lambda_ = lambda;
  f.domain_ = domain;
  return f;
}

FunctionSpec FunctionSpec::named(Named name, Interval domain) {
  FunctionSpec f;
  f.kind_ = Kind::named;
  f.name_ = name;
  f.domain_ = domain;
  return f;
}

FunctionSpec FunctionSpec::convolved(const FunctionSpec& inner, double support, int nodes) {
  if (!(support > 0) || !std::isfinite(support)) fail(Errc::domain, "convolution support must be positive");
  if (nodes < 8) fail(Errc::domain, "convolution needs at least 8 quadrature nodes");
  const Interval& d = inner.domain();
  if (d.bounded() && !(support < (d.hi - d.lo) - 2.0))
    fail(Errc::domain, "convolution support must be smaller than R - 2");
  FunctionSpec f;
  f.kind_ = Kind::convolved;
  f.inner_ = std::make_shared<const FunctionSpec>(inner);
  f.support_ = support;
  f.nodes_ = nodes;
  f.domain_ = Interval{d.lo + support, d.hi};
  return f;
}

FunctionSpec FunctionSpec::primitive(const FunctionSpec& inner, double a0) {
  if (!std::isfinite(a0) || !inner.domain().contains(a0)) fail(Errc::domain, "primitive base point outside domain");
  FunctionSpec f;
  f.kind_ = Kind::primitive;
  f.inner_ = std::make_shared<const FunctionSpec>(inner);
  f.a0_ = a0;
  f.domain_ = inner.domain();
  if (inner.resolved_) {
    std::vector<Piece> p = *inner.anti_;
    QComplex at = horner_exact(p[piece_index(p, a0)].coeffs, mpq_class(a0));
    for (auto& piece : p) {
      piece.coeffs[0].re -= at.re;
      piece.coeffs[0].im -= at.im;
    }
    f.resolve_pieces(std::move(p));
  }
  return f;
}

FunctionSpec FunctionSpec::product_with_identity(const FunctionSpec& inner) {
  FunctionSpec f;
  f.kind_ = Kind::product_with_identity;
  f.inner_ = std::make_shared<const FunctionSpec>(inner);
  f.domain_ = inner.domain();
  if (inner.resolved_) {
    std::vector<Piece> p = *inner.resolved_;
    for (auto& piece : p) piece.coeffs.insert(piece.coeffs.begin(), QComplex{0, 0});
    f.resolve_pieces(std::move(p));
  }
  return f;
}

FunctionSpec FunctionSpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse, std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse(j);
  } catch (const json::exception& e) {
    fail(Errc::parse, std::string("malformed function spec: ") + e.what());
  }
}

std::string FunctionSpec::to_json() const { return to_json_value(*this).dump(); }

bool FunctionSpec::is_real() const {
  switch (kind_) {
    case Kind::piecewise_poly:
      for (auto& p : pieces_)
        for (auto& c : p.coeffs)
          if (c.im != 0) return false;
      return true;
    case Kind::exp_linear: return lambda_.imag() == 0;
    case Kind::named: return true;
    default: return inner_->is_real();
  }
}

std::optional<Complex> FunctionSpec::closed_antiderivative(const Complex& x, int bits) const {
  if (anti_) return horner((*anti_)[piece_index(*anti_, x.re.to_double())].coeffs, x, bits);
  switch (kind_) {
    case Kind::exp_linear: {
      if (lambda_ == std::complex<double>(0, 0)) return Complex(x, bits);
      Complex lam(lambda_, bits);
      return exp(lam * Complex(x, bits)) / lam;
    }
    case Kind::named: {
      Complex xb(x, bits);
      switch (name_) {
        case Named::exp: return exp(xb);
        case Named::sin: return -cos(xb);
        case Named::cos: return sin(xb);
        case Named::sinh: return cosh(xb);
        case Named::cosh: return sinh(xb);
        case Named::gaussian: {
          if (!x.im.is_zero()) return std::nullopt;
          Real e(bits);
          mpfr_erf(e.get(), Real(x.re, bits).get(), MPFR_RNDN);
          return Complex(e * sqrt(pi(bits)) / Real(2L, bits), Real(bits));
        }
      }
      return std::nullopt;
    }
    case Kind::convolved: {
      auto rule = quadrature::bump_rule(nodes_, bits + 8);
      Real eps(support_, bits + 8);
      Complex acc(bits + 8);
      for (std::size_t j = 0; j < rule->nodes.size(); ++j) {
        Complex shifted(x, bits + 8);
        shifted.re -= eps * rule->nodes[j];
        auto g = inner_->closed_antiderivative(shifted, bits + 8);
        if (!g) return std::nullopt;
        acc += *g * rule->weights[j];
      }
      return Complex(acc, bits);
    }
    default: return std::nullopt;
  }
}

Complex FunctionSpec::eval(double x, int bits) const { return eval(Complex(Real(x, bits), Real(bits)), bits); }

Complex FunctionSpec::eval(const Complex& x, int bits) const {
  check_in_domain(domain_, x);
  if (resolved_) return horner((*resolved_)[piece_index(*resolved_, x.re.to_double())].coeffs, x, bits);
  switch (kind_) {
    case Kind::exp_linear: return ensure_finite(exp(Complex(lambda_, bits) * Complex(x, bits)), "exp_linear");
    case Kind::named: return ensure_finite(eval_named(name_, Complex(x, bits)), "named function");
    case Kind::convolved: {
      int work = bits + 8;
      auto rule = quadrature::bump_rule(nodes_, work);
      Real eps(support_, work);
      Complex acc(work);
      for (std::size_t j = 0; j < rule->nodes.size(); ++j) {
        Complex shifted(x, work);
        shifted.re -= eps * rule->nodes[j];
        acc += inner_->eval(shifted, work) * rule->weights[j];
      }
      return Complex(acc, bits);
    }
    case Kind::primitive: {
      int work = bits + 8;
      Complex base(Real(a0_, work), Real(work));
      auto hi = inner_->closed_antiderivative(x, work);
      if (hi) {
        auto lo = inner_->closed_antiderivative(base, work);
        if (lo) return Complex(*hi - *lo, bits);
      }
      const FunctionSpec& in = *inner_;
      Complex v = quadrature::integrate([&](const Complex& t) { return in.eval(t, work); }, base, Complex(x, work),
                                        work);
      return Complex(v, bits);
    }
    case Kind::product_with_identity: {
      Complex v = inner_->eval(x, bits + 4) * Complex(x, bits + 4);
      return Complex(v, bits);
    }
    case Kind::piecewise_poly: break;
  }
  fail(Errc::invalid_argument, "unevaluable function spec");
}

Complex eval_function(const FunctionSpec& f, const Complex& x, int bits) {
  if (bits < kMinBits) fail(Errc::invalid_argument, "eval_function needs at least 53 bits");
  return ensure_finite(f.eval(x, bits), "eval_function");
}

}  // namespace sslab::numkernel
