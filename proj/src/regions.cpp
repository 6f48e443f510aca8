#include "sslab/regions.hpp"

#include <cmath>
#include <sstream>

#include "sslab/error.hpp"

namespace sslab::regions {

double lemniscate_value(double c, std::complex<double> z) {
  if (!(c > 0 && c < 1)) fail(Errc::domain, "lemniscate parameter c must lie in (0,1)");
  double r0 = std::abs(z), r1 = std::abs(1.0 - z);
  if (r0 == 0 || r1 == 0) return 0.0;
  return std::exp(c * std::log(r0 / c) + (1 - c) * std::log(r1 / (1 - c)));
}

const char* loop_name(Loop l) {
  switch (l) {
    case Loop::left: return "left";
    case Loop::right: return "right";
    case Loop::outside: return "outside";
    case Loop::boundary: return "boundary";
  }
  return "?";
}

namespace {

// Samples z -> target (target excluded at k = resolution only if it is a zero of Φ).
bool segment_inside(double c, std::complex<double> z, std::complex<double> target, int resolution) {
  // Re w = c meets {Φ <= 1} only at w = c, so a segment crossing it changes loop
  if ((z.real() - c) * (target.real() - c) < 0) return false;
  for (int k = 0; k <= resolution; ++k) {
    double t = static_cast<double>(k) / resolution;
    if (lemniscate_value(c, z + t * (target - z)) >= 1.0) return false;
  }
  return true;
}

}  // namespace

Loop classify(double c, std::complex<double> z, int resolution) {
  if (resolution < 16) fail(Errc::domain, "classification resolution must be >= 16");
  double phi = lemniscate_value(c, z);
  if (std::fabs(phi - 1) <= kBoundaryTol) return Loop::boundary;
  if (phi > 1) return Loop::outside;
  bool left = segment_inside(c, z, 0.0, resolution);
  bool right = segment_inside(c, z, 1.0, resolution);
  if (left && !right) return Loop::left;
  if (right && !left) return Loop::right;
  std::ostringstream os;
  os << "cannot classify z=(" << z.real() << "," << z.imag() << ") for c=" << c << " at resolution " << resolution;
  fail(Errc::ambiguous, os.str());
}

double q_constant(const std::vector<double>& c_range, const std::vector<std::complex<double>>& K, int resolution) {
  if (c_range.empty() || K.empty()) fail(Errc::domain, "q_constant needs parameters and points");
  double q = 0;
  std::ostringstream bad;
  int offenders = 0;
  for (double c : c_range) {
    for (auto z : K) {
      Loop l = classify(c, z, resolution);
      if (l != Loop::left && l != Loop::right) {
        if (offenders++ < 8) bad << " (c=" << c << ", z=" << z.real() << "+" << z.imag() << "i: " << loop_name(l) << ")";
        continue;
      }
      q = std::max(q, lemniscate_value(c, z));
    }
  }
  if (offenders > 0) fail(Errc::domain, std::to_string(offenders) + " point(s) not inside a loop:" + bad.str());
  return q;
}

double wa_shift_offset(double lo, double hi, double a_prime) {
  double r = hi - lo;
  return 1.0 - 2.0 * (a_prime - 1.0 - lo) / (r - 2.0);
}

Disk wa_disk(double lo, double hi, double a_prime) {
  if (!(hi - lo > 2)) fail(Errc::domain, "W_A needs an interval longer than 2");
  if (!(a_prime > lo + 1 && a_prime < hi - 1)) fail(Errc::domain, "shift a' not admissible");
  double center = a_prime + wa_shift_offset(lo, hi, a_prime);
  return {center, std::min(center - lo, hi - center)};
}

bool wA_contains(double lo, double hi, std::complex<double> z, int samples) {
  if (!(hi - lo > 2)) fail(Errc::domain, "W_A needs an interval longer than 2");
  if (samples < 2) fail(Errc::domain, "W_A sweep needs at least 2 samples");
  double a_lo = lo + 1, a_hi = hi - 1;
  auto margin = [&](double ap) {
    Disk d = wa_disk(lo, hi, ap);
    return d.radius - std::abs(z - d.center);
  };
  double best = -INFINITY, best_ap = 0;
  double step = (a_hi - a_lo) / (samples + 1);
  for (int i = 1; i <= samples; ++i) {
    double ap = a_lo + i * step;
    double m = margin(ap);
    if (m > best) {
      best = m;
      best_ap = ap;
    }
  }
  if (best >= 0) return true;
  // golden-section refinement in the bracketing cell
  double l = std::max(a_lo + 1e-15, best_ap - step), r = std::min(a_hi - 1e-15, best_ap + step);
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 100 && r - l > 1e-15; ++it) {
    double m1 = r - g * (r - l), m2 = l + g * (r - l);
    if (margin(m1) < margin(m2)) l = m1;
    else r = m2;
  }
  return margin((l + r) / 2) >= 0;
}

}  // namespace sslab::regions
