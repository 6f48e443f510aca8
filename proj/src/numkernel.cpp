#include "sslab/numkernel.hpp"

#include <algorithm>
#include <cmath>

namespace sslab::numkernel {

void PrecisionPolicy::validate() const {
  if (mode == Mode::fixed && fixed_bits < kMinBits)
    fail(Errc::invalid_argument, "fixed_bits must be at least 53");
  if (mode == Mode::fixed && fixed_bits > kMaxBits)
    fail(Errc::invalid_argument, "fixed_bits exceeds the supported maximum");
  if (guard_bits < 32) fail(Errc::invalid_argument, "guard_bits must be at least 32");
}

mpz_class binomial(unsigned long n, unsigned long k) {
  if (k > n) fail(Errc::domain, "binomial: k > n");
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

int required_bits(int n, double log2_term_scale, const PrecisionPolicy& policy) {
  if (policy.mode == PrecisionPolicy::Mode::fixed) return policy.fixed_bits;
  double budget = std::ceil(static_cast<double>(n) * std::max(0.0, log2_term_scale));
  double bits = budget + policy.guard_bits;
  if (bits > kMaxBits) throw PrecisionError(static_cast<int>(bits - kMaxBits), "required width exceeds maximum");
  return std::max(kMinBits, static_cast<int>(bits));
}

double guard_tolerance(int slack_bits, const PrecisionPolicy& policy) {
  return std::ldexp(1.0, slack_bits - policy.guard_bits);
}

Evaluated adaptive_sum(int n, double apriori_cancel_bits, const PrecisionPolicy& policy,
                       const std::function<SumOutcome(int)>& eval) {
  n = std::max(n, 1);
  double slack = std::log2(static_cast<double>(n) + 1.0) + 4.0;
  double cancel = std::max(0.0, std::isfinite(apriori_cancel_bits) ? apriori_cancel_bits : 0.0);

  if (policy.mode == PrecisionPolicy::Mode::fixed) {
    int need = static_cast<int>(std::ceil(cancel + slack)) + kMinBits;
    if (need > policy.fixed_bits)
      throw PrecisionError(need - policy.fixed_bits,
                           "fixed precision " + std::to_string(policy.fixed_bits) + " bits too small");
    SumOutcome out = eval(policy.fixed_bits);
    return {std::move(out.value), policy.fixed_bits};
  }

  int bits = required_bits(n, (cancel + slack) / n, policy);
  bool prev_noise = false;
  for (int pass = 0;; ++pass) {
    SumOutcome out = eval(bits);
    ensure_finite(out.value, "sum");
    if (!std::isfinite(out.log2_magnitude)) return {std::move(out.value), bits};  // every term vanished
    double observed = out.value.is_zero() ? bits : out.log2_magnitude - log2_abs(out.value);
    // a value at rounding noise on two widths is a zero, accurate to 2^{mass-bits} absolute
    bool noise = observed >= bits - slack;
    if (noise && prev_noise) return {std::move(out.value), bits};
    prev_noise = noise;
    int need = required_bits(n, (std::max(0.0, observed) + slack) / n, policy);
    if (need <= bits) return {std::move(out.value), bits};
    if (pass >= 3)
      throw PrecisionError(need - bits, "cancellation did not settle after refinement");
    bits = std::max(need, bits + 16);
    if (bits > kMaxBits) throw PrecisionError(bits - kMaxBits, "required width exceeds maximum");
  }
}

}  // namespace sslab::numkernel
