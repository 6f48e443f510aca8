#pragma once

#include <complex>
#include <string>
#include <vector>

namespace sslab::regions {

inline constexpr double kBoundaryTol = 0x1p-20;

double lemniscate_value(double c, std::complex<double> z);

enum class Loop { left, right, outside, boundary };
const char* loop_name(Loop l);

// Throws Error(ambiguous) when the segment tests disagree.
Loop classify(double c, std::complex<double> z, int resolution = 64);

// max over (c, z) of Φ_c(z); every z must sit inside a loop for every c.
double q_constant(const std::vector<double>& c_range, const std::vector<std::complex<double>>& K,
                  int resolution = 64);

struct Disk {
  double center;
  double radius;
};

// Disk of W_A attached to an admissible shift a' of A = (lo, hi).
Disk wa_disk(double lo, double hi, double a_prime);
double wa_shift_offset(double lo, double hi, double a_prime);  // C(a')

bool wA_contains(double lo, double hi, std::complex<double> z, int samples = 4096);

}  // namespace sslab::regions
