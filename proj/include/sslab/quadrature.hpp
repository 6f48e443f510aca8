#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "sslab/mp.hpp"

namespace sslab::quadrature {

struct Rule {
  std::vector<Real> nodes;    // on [-1, 1], ascending
  std::vector<Real> weights;
};

// Gauss-Legendre rule, cached per (n, bits).
std::shared_ptr<const Rule> gauss_legendre(int n, int bits);

// Normalised bump rule on [0,1]: offsets s_j and weights W_j with sum W_j = 1,
// W_j proportional to w_j exp(-1/(1-t_j^2)).
std::shared_ptr<const Rule> bump_rule(int n, int bits);

// Straight-segment integral from a to b of f, composite Gauss-Legendre with panel doubling.
Complex integrate(const std::function<Complex(const Complex&)>& f, const Complex& a, const Complex& b,
                  int bits);

}  // namespace sslab::quadrature
