#pragma once

#include <span>
#include <vector>

#include "hpchain/log_value.hpp"

namespace hpchain::quadrature {

inline constexpr int kGaussOrder = 16;

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Composite 16-point Gauss-Legendre rule with equal panels on [lo, hi].
Rule gauss_legendre(double lo, double hi, int panels);

// As gauss_legendre on [0, hi], with the first panel split geometrically
// into `levels` halvings toward 0.
Rule graded_gauss_legendre(double hi, int panels, int levels);

// ln Sum exp(x_i); -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> logs);

// Sum of signed terms held in log form.
LogValue log_sum(std::span<const LogValue> terms);

}  // namespace hpchain::quadrature
