#pragma once

#include <complex>

#include <Eigen/Dense>

#include "hpchain/log_value.hpp"

namespace hpchain::linalg {

struct ComplexLogValue {
  std::complex<double> phase{0.0, 0.0};  // unit modulus, or zero for a zero value
  double ln_magnitude = 0.0;

  bool is_zero() const { return phase == std::complex<double>(0.0, 0.0); }
};

// Partial-pivot LU determinant, accumulated in the log domain.
LogValue log_det(const Eigen::MatrixXd& a);
ComplexLogValue log_det(const Eigen::MatrixXcd& a);

}  // namespace hpchain::linalg
