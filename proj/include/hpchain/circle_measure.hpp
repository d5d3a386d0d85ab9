#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hpchain/log_value.hpp"

namespace hpchain {

// A positive discrete measure on the unit circle: nodes e^{i theta_m} with
// weights exp(log_weight_m). Toeplitz entries are Sum_m w_m e^{i (j-k) theta_m}.
class CircleMeasure {
 public:
  CircleMeasure(std::vector<double> theta, std::vector<double> log_weight);

  // theta_m = 2 pi (m + offset) / nodes, weight exp{Sum_n (J_n/n) cos(n theta_m)} / nodes.
  static CircleMeasure from_couplings(std::span<const double> couplings, int nodes, double offset);

  // Node count that resolves Toeplitz determinants up to the given size.
  static int nodes_for(int degree, std::span<const double> couplings);

  std::size_t size() const { return theta_.size(); }
  std::span<const double> theta() const { return theta_; }
  std::span<const double> log_weight() const { return log_weight_; }
  double max_log_weight() const { return max_log_weight_; }

 private:
  std::vector<double> theta_;
  std::vector<double> log_weight_;
  double max_log_weight_;
};

// Orthonormal polynomials of a CircleMeasure built by Arnoldi iteration on
// multiplication by z, with a second Gram-Schmidt pass at every step.
// Assumes a measure symmetric under theta -> -theta (real moments).
class SzegoBasis {
 public:
  SzegoBasis(const CircleMeasure& measure, int degree);

  int degree() const { return degree_; }

  // ln ||Phi_k|| for the monic orthogonal polynomial Phi_k.
  double log_norm(int k) const { return log_norm_.at(static_cast<std::size_t>(k)); }

  // ln of the n x n Toeplitz determinant of the measure (n <= degree).
  LogValue toeplitz_det(int n) const;

  // <phi_k, z^power> in the measure, phi_k the orthonormal polynomial.
  LogValue projection(int k, long power) const;

 private:
  const CircleMeasure* measure_;
  int degree_;
  double half_shift_;
  Eigen::VectorXcd root_weight_;
  Eigen::MatrixXcd basis_;
  std::vector<double> log_norm_;
};

}  // namespace hpchain
