#include "hpchain/circle_measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hpchain {

CircleMeasure::CircleMeasure(std::vector<double> theta, std::vector<double> log_weight)
    : theta_(std::move(theta)), log_weight_(std::move(log_weight)) {
  if (theta_.empty() || theta_.size() != log_weight_.size())
    throw std::invalid_argument("CircleMeasure: nodes and weights must match and be non-empty");
  max_log_weight_ = *std::max_element(log_weight_.begin(), log_weight_.end());
  if (!std::isfinite(max_log_weight_)) throw std::invalid_argument("CircleMeasure: bad weights");
}

CircleMeasure CircleMeasure::from_couplings(std::span<const double> couplings, int nodes,
                                            double offset) {
  if (nodes < 1) throw std::invalid_argument("CircleMeasure: need at least one node");
  std::vector<double> theta(static_cast<std::size_t>(nodes));
  std::vector<double> log_weight(static_cast<std::size_t>(nodes));
  const double log_m = std::log(static_cast<double>(nodes));
  for (int m = 0; m < nodes; ++m) {
    const double t = 2.0 * std::numbers::pi * (m + offset) / nodes;
    double lw = -log_m;
    for (std::size_t n = 0; n < couplings.size(); ++n)
      lw += couplings[n] / static_cast<double>(n + 1) * std::cos(static_cast<double>(n + 1) * t);
    theta[static_cast<std::size_t>(m)] = t;
    log_weight[static_cast<std::size_t>(m)] = lw;
  }
  return CircleMeasure(std::move(theta), std::move(log_weight));
}

int CircleMeasure::nodes_for(int degree, std::span<const double> couplings) {
  double bandwidth = 0.0;
  for (std::size_t n = 0; n < couplings.size(); ++n) {
    if (couplings[n] == 0.0) continue;
    const double order = static_cast<double>(n + 1);
    const double c = std::fabs(couplings[n]) / order;
    bandwidth += order * (c + 10.0 * std::sqrt(c) + 20.0);
  }
  const auto need = static_cast<unsigned long>(2.0 * degree + std::ceil(bandwidth));
  return static_cast<int>(std::max(128UL, std::bit_ceil(need)));
}

SzegoBasis::SzegoBasis(const CircleMeasure& measure, int degree)
    : measure_(&measure), degree_(degree) {
  const auto m = static_cast<Eigen::Index>(measure.size());
  if (degree < 1 || degree >= m) throw std::invalid_argument("SzegoBasis: degree out of range");
  half_shift_ = 0.5 * measure.max_log_weight();

  root_weight_.resize(m);
  Eigen::VectorXcd z(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto s = static_cast<std::size_t>(i);
    root_weight_(i) = std::exp(0.5 * measure.log_weight()[s] - half_shift_);
    z(i) = std::polar(1.0, measure.theta()[s]);
  }

  basis_.resize(m, degree);
  log_norm_.assign(static_cast<std::size_t>(degree), -std::numeric_limits<double>::infinity());
  const double norm0 = root_weight_.norm();
  basis_.col(0) = root_weight_ / norm0;
  log_norm_[0] = std::log(norm0) + half_shift_;

  for (int n = 1; n < degree; ++n) {
    Eigen::VectorXcd v = z.cwiseProduct(basis_.col(n - 1));
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd h = basis_.leftCols(n).adjoint() * v;
      v.noalias() -= basis_.leftCols(n) * h;
    }
    const double rho = v.norm();
    if (!(rho > 0.0)) {
      basis_.rightCols(degree - n).setZero();
      break;
    }
    basis_.col(n) = v / rho;
    log_norm_[static_cast<std::size_t>(n)] = log_norm_[static_cast<std::size_t>(n - 1)] + std::log(rho);
  }
}

LogValue SzegoBasis::toeplitz_det(int n) const {
  if (n < 0 || n > degree_) throw std::invalid_argument("SzegoBasis: determinant size out of range");
  double ln = 0.0;
  for (int k = 0; k < n; ++k) ln += 2.0 * log_norm_[static_cast<std::size_t>(k)];
  return LogValue::from_log(ln);
}

LogValue SzegoBasis::projection(int k, long power) const {
  if (k < 0 || k >= degree_) throw std::invalid_argument("SzegoBasis: index out of range");
  std::complex<double> sum(0.0, 0.0);
  const auto theta = measure_->theta();
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
    const double phase = static_cast<double>(power) * theta[static_cast<std::size_t>(i)];
    sum += std::conj(basis_(i, k)) * root_weight_(i) * std::polar(1.0, phase);
  }
  return LogValue::from_value(sum.real()) * LogValue::from_log(half_shift_);
}

}  // namespace hpchain
