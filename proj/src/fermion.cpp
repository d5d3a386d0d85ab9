#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "hpchain/chain.hpp"
#include "hpchain/linalg.hpp"

namespace hpchain::chain {

double DispersionModel::operator()(double k) const {
  double e = 0.0;
  for (std::size_t n = 0; n < cos_coefficients.size(); ++n)
    e += cos_coefficients[n] * std::cos(static_cast<double>(n) * k);
  return e;
}

DispersionModel DispersionModel::from_couplings(std::span<const double> couplings) {
  DispersionModel model;
  model.cos_coefficients.assign(couplings.size() + 1, 0.0);
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    const auto n = static_cast<double>(i + 1);
    const double sign = (i + 1) % 2 == 0 ? 1.0 : -1.0;
    model.cos_coefficients[i + 1] = -sign * couplings[i] / n;
  }
  return model;
}

ScaledKernel fermion_kernel(const DispersionModel& dispersion, int max_distance, LatticeSize size,
                            double beta) {
  if (max_distance < 0) throw std::invalid_argument("fermion_kernel: negative distance");
  if (!std::isfinite(beta)) throw std::invalid_argument("fermion_kernel: non-finite beta");
  for (double c : dispersion.cos_coefficients)
    if (!std::isfinite(c)) throw std::invalid_argument("fermion_kernel: non-finite dispersion");

  int nodes = 0;
  if (size.is_infinite()) {
    double bandwidth = 0.0;
    for (std::size_t m = 1; m < dispersion.cos_coefficients.size(); ++m)
      bandwidth += static_cast<double>(m) * std::fabs(beta * dispersion.cos_coefficients[m]);
    const auto need = static_cast<unsigned long>(8.0 * (max_distance + 1 + std::ceil(bandwidth)));
    nodes = static_cast<int>(std::max(256UL, std::bit_ceil(need)));
  } else {
    nodes = size.sites();
  }

  std::vector<double> exponent(static_cast<std::size_t>(nodes));
  std::vector<double> momentum(static_cast<std::size_t>(nodes));
  for (int q = 0; q < nodes; ++q) {
    const double k = 2.0 * std::numbers::pi * q / nodes;
    momentum[static_cast<std::size_t>(q)] = k;
    exponent[static_cast<std::size_t>(q)] = -beta * dispersion(k);
  }
  ScaledKernel kernel;
  kernel.log_scale = *std::max_element(exponent.begin(), exponent.end());
  kernel.values.resize(static_cast<std::size_t>(max_distance) + 1);
  for (int d = 0; d <= max_distance; ++d) {
    double sum = 0.0;
    for (int q = 0; q < nodes; ++q)
      sum += std::cos(momentum[static_cast<std::size_t>(q)] * d) *
             std::exp(exponent[static_cast<std::size_t>(q)] - kernel.log_scale);
    kernel.values[static_cast<std::size_t>(d)] = sum / nodes;
  }
  return kernel;
}

LogValue fermion_amplitude(const DispersionModel& dispersion, int n, LatticeSize size, double beta) {
  if (n < 1) throw std::invalid_argument("fermion_amplitude: need N >= 1");
  if (!size.is_infinite() && n > size.sites())
    throw std::invalid_argument("fermion_amplitude: need N <= L");
  const ScaledKernel kernel = fermion_kernel(dispersion, n - 1, size, beta);
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) m(r, s) = kernel.values[static_cast<std::size_t>(std::abs(r - s))];
  return linalg::log_det(m) * LogValue::from_log(n * kernel.log_scale);
}

}  // namespace hpchain::chain
