#include "hpchain/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace hpchain::linalg {

LogValue log_det(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("log_det: matrix must be square");
  if (a.rows() == 0) return LogValue::one();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::MatrixXd& packed = lu.matrixLU();
  int sign = static_cast<int>(lu.permutationP().determinant());
  double ln = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double pivot = packed(i, i);
    if (pivot == 0.0 || !std::isfinite(pivot)) return LogValue::zero();
    if (pivot < 0.0) sign = -sign;
    ln += std::log(std::fabs(pivot));
  }
  return LogValue::from_log(ln, sign);
}

ComplexLogValue log_det(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("log_det: matrix must be square");
  if (a.rows() == 0) return {{1.0, 0.0}, 0.0};
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const Eigen::MatrixXcd& packed = lu.matrixLU();
  std::complex<double> phase(lu.permutationP().determinant(), 0.0);
  double ln = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const std::complex<double> pivot = packed(i, i);
    const double modulus = std::abs(pivot);
    if (modulus == 0.0 || !std::isfinite(modulus)) return {};
    phase *= pivot / modulus;
    ln += std::log(modulus);
  }
  return {phase / std::abs(phase), ln};
}

}  // namespace hpchain::linalg
