#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "hpchain/circle_measure.hpp"
#include "hpchain/linalg.hpp"
#include "hpchain/specfun.hpp"

using namespace hpchain;

namespace {

LogValue bessel_toeplitz_lu(int n, double j) {
  const std::vector<double> b = specfun::bessel_i_scaled_sequence(n, j);
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) m(r, s) = b[static_cast<std::size_t>(std::abs(r - s))];
  return linalg::log_det(m) * LogValue::from_log(n * j);
}

}  // namespace

TEST_CASE("log_det agrees with the direct determinant and tracks the sign") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 6;
    Eigen::MatrixXd m(n, n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) m(r, s) = gauss(rng);
    const double direct = m.determinant();
    CHECK(linalg::log_det(m).value() == doctest::Approx(direct).epsilon(1e-12));
  }
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(linalg::log_det(swap).sign == -1);
  CHECK(linalg::log_det(Eigen::MatrixXd(Eigen::MatrixXd::Zero(3, 3))).is_zero());
  CHECK(linalg::log_det(Eigen::MatrixXd(0, 0)).value() == 1.0);
}

TEST_CASE("complex log_det phase and magnitude") {
  Eigen::MatrixXcd m(2, 2);
  m << std::complex<double>(1, 1), 2.0, 0.5, std::complex<double>(0, 3);
  const std::complex<double> direct = m.determinant();
  const linalg::ComplexLogValue d = linalg::log_det(m);
  CHECK(std::abs(d.phase * std::exp(d.ln_magnitude) - direct) < 1e-13);
}

TEST_CASE("orthogonal-polynomial determinant matches LU for well-conditioned cases") {
  for (int n : {1, 2, 5, 8})
    for (double j : {0.0, 0.3, 1.0, 3.0}) {
      const double c[] = {j};
      const CircleMeasure mu = CircleMeasure::from_couplings(c, CircleMeasure::nodes_for(n, c), 0.0);
      const LogValue opuc = SzegoBasis(mu, n).toeplitz_det(n);
      INFO("n=" << n << " J=" << j);
      CHECK(opuc.ln_magnitude == doctest::Approx(bessel_toeplitz_lu(n, j).ln_magnitude).epsilon(1e-12));
    }
}

TEST_CASE("orthogonal-polynomial determinant in the ill-conditioned regime") {
  // 300-digit reference values of ln det[I_{j-k}(J)]
  const double c1[] = {40.0};
  const CircleMeasure m1 = CircleMeasure::from_couplings(c1, CircleMeasure::nodes_for(16, c1), 0.0);
  CHECK(SzegoBasis(m1, 16).toeplitz_det(16).ln_magnitude == doctest::Approx(330.38218035946437).epsilon(1e-13));
  const double c2[] = {64.0};
  const CircleMeasure m2 = CircleMeasure::from_couplings(c2, CircleMeasure::nodes_for(24, c2), 0.0);
  CHECK(SzegoBasis(m2, 24).toeplitz_det(24).ln_magnitude == doctest::Approx(821.1496682007244).epsilon(1e-13));
}

TEST_CASE("projection gives the off-diagonal Gram determinant") {
  const double c[] = {1.3, 0.4};
  for (int n : {1, 2, 4})
    for (int p : {1, 2, 3}) {
      const CircleMeasure mu = CircleMeasure::from_couplings(c, CircleMeasure::nodes_for(n + p, c), 0.0);
      const SzegoBasis basis(mu, n);
      const LogValue structured = basis.toeplitz_det(n - 1) * LogValue::from_log(basis.log_norm(n - 1)) *
                                  basis.projection(n - 1, n - 1 + p);
      const std::vector<double> g = specfun::generalized_bessel_scaled_sequence(n + p, c);
      Eigen::MatrixXd m(n, n);
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const int col = s == n - 1 ? n - 1 + p : s;
          m(r, s) = g[static_cast<std::size_t>(std::abs(r - col))];
        }
      const LogValue lu = linalg::log_det(m) * LogValue::from_log(n * specfun::coupling_log_scale(c));
      INFO("n=" << n << " p=" << p);
      CHECK(structured.sign == lu.sign);
      CHECK(structured.ln_magnitude == doctest::Approx(lu.ln_magnitude).epsilon(1e-11));
    }
}

TEST_CASE("measure and basis preconditions") {
  CHECK_THROWS_AS(CircleMeasure({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(CircleMeasure({0.0}, {0.0, 1.0}), std::invalid_argument);
  const double c[] = {1.0};
  const CircleMeasure mu = CircleMeasure::from_couplings(c, 8, 0.0);
  CHECK_THROWS_AS(SzegoBasis(mu, 8), std::invalid_argument);
  CHECK_THROWS_AS(SzegoBasis(mu, 0), std::invalid_argument);
}
