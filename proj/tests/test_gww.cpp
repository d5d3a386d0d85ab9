#include <cmath>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <Eigen/Dense>

#include "doctest.h"
#include "hpchain/gww.hpp"
#include "hpchain/identities.hpp"

using namespace hpchain;
using namespace hpchain::gww;

namespace {

// ln det[I_{j-k}(x)] in long double, small N only.
double brute_log_det(int n, double x) {
  using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      m(r, s) = boost::math::cyl_bessel_i(static_cast<long double>(std::abs(r - s)), static_cast<long double>(x));
  return static_cast<double>(std::log(std::fabs(m.partialPivLu().determinant())));
}

double third_difference(double s, double h) {
  return (planar_free_energy(s + 2 * h) - 2 * planar_free_energy(s + h) + 2 * planar_free_energy(s - h) -
          planar_free_energy(s - 2 * h)) /
         (2 * h * h * h);
}

}  // namespace

TEST_CASE("planar free energy is third-order across sigma = 1") {
  const double h = 1e-7;
  CHECK(planar_free_energy(1.0 - h) == doctest::Approx(planar_free_energy(1.0 + h)).epsilon(1e-6));
  CHECK(planar_free_energy_derivative(1.0 - h) == doctest::Approx(planar_free_energy_derivative(1.0 + h)));
  const double second_lo = (planar_free_energy_derivative(1.0) - planar_free_energy_derivative(1.0 - 1e-6)) / 1e-6;
  const double second_hi = (planar_free_energy_derivative(1.0 + 1e-6) - planar_free_energy_derivative(1.0)) / 1e-6;
  CHECK(second_lo == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(second_hi == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(third_difference(0.5, 1e-3) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(third_difference(1.5, 1e-3) == doctest::Approx(-1.0 / (1.5 * 1.5 * 1.5)).epsilon(1e-4));
  CHECK_THROWS_AS(planar_free_energy(-1.0), std::invalid_argument);
}

TEST_CASE("saddle in closed form agrees with numerical minimization") {
  for (double a : {0.2, 0.7, 0.999, 1.001, 1.5, 2.0, 3.0, 10.0}) {
    const PlanarResult closed = saddle_entropy(a);
    const PlanarResult numeric = minimize_effective_action(a);
    INFO("a=" << a);
    CHECK(numeric.sigma_star == doctest::Approx(closed.sigma_star).epsilon(1e-6));
    CHECK(numeric.entropy_density == doctest::Approx(closed.entropy_density).epsilon(1e-10));
    CHECK(numeric.phase == closed.phase);
  }
}

TEST_CASE("saddle at a = 2") {
  const PlanarResult r = saddle_entropy(2.0);
  CHECK(r.phase == Phase::kGapped);
  CHECK(r.sigma_star == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r.sigma_star == doctest::Approx(3.414214).epsilon(1e-6));
  CHECK(r.entropy_density == doctest::Approx(0.593131).epsilon(1e-5));
  CHECK(saddle_entropy(0.5).entropy_density == 0.0);
  CHECK(saddle_entropy(0.5).phase == Phase::kUngapped);
  const PlanarResult critical = saddle_entropy(1.0);
  CHECK(critical.sigma_star == 1.0);
  CHECK(critical.entropy_density == 0.0);
}

TEST_CASE("entropy slope jumps by one quarter") {
  const double h = 1e-10;
  const double below = (saddle_entropy(1.0 - h).entropy_density - saddle_entropy(1.0 - 2 * h).entropy_density) / h;
  const double above = (saddle_entropy(1.0 + 2 * h).entropy_density - saddle_entropy(1.0 + h).entropy_density) / h;
  CHECK(below == doctest::Approx(0.0));
  CHECK(above == doctest::Approx(0.25).epsilon(1e-4));
  for (double a : {1.2, 2.0, 4.0}) {
    const double slope = (saddle_entropy(a + 1e-6).entropy_density - saddle_entropy(a - 1e-6).entropy_density) / 2e-6;
    const double s = saddle_entropy(a).sigma_star;
    CHECK(slope == doctest::Approx(s * s / (4 * a * a)).epsilon(1e-6));
  }
}

TEST_CASE("temperature map") {
  CHECK(hawking_page_temperature() == doctest::Approx(0.3796628588).epsilon(1e-9));
  CHECK(a_of_t(hawking_page_temperature()) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(a_of_t(0.38) == doctest::Approx(1.0035).epsilon(1e-4));
  for (double t : {0.05, 0.25, 0.3, 0.45, 0.6, 2.0, 50.0}) CHECK(t_of_a(a_of_t(t)) == doctest::Approx(t).epsilon(1e-12));
  double previous = 0.0;
  for (double t = 0.05; t < 5.0; t *= 1.3) {
    const double a = a_of_t(t);
    CHECK(a > previous);
    previous = a;
  }
  CHECK(std::isfinite(std::log(a_of_t(0.002))));
  CHECK_THROWS_AS(a_of_t(0.0), std::invalid_argument);
  CHECK_THROWS_AS(t_of_a(-1.0), std::invalid_argument);
}

TEST_CASE("partition function against direct Bessel determinants") {
  for (int n = 1; n <= 7; ++n)
    for (double sigma : {0.1, 0.7, 1.5, 3.0}) {
      const double expected = brute_log_det(n, n * sigma);
      INFO("N=" << n << " sigma=" << sigma);
      CHECK(gww_log_partition({n, sigma}).ln_magnitude == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("partition function frozen at larger N") {
  // 50-digit values
  CHECK(gww_log_partition({8, 1.5}).ln_magnitude == doctest::Approx(34.827121500333301225).epsilon(1e-14));
  CHECK(gww_log_partition({8, 3.0}).ln_magnitude == doctest::Approx(108.55636346984366397).epsilon(1e-14));
  CHECK(gww_log_partition({10, 1.5}).ln_magnitude == doctest::Approx(54.509052753400675284).epsilon(1e-14));
  CHECK(gww_log_partition({10, 3.0}).ln_magnitude == doctest::Approx(169.76275343900473283).epsilon(1e-14));
}

TEST_CASE("partition function against the eigenvalue-angle integral") {
  for (int n = 1; n <= 3; ++n)
    for (double sigma : {0.4, 1.2}) {
      const double c[] = {n * sigma};
      const double z = identities::eigenvalue_integral(n, c).partition.ln_magnitude;
      CHECK(gww_log_partition({n, sigma}).ln_magnitude == doctest::Approx(z).epsilon(1e-11));
    }
}

TEST_CASE("fixed coupling approaches the strong Szego limit") {
  for (double j : {0.5, 2.0, 4.0}) {
    const double c[] = {j};
    CHECK(multi_coupling_log_partition(40, c).ln_magnitude == doctest::Approx(j * j / 4).epsilon(1e-12));
  }
  const double c2[] = {1.0, 0.6};
  // Sum_k k |c_k|^2 with c_1 = 1/2, c_2 = 0.6/4
  CHECK(multi_coupling_log_partition(40, c2).ln_magnitude ==
        doctest::Approx(0.25 + 2 * 0.15 * 0.15).epsilon(1e-12));
}

TEST_CASE("multi-coupling frozen value") {
  const double c[] = {1.0, 0.5};
  CHECK(multi_coupling_log_partition(2, c).ln_magnitude == doctest::Approx(0.27967507492162065168).epsilon(1e-13));
  const double bad[] = {-1.0};
  CHECK_THROWS_AS(multi_coupling_log_partition(2, bad), std::invalid_argument);
  CHECK_THROWS_AS(gww_log_partition({0, 1.0}), std::invalid_argument);
}

TEST_CASE("finite N extrapolates to the planar free energy") {
  for (double sigma : {0.5, 2.0}) {
    const std::vector<int> sizes{32, 48, 64, 96};
    Eigen::MatrixXd design(static_cast<int>(sizes.size()), 3);
    Eigen::VectorXd rhs(static_cast<int>(sizes.size()));
    double last_gap = 1e300;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double n = sizes[i];
      const double f = gww_log_partition({sizes[i], sigma}).ln_magnitude / (n * n);
      const double gap = std::fabs(f - planar_free_energy(sigma));
      CHECK((gap <= last_gap || gap < 1e-14));
      last_gap = gap;
      design(static_cast<int>(i), 0) = 1.0;
      design(static_cast<int>(i), 1) = std::log(n) / (n * n);
      design(static_cast<int>(i), 2) = 1.0 / (n * n);
      rhs(static_cast<int>(i)) = f;
    }
    const Eigen::VectorXd fit = design.colPivHouseholderQr().solve(rhs);
    INFO("sigma=" << sigma);
    CHECK(fit(0) == doctest::Approx(planar_free_energy(sigma)).epsilon(1e-5));
  }
}

TEST_CASE("planar Polyakov loop is the source derivative of the entropy") {
  for (double a : {0.5, 1.5, 2.0, 3.0}) {
    const double h = 1e-5;
    const double derivative =
        (minimize_effective_action(a, h).entropy_density - minimize_effective_action(a, -h).entropy_density) / (2 * h);
    INFO("a=" << a);
    CHECK(derivative == doctest::Approx(planar_polyakov(a)).epsilon(1e-5));
  }
  CHECK(planar_polyakov(0.5) == 0.0);
  CHECK(planar_polyakov(2.0) == doctest::Approx(1.0 - 0.5 / (2.0 + std::sqrt(2.0))));
  double previous = 0.0;
  for (double a = 1.1; a < 6.0; a += 0.5) {
    CHECK(planar_polyakov(a) > previous);
    CHECK(planar_polyakov(a) < 1.0);
    previous = planar_polyakov(a);
  }
}
