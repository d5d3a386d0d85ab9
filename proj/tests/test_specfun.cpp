#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "hpchain/specfun.hpp"

using namespace hpchain::specfun;

namespace {

// Independent oracle: the ascending series in long double.
long double series_oracle(int n, long double x) {
  const long double q = x * x / 4;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int m = 1; m < 20000; ++m) {
    term *= q / (static_cast<long double>(m) * (m + n));
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return std::exp(n * std::log(x / 2) - std::lgamma(n + 1.0L) - x) * sum;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

// Adaptive Gauss-Kronrod oracle for (1/pi) Int_0^pi cos(nu t) g(t) dt.
template <class G>
auto fourier_oracle(int nu, G g) {
  using boost::math::quadrature::gauss_kronrod;
  const auto f = [&](double t) { return std::cos(nu * t) * g(t); };
  return gauss_kronrod<double, 61>::integrate(f, 0.0, M_PI, 15, 1e-15) / M_PI;
}

}  // namespace

TEST_CASE("scaled Bessel at x = 1 matches the series value") {
  CHECK(bessel_i_scaled(0, 1.0) == doctest::Approx(0.46575960759364043).epsilon(2e-16));
}

TEST_CASE("scaled Bessel agrees with a long-double series oracle") {
  for (int n : {0, 1, 2, 5, 10, 30, 100})
    for (double x : {1e-3, 0.1, 1.0, 5.0, 20.0, 29.9, 30.1, 50.0, 100.0, 400.0}) {
      const double oracle = static_cast<double>(series_oracle(n, x));
      if (oracle < 1e-290) continue;
      INFO("n=" << n << " x=" << x);
      CHECK(rel(bessel_i_scaled(n, x), oracle) < 1e-13);
    }
}

TEST_CASE("scaled Bessel agrees with Boost for large arguments") {
  for (int n : {0, 1, 3, 40, 90})
    for (double x : {700.0, 2000.0, 8000.0}) {
      const long double boost_value =
          boost::math::cyl_bessel_i(static_cast<long double>(n), static_cast<long double>(x)) *
          std::exp(-static_cast<long double>(x));
      INFO("n=" << n << " x=" << x);
      CHECK(rel(bessel_i_scaled(n, x), static_cast<double>(boost_value)) < 1e-13);
    }
}

TEST_CASE("single-order and sequence routes agree across regimes") {
  for (double x : {0.5, 10.0, 35.0, 200.0, 5e3, 1e5, 1e6}) {
    const std::vector<double> seq = bessel_i_scaled_sequence(60, x);
    for (int n : {0, 1, 7, 20, 59}) {
      INFO("n=" << n << " x=" << x);
      CHECK(rel(bessel_i_scaled(n, x), seq[static_cast<std::size_t>(n)]) < 1e-12);
    }
  }
}

TEST_CASE("scaled Bessel properties") {
  SUBCASE("zero argument is a Kronecker delta") {
    CHECK(bessel_i_scaled(0, 0.0) == 1.0);
    CHECK(bessel_i_scaled(3, 0.0) == 0.0);
    CHECK(bessel_i_scaled(-3, 0.0) == 0.0);
  }
  SUBCASE("order symmetry") {
    for (double x : {0.3, 12.0, 90.0}) CHECK(bessel_i_scaled(-4, x) == bessel_i_scaled(4, x));
  }
  SUBCASE("normalization I_0 + 2 Sum I_k = e^x") {
    for (double x : {0.01, 1.0, 17.0, 300.0, 4e4}) {
      const int nmax = static_cast<int>(x + 40.0 * std::sqrt(x) + 60.0);
      const std::vector<double> seq = bessel_i_scaled_sequence(nmax, x);
      double s = seq[0];
      for (std::size_t k = 1; k < seq.size(); ++k) s += 2.0 * seq[k];
      CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  SUBCASE("three-term recurrence") {
    for (double x : {0.7, 25.0, 31.0, 150.0})
      for (int n = 1; n < 12; ++n) {
        const double lhs = bessel_i_scaled(n - 1, x) - bessel_i_scaled(n + 1, x);
        const double rhs = 2.0 * n / x * bessel_i_scaled(n, x);
        CHECK(rel(lhs, rhs) < 1e-11);
      }
  }
  SUBCASE("decreasing in the order for x > 0") {
    for (double x : {0.2, 3.0, 40.0, 900.0})
      for (int n = 0; n < 30; ++n) CHECK(bessel_i_scaled(n + 1, x) < bessel_i_scaled(n, x));
  }
  SUBCASE("huge order underflows to zero") { CHECK(bessel_i_scaled(100000, 50.0) == 0.0); }
}

TEST_CASE("scaled Bessel rejects invalid arguments") {
  CHECK_THROWS_AS(bessel_i_scaled(0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_i_scaled(0, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK_THROWS_AS(bessel_i_scaled(0, 2e6), std::invalid_argument);
  CHECK_THROWS_AS(bessel_i_scaled_sequence(-1, 1.0), std::invalid_argument);
}

TEST_CASE("generalized Bessel with one coupling is the modified Bessel function") {
  for (double j : {0.0, 0.4, 3.0, 25.0}) {
    const double c[] = {j};
    for (int nu = -6; nu <= 6; ++nu) CHECK(generalized_bessel_scaled(nu, c) == doctest::Approx(bessel_i_scaled(nu, j)).epsilon(1e-13));
  }
}

TEST_CASE("generalized Bessel against adaptive quadrature") {
  const double c[] = {1.0, 0.5};
  const auto g = [](double t) { return std::exp(std::cos(t) + 0.25 * std::cos(2 * t) - 1.25); };
  for (int nu : {0, 1, 2, 3, 7}) CHECK(std::fabs(generalized_bessel_scaled(nu, c) - fourier_oracle(nu, g)) < 1e-12);
  // frozen 50-digit values
  CHECK(generalized_bessel_scaled(0, c) == doctest::Approx(0.37823541363767117102).epsilon(1e-13));
  CHECK(generalized_bessel_scaled(1, c) == doctest::Approx(0.18570999810254296698).epsilon(1e-13));
  CHECK(generalized_bessel_scaled(3, c) == doctest::Approx(0.028133111524472101471).epsilon(1e-12));
}

TEST_CASE("generalized Bessel with a single range-two coupling") {
  for (double j : {0.5, 1.0, 4.0}) {
    const double c[] = {0.0, 2.0 * j};
    CHECK(generalized_bessel_scaled(2, c) == doctest::Approx(bessel_i_scaled(1, j)).epsilon(1e-13));
    CHECK(std::fabs(generalized_bessel_scaled(1, c)) < 1e-15);
    CHECK(std::fabs(generalized_bessel_scaled(3, c)) < 1e-15);
  }
}

TEST_CASE("generalized Bessel sum rule and symmetry") {
  const double c[] = {2.0, 1.0, 0.7};
  const std::vector<double> seq = generalized_bessel_scaled_sequence(80, c);
  double s = seq[0];
  for (std::size_t k = 1; k < seq.size(); ++k) s += 2.0 * seq[k];
  CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(generalized_bessel_scaled(-5, c) == generalized_bessel_scaled(5, c));
  CHECK_THROWS_AS(generalized_bessel_scaled(0, std::vector<double>{}), std::invalid_argument);
  const double bad[] = {1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(generalized_bessel_scaled(0, bad), std::invalid_argument);
}

TEST_CASE("complex-argument kernel against adaptive quadrature") {
  for (double j : {0.5, 2.0, 6.0})
    for (double phi : {0.0, 0.7, 2.0}) {
      const std::complex<double> z = j * std::polar(1.0, -0.5 * phi);
      const std::vector<std::complex<double>> seq = bessel_i_complex_scaled_sequence(5, z);
      for (int nu = 0; nu <= 5; ++nu) {
        const auto re = fourier_oracle(nu, [&](double t) { return (std::exp(z * std::cos(t) - z.real())).real(); });
        const auto im = fourier_oracle(nu, [&](double t) { return (std::exp(z * std::cos(t) - z.real())).imag(); });
        INFO("J=" << j << " phi=" << phi << " nu=" << nu);
        CHECK(std::abs(seq[static_cast<std::size_t>(nu)] - std::complex<double>(re, im)) < 1e-10);
      }
    }
}

TEST_CASE("complex kernel on the real axis matches the real Bessel function") {
  const std::vector<std::complex<double>> seq = bessel_i_complex_scaled_sequence(8, {3.5, 0.0});
  for (int nu = 0; nu <= 8; ++nu) {
    CHECK(seq[static_cast<std::size_t>(nu)].real() == doctest::Approx(bessel_i_scaled(nu, 3.5)).epsilon(1e-13));
    CHECK(std::fabs(seq[static_cast<std::size_t>(nu)].imag()) < 1e-16);
  }
}
