#include <cmath>
#include <vector>

#include "doctest.h"
#include "hpchain/average.hpp"
#include "hpchain/chain.hpp"
#include "hpchain/errors.hpp"
#include "hpchain/gww.hpp"

using namespace hpchain;
using namespace hpchain::average;

namespace {

AverageParams width(double a, Exec exec = Exec::kParallel) {
  AverageParams p;
  p.a_modulus = a;
  p.exec = exec;
  return p;
}

double ln_avg(int n, double a) { return averaged_echo(n, width(a)).value.ln_magnitude; }

}  // namespace

TEST_CASE("Gaussian measure moments") {
  for (double a : {0.1, 1.0, 3.0}) {
    const AverageParams p = width(a);
    const double hi = 20.0 * std::sqrt(a);
    CHECK(gaussian_average([](double) { return LogValue::one(); }, p, hi).value.ln_magnitude ==
          doctest::Approx(0.0).epsilon(1e-12));
    const AverageResult second =
        gaussian_average([](double j) { return LogValue::from_log(2 * std::log(j)); }, p, hi);
    CHECK(second.value.value() == doctest::Approx(4 * a).epsilon(1e-10));
    const double c = 0.1 / a;
    const AverageResult gauss = gaussian_average([c](double j) { return LogValue::from_log(c * j * j); }, p, hi);
    CHECK(gauss.value.value() == doctest::Approx(1.0 / (1.0 - 4 * a * c)).epsilon(1e-9));
  }
}

TEST_CASE("truncation is extended when the integrand has not decayed") {
  const AverageParams p = width(1.0);
  const AverageResult r = gaussian_average([](double) { return LogValue::one(); }, p, 0.5);
  CHECK(r.value.ln_magnitude == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("narrow Gaussian probes small couplings") {
  const AverageResult r = averaged_echo(4, width(1e-6));
  CHECK(r.value.ln_magnitude == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("single particle echo is trivial") {
  for (double a : {0.3, 2.0}) CHECK(ln_avg(1, a) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ungapped width keeps the average of order one") {
  const double r8 = ln_avg(8, 0.5);
  const double r16 = ln_avg(16, 0.5);
  CHECK(r8 > 0.0);
  CHECK(r8 < 0.2);
  CHECK(std::fabs(r16 - r8) < 0.01);
}

TEST_CASE("gapped width grows quadratically") {
  const double r8 = ln_avg(8, 2.0);
  const double r16 = ln_avg(16, 2.0);
  CHECK(r16 / r8 > 3.0);
  CHECK(r16 > 50.0);
}

TEST_CASE("matrix-model average without the single-site factor tracks N^2 s") {
  const int n = 16;
  const double a = 2.0;
  const EchoFunction f = [n](double j) { return gww::gww_log_partition({n, j / n}); };
  const AverageResult r = gaussian_average(f, width(a), default_upper_limit(n, a));
  const gww::PlanarResult saddle = gww::saddle_entropy(a);
  CHECK(std::fabs(r.value.ln_magnitude / (n * n * saddle.entropy_density) - 1.0) < 0.15);
  CHECK(std::fabs(r.peak_coupling / (n * saddle.sigma_star) - 1.0) < 0.2);
}

TEST_CASE("serial and parallel averages agree bitwise") {
  for (double a : {0.5, 2.0}) {
    const AverageResult s = averaged_echo(6, width(a, Exec::kSerial));
    const AverageResult p = averaged_echo(6, width(a, Exec::kParallel));
    CHECK(s.value.ln_magnitude == p.value.ln_magnitude);
    CHECK(s.nodes == p.nodes);
  }
}

TEST_CASE("nested average reduces to the plain average for small b") {
  for (double a : {0.5, 2.0}) {
    const NestedResult r = nested_average(6, {a, 1e-6}, width(a));
    CHECK_FALSE(r.degenerate);
    CHECK(std::fabs(r.normalized().ln_magnitude - ln_avg(6, a)) < 1e-4);
  }
}

TEST_CASE("nested average with a broad mu distribution") {
  const NestedResult r = nested_average(4, {0.5, 0.5}, width(0.5));
  CHECK(std::isfinite(r.normalized().ln_magnitude));
  CHECK(r.normalized().ln_magnitude > 0.0);
  const NestedResult wide = nested_average(2, {0.05, 5.0}, width(0.05));
  CHECK(wide.degenerate);
  CHECK_THROWS_AS(nested_average(4, {0.5, 0.0}, width(0.5)), std::invalid_argument);
}

TEST_CASE("two-width average reduces to one width when the second is tiny") {
  const std::vector<double> widths{0.8, 1e-14};
  const AverageResult multi = multi_gaussian_average(3, widths, width(1.0));
  CHECK(multi.value.ln_magnitude == doctest::Approx(ln_avg(3, 0.8)).epsilon(1e-6));
  const std::vector<double> none;
  CHECK_THROWS_AS(multi_gaussian_average(3, none, width(1.0)), std::invalid_argument);
}

TEST_CASE("complex temperature on the real axis") {
  for (int n : {2, 4}) {
    const AverageParams p = width(0.5);
    const EchoFunction f = [n](double j) {
      return chain::normalized_echo({chain::LatticeSize::infinite(), {j}}, n);
    };
    const double expected = gaussian_average(f, p, default_upper_limit(n, 1.0)).value.ln_magnitude;
    CHECK(complex_temperature_average(n, p).value.ln_magnitude == doctest::Approx(expected).epsilon(1e-9));
  }
  AverageParams rotated = width(0.5);
  rotated.a_phase = 0.6;
  CHECK(std::isfinite(complex_temperature_average(3, rotated).value.ln_magnitude));
  rotated.a_phase = 3.2;
  CHECK_THROWS_AS(complex_temperature_average(3, rotated), std::invalid_argument);
}

TEST_CASE("Monte Carlo agrees with quadrature and is reproducible") {
  const int n = 4;
  const double a = 0.7;
  const EchoFunction f = [n](double j) { return chain::echo_ratio({chain::LatticeSize::infinite(), {j}}, n); };
  const MonteCarloResult first = monte_carlo_average(f, a, 20000, 42);
  const MonteCarloResult again = monte_carlo_average(f, a, 20000, 42, Exec::kSerial);
  CHECK(first.mean.ln_magnitude == again.mean.ln_magnitude);
  const double exact = ln_avg(n, a);
  CHECK(std::fabs(first.mean.ln_magnitude - exact) < 5 * first.relative_standard_error);
  CHECK(monte_carlo_average(f, a, 2000, 43).mean.ln_magnitude != first.mean.ln_magnitude);
  CHECK_THROWS_AS(monte_carlo_average(f, a, 1, 1), std::invalid_argument);
}

TEST_CASE("Polyakov ratio") {
  CHECK(polyakov_ratio(16, 1, width(0.5)) < 0.05);
  double previous = 0.0;
  for (double a : {0.5, 1.5, 2.5}) {
    const double p = polyakov_ratio(8, 1, width(a));
    CHECK(p > previous);
    previous = p;
  }
  CHECK_THROWS_AS(polyakov_ratio(8, 0, width(1.0)), std::invalid_argument);
}

TEST_CASE("node budget is enforced") {
  AverageParams p = width(2.0);
  p.max_nodes = 16;
  CHECK_THROWS_AS(averaged_echo(8, p), NumericalError);
  p.a_modulus = -1.0;
  p.max_nodes = 8192;
  CHECK_THROWS_AS(averaged_echo(8, p), std::invalid_argument);
}
