#include "hpchain/gww.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "hpchain/circle_measure.hpp"

namespace hpchain::gww {
namespace {

constexpr double kCriticalWindow = 1e-12;

void check_a(double a) {
  if (!std::isfinite(a) || a <= 0.0) throw std::invalid_argument("gww: a must be finite and positive");
}

double log_a_of_t(double t) {
  const double u = 0.5 / t;
  const double log_y = u > 30.0 ? u + std::log1p(-std::exp(-u)) : std::log(std::expm1(u));
  // 3x - 1 = 2 + 3y
  const double log_num = log_y > 30.0 ? log_y + std::log(3.0 + 2.0 * std::exp(-log_y))
                                       : std::log(2.0 + 3.0 * std::exp(log_y));
  return std::log(2.0) + log_num - 3.0 * log_y;
}

}  // namespace

LogValue multi_coupling_log_partition(int n, std::span<const double> couplings) {
  if (n < 1) throw std::invalid_argument("gww: need N >= 1");
  if (couplings.empty()) throw std::invalid_argument("gww: need K >= 1");
  for (double j : couplings)
    if (!std::isfinite(j) || j < 0.0) throw std::invalid_argument("gww: couplings must be non-negative");
  const CircleMeasure measure =
      CircleMeasure::from_couplings(couplings, CircleMeasure::nodes_for(n, couplings), 0.0);
  return SzegoBasis(measure, n).toeplitz_det(n);
}

LogValue gww_log_partition(const GwwParams& params) {
  if (!std::isfinite(params.sigma) || params.sigma < 0.0)
    throw std::invalid_argument("gww: sigma must be non-negative");
  const double j = params.n * params.sigma;
  return multi_coupling_log_partition(params.n, std::span<const double>(&j, 1));
}

double planar_free_energy(double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) throw std::invalid_argument("gww: sigma must be >= 0");
  if (sigma <= 1.0) return 0.25 * sigma * sigma;
  return sigma - 0.5 * std::log(sigma) - 0.75;
}

double planar_free_energy_derivative(double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) throw std::invalid_argument("gww: sigma must be >= 0");
  if (sigma <= 1.0) return 0.5 * sigma;
  return 1.0 - 0.5 / sigma;
}

double effective_action(double sigma, double a, double source) {
  check_a(a);
  return sigma * sigma / (4.0 * a) - planar_free_energy(sigma + source);
}

PlanarResult saddle_entropy(double a) {
  check_a(a);
  if (a < 1.0 - kCriticalWindow) return {0.0, 0.0, 0.0, Phase::kUngapped};
  if (a <= 1.0 + kCriticalWindow) return {1.0, 0.25, 0.0, Phase::kGapped};
  const double sigma = a + std::sqrt(a * a - a);
  const double f = planar_free_energy(sigma);
  return {sigma, f, f - sigma * sigma / (4.0 * a), Phase::kGapped};
}

PlanarResult minimize_effective_action(double a, double source) {
  check_a(a);
  if (!std::isfinite(source)) throw std::invalid_argument("gww: source must be finite");
  const auto action = [&](double s) { return effective_action(s, a, source); };
  const double lo_end = std::max(0.0, -source);
  const double hi = lo_end + 4.0 * a + 4.0;
  constexpr int kScan = 4000;
  const double step = (hi - lo_end) / kScan;
  int best = 0;
  double best_value = action(lo_end);
  for (int i = 1; i <= kScan; ++i) {
    const double v = action(lo_end + step * i);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double sigma = 0.0;
  if (best > 0) {
    const double lo = lo_end + step * (best - 1);
    const double up = lo_end + step * std::min(best + 1, kScan);
    std::uintmax_t iterations = 500;
    const auto r = boost::math::tools::brent_find_minima(action, lo, up,
                                                         std::numeric_limits<double>::digits,
                                                         iterations);
    sigma = r.first;
    best_value = r.second;
    if (action(lo_end) <= best_value) {
      sigma = lo_end;
      best_value = action(lo_end);
    }
  } else {
    sigma = lo_end;
  }
  const double f = planar_free_energy(sigma + source);
  return {sigma, f, -best_value, sigma + source > 1.0 ? Phase::kGapped : Phase::kUngapped};
}

double planar_polyakov(double a) {
  const PlanarResult r = saddle_entropy(a);
  if (r.phase == Phase::kUngapped) return 0.0;
  return planar_free_energy_derivative(r.sigma_star);
}

double a_of_t(double t) {
  if (!std::isfinite(t) || t <= 0.0) throw std::invalid_argument("gww: T must be finite and positive");
  return std::exp(log_a_of_t(t));
}

double t_of_a(double a) {
  check_a(a);
  const double target = std::log(a);
  const auto f = [&](double log_t) { return log_a_of_t(std::exp(log_t)) - target; };
  double lo = -1.0;
  double hi = 1.0;
  while (f(lo) > 0.0) lo *= 2.0;
  while (f(hi) < 0.0) hi *= 2.0;
  std::uintmax_t iterations = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2),
      iterations);
  return std::exp(0.5 * (r.first + r.second));
}

double hawking_page_temperature() { return t_of_a(1.0); }

}  // namespace hpchain::gww
