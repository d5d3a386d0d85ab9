#include "hpchain/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace hpchain::quadrature {
namespace {

using Gauss = boost::math::quadrature::gauss<double, kGaussOrder>;

void append_panel(Rule& rule, double lo, double hi) {
  const auto& x = Gauss::abscissa();
  const auto& w = Gauss::weights();
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  // abscissa() holds the positive half of the symmetric even-order rule
  for (std::size_t i = x.size(); i-- > 0;) {
    rule.nodes.push_back(mid - half * x[i]);
    rule.weights.push_back(half * w[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes.push_back(mid + half * x[i]);
    rule.weights.push_back(half * w[i]);
  }
}

}  // namespace

Rule gauss_legendre(double lo, double hi, int panels) {
  if (!(hi > lo) || panels < 1) throw std::invalid_argument("gauss_legendre: bad interval or panels");
  Rule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * kGaussOrder);
  rule.weights.reserve(static_cast<std::size_t>(panels) * kGaussOrder);
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) append_panel(rule, lo + p * h, p + 1 == panels ? hi : lo + (p + 1) * h);
  return rule;
}

Rule graded_gauss_legendre(double hi, int panels, int levels) {
  if (!(hi > 0.0) || panels < 1 || levels < 0)
    throw std::invalid_argument("graded_gauss_legendre: bad arguments");
  Rule rule;
  const double h = hi / panels;
  append_panel(rule, 0.0, std::ldexp(h, -levels));
  for (int k = levels; k > 0; --k) append_panel(rule, std::ldexp(h, -k), std::ldexp(h, -k + 1));
  for (int p = 1; p < panels; ++p) append_panel(rule, p * h, p + 1 == panels ? hi : (p + 1) * h);
  return rule;
}

double log_sum_exp(std::span<const double> logs) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : logs) peak = std::max(peak, v);
  if (peak == -std::numeric_limits<double>::infinity()) return peak;
  double sum = 0.0;
  for (double v : logs) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

LogValue log_sum(std::span<const LogValue> terms) {
  double peak = -std::numeric_limits<double>::infinity();
  for (const LogValue& t : terms)
    if (!t.is_zero()) peak = std::max(peak, t.ln_magnitude);
  if (peak == -std::numeric_limits<double>::infinity()) return LogValue::zero();
  double sum = 0.0;
  for (const LogValue& t : terms)
    if (!t.is_zero()) sum += t.sign * std::exp(t.ln_magnitude - peak);
  if (sum == 0.0) return LogValue::zero();
  return LogValue::from_log(peak + std::log(std::fabs(sum)), sum > 0 ? 1 : -1);
}

}  // namespace hpchain::quadrature
