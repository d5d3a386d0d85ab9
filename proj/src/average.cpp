#include "hpchain/average.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "hpchain/errors.hpp"
#include "hpchain/gww.hpp"
#include "hpchain/quadrature.hpp"

namespace hpchain::average {
namespace {

constexpr int kStartPanels = 8;
constexpr int kMaxExtensions = 12;
constexpr double kTailDrop = 30.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_params(const AverageParams& p) {
  if (!std::isfinite(p.a_modulus) || p.a_modulus <= 0.0)
    throw std::invalid_argument("average: a must be finite and positive");
  if (!(p.quad_rel_tol > 0.0)) throw std::invalid_argument("average: quad_rel_tol must be positive");
  if (p.max_nodes < quadrature::kGaussOrder) throw std::invalid_argument("average: max_nodes too small");
}

double relative_change(const LogValue& before, const LogValue& after) {
  if (before.is_zero() && after.is_zero()) return 0.0;
  if (before.sign != after.sign) return kInf;
  return std::fabs(std::expm1(after.ln_magnitude - before.ln_magnitude));
}

// ln of (J / 2a) exp(-J^2 / 4a).
double log_density(double j, double a) { return std::log(j / (2.0 * a)) - j * j / (4.0 * a); }

std::vector<LogValue> evaluate(const std::vector<double>& nodes, const EchoFunction& f, Exec exec) {
  std::vector<LogValue> out(nodes.size());
  for_each_index(exec, nodes.size(), [&](std::size_t i) { out[i] = f(nodes[i]); });
  return out;
}

chain::ChainSpec model_spec(const ChainModel& model, double j) {
  chain::ChainSpec spec{model.size, model.profile};
  for (double& c : spec.couplings) c *= j;
  return spec;
}

void check_model(const ChainModel& model, int n) {
  if (n < 1) throw std::invalid_argument("average: need N >= 1");
  if (model.profile.empty()) throw std::invalid_argument("average: empty coupling profile");
  for (double g : model.profile)
    if (!std::isfinite(g) || g < 0.0) throw std::invalid_argument("average: bad coupling profile");
}

}  // namespace

double default_upper_limit(int n, double a) {
  if (!std::isfinite(a) || a <= 0.0) throw std::invalid_argument("average: a must be positive");
  const gww::PlanarResult saddle = gww::saddle_entropy(a);
  const double spread = 8.0 * std::sqrt(2.0 * a);
  if (saddle.phase == gww::Phase::kGapped) return n * (saddle.sigma_star + 2.0) + spread;
  const double ungapped = 2.0 * n + spread;
  if (a >= 1.0) return ungapped;
  return std::min(ungapped, 8.0 * std::sqrt(2.0 * a / (1.0 - a)));
}

AverageResult gaussian_average(const EchoFunction& f, const AverageParams& params, double upper_limit) {
  check_params(params);
  if (!std::isfinite(upper_limit) || upper_limit <= 0.0)
    throw std::invalid_argument("average: upper limit must be positive");
  const double a = params.a_modulus;
  double hi = upper_limit;
  for (int extension = 0; extension <= kMaxExtensions; ++extension) {
    LogValue previous;
    double error = kInf;
    bool have_previous = false;
    for (int panels = kStartPanels;; panels *= 2) {
      const int nodes = panels * quadrature::kGaussOrder;
      if (nodes > params.max_nodes)
        throw NumericalError("average: quadrature did not converge within " +
                                 std::to_string(params.max_nodes) + " nodes",
                             error);
      const quadrature::Rule rule = quadrature::gauss_legendre(0.0, hi, panels);
      const std::vector<LogValue> values = evaluate(rule.nodes, f, params.exec);
      std::vector<LogValue> terms(values.size());
      double peak = -kInf;
      double peak_j = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const LogValue density = LogValue::from_log(log_density(rule.nodes[i], a));
        const LogValue integrand = density * values[i];
        terms[i] = integrand * LogValue::from_log(std::log(rule.weights[i]));
        if (!integrand.is_zero() && integrand.ln_magnitude > peak) {
          peak = integrand.ln_magnitude;
          peak_j = rule.nodes[i];
        }
      }
      const LogValue total = quadrature::log_sum(terms);
      if (have_previous) error = relative_change(previous, total);
      if (have_previous && error <= params.quad_rel_tol) {
        const LogValue last = LogValue::from_log(log_density(rule.nodes.back(), a)) * values.back();
        if (!last.is_zero() && last.ln_magnitude > peak - kTailDrop) break;
        return {total, error, peak_j, nodes};
      }
      previous = total;
      have_previous = true;
    }
    hi *= 1.5;
  }
  throw NumericalError("average: integrand does not decay within the truncation range", kInf);
}

AverageResult averaged_echo(int n, const AverageParams& params, const ChainModel& model) {
  check_model(model, n);
  const EchoFunction f = [&](double j) { return chain::echo_ratio(model_spec(model, j), n); };
  return gaussian_average(f, params, default_upper_limit(n, params.a_modulus));
}

AverageResult averaged_impurity_echo(int n, int p, const AverageParams& params, const ChainModel& model) {
  check_model(model, n);
  if (p < 1) throw std::invalid_argument("average: need p >= 1");
  const EchoFunction f = [&](double j) {
    return chain::impurity_echo_ratio(model_spec(model, j), n, p);
  };
  return gaussian_average(f, params, default_upper_limit(n, params.a_modulus));
}

double polyakov_ratio(int n, int p, const AverageParams& params, const ChainModel& model) {
  const AverageResult plain = averaged_echo(n, params, model);
  const AverageResult impurity = averaged_impurity_echo(n, p, params, model);
  return (impurity.value / plain.value).value() / n;
}

AverageResult multi_gaussian_average(int n, std::span<const double> widths, const AverageParams& params) {
  check_params(params);
  if (n < 1) throw std::invalid_argument("average: need N >= 1");
  const std::size_t k = widths.size();
  if (k < 1 || k > 3) throw std::invalid_argument("average: need 1 <= K <= 3 widths");
  for (double w : widths)
    if (!std::isfinite(w) || w <= 0.0) throw std::invalid_argument("average: widths must be positive");

  std::vector<double> hi(k);
  for (std::size_t axis = 0; axis < k; ++axis) hi[axis] = default_upper_limit(n, widths[axis]);

  for (int extension = 0; extension <= kMaxExtensions; ++extension) {
    LogValue previous;
    double error = kInf;
    bool have_previous = false;
    bool extended = false;
    for (int panels = kStartPanels / 2;; panels *= 2) {
      const int per_axis = panels * quadrature::kGaussOrder;
      if (per_axis > params.max_nodes)
        throw NumericalError("average: tensor quadrature did not converge", error);
      std::vector<quadrature::Rule> rules;
      std::vector<std::vector<double>> axis_log(k);
      for (std::size_t axis = 0; axis < k; ++axis) {
        rules.push_back(quadrature::gauss_legendre(0.0, hi[axis], panels));
        for (std::size_t i = 0; i < rules[axis].nodes.size(); ++i)
          axis_log[axis].push_back(std::log(rules[axis].weights[i]) +
                                   log_density(rules[axis].nodes[i], widths[axis]));
      }
      const auto m = static_cast<std::size_t>(per_axis);
      std::size_t total_points = 1;
      for (std::size_t axis = 0; axis < k; ++axis) total_points *= m;

      std::vector<LogValue> terms(total_points);
      for_each_index(params.exec, total_points, [&](std::size_t idx) {
        std::vector<double> couplings(k);
        double log_weight = 0.0;
        std::size_t rest = idx;
        for (std::size_t axis = 0; axis < k; ++axis) {
          const std::size_t i = rest % m;
          rest /= m;
          couplings[axis] = rules[axis].nodes[i];
          log_weight += axis_log[axis][i];
        }
        const chain::ChainSpec spec{chain::LatticeSize::infinite(), couplings};
        terms[idx] = chain::echo_ratio(spec, n) * LogValue::from_log(log_weight);
      });
      const LogValue total = quadrature::log_sum(terms);
      if (have_previous) error = relative_change(previous, total);
      if (have_previous && error <= params.quad_rel_tol) {
        double peak = -kInf;
        for (const LogValue& t : terms)
          if (!t.is_zero()) peak = std::max(peak, t.ln_magnitude);
        std::size_t stride = 1;
        for (std::size_t axis = 0; axis < k; ++axis) {
          double edge = -kInf;
          for (std::size_t idx = 0; idx < total_points; ++idx)
            if ((idx / stride) % m == m - 1 && !terms[idx].is_zero())
              edge = std::max(edge, terms[idx].ln_magnitude - std::log(rules[axis].weights[m - 1]));
          if (edge > peak - kTailDrop) {
            hi[axis] *= 1.5;
            extended = true;
          }
          stride *= m;
        }
        if (!extended) return {total, error, 0.0, static_cast<int>(total_points)};
        break;
      }
      previous = total;
      have_previous = true;
    }
  }
  throw NumericalError("average: tensor integrand does not decay within the truncation range", kInf);
}

NestedResult nested_average(int n, const NestedParams& nested, const AverageParams& params) {
  check_params(params);
  if (n < 1) throw std::invalid_argument("average: need N >= 1");
  if (!std::isfinite(nested.a) || nested.a <= 0.0) throw std::invalid_argument("nested: a must be positive");
  if (!std::isfinite(nested.b) || nested.b <= 0.0) throw std::invalid_argument("nested: b must be positive");
  if (!(nested.mu_floor > 0.0)) throw std::invalid_argument("nested: mu_floor must be positive");

  const double width = std::sqrt(2.0 * nested.b) / n;
  const double mu_lo = std::max(nested.mu_floor, nested.a - 8.0 * width);
  const double mu_hi = nested.a + 8.0 * width;
  const bool degenerate = nested.a - 3.0 * width <= nested.mu_floor;
  const double n2 = static_cast<double>(n) * n;
  double j_hi = default_upper_limit(n, mu_hi);

  const ChainModel model;
  for (int extension = 0; extension <= kMaxExtensions; ++extension) {
    NestedResult previous;
    bool have_previous = false;
    double error = kInf;
    for (int panels = kStartPanels;; panels *= 2) {
      const int mu_panels = std::max(2, panels / 4);
      const double first_panel = j_hi / panels;
      const int levels = std::max(0, static_cast<int>(std::ceil(std::log2(first_panel / std::sqrt(2.0 * mu_lo)))) + 1);
      const quadrature::Rule j_rule = quadrature::graded_gauss_legendre(j_hi, panels, levels);
      if (static_cast<int>(j_rule.nodes.size()) > params.max_nodes)
        throw NumericalError("nested: quadrature did not converge", error);
      // outer rule in u = ln mu, so dmu/mu = du
      const quadrature::Rule mu_rule = quadrature::gauss_legendre(std::log(mu_lo), std::log(mu_hi), mu_panels);

      const std::vector<LogValue> f = evaluate(j_rule.nodes, [&](double j) {
        return chain::echo_ratio(model_spec(model, j), n);
      }, params.exec);

      std::vector<double> outer(mu_rule.nodes.size());
      std::vector<double> weight(mu_rule.nodes.size());
      double tail = -kInf;
      double tail_peak = -kInf;
      for (std::size_t i = 0; i < mu_rule.nodes.size(); ++i) {
        const double mu = std::exp(mu_rule.nodes[i]);
        std::vector<double> inner(j_rule.nodes.size());
        for (std::size_t q = 0; q < j_rule.nodes.size(); ++q)
          inner[q] = std::log(j_rule.weights[q]) + log_density(j_rule.nodes[q], mu) + f[q].ln_magnitude;
        if (i + 1 == mu_rule.nodes.size()) {
          tail = inner.back() - std::log(j_rule.weights.back());
          for (std::size_t q = 0; q < inner.size(); ++q)
            tail_peak = std::max(tail_peak, inner[q] - std::log(j_rule.weights[q]));
        }
        const double d = mu - nested.a;
        weight[i] = std::log(mu_rule.weights[i]) - n2 * d * d / (4.0 * nested.b);
        outer[i] = weight[i] + quadrature::log_sum_exp(inner);
      }
      NestedResult current{LogValue::from_log(quadrature::log_sum_exp(outer)),
                           LogValue::from_log(quadrature::log_sum_exp(weight)), kInf, degenerate};
      if (have_previous) {
        error = std::max(relative_change(previous.normalized(), current.normalized()),
                         relative_change(previous.normalizer, current.normalizer));
        current.error_estimate = error;
      }
      if (have_previous && error <= params.quad_rel_tol) {
        if (tail > tail_peak - kTailDrop) break;
        return current;
      }
      previous = current;
      have_previous = true;
    }
    j_hi *= 1.5;
  }
  throw NumericalError("nested: integrand does not decay within the truncation range", kInf);
}

AverageResult complex_temperature_average(int n, const AverageParams& params) {
  check_params(params);
  if (!(std::fabs(params.a_phase) < 3.141592653589793))
    throw std::invalid_argument("complex average: need |phi| < pi");
  const std::complex<double> rotation = std::polar(1.0, -0.5 * params.a_phase);
  const EchoFunction f = [&](double j) { return chain::complex_normalized_echo(n, j * rotation); };
  return gaussian_average(f, params, default_upper_limit(n, 2.0 * params.a_modulus));
}

MonteCarloResult monte_carlo_average(const EchoFunction& f, double a, int samples, std::uint64_t seed,
                                     Exec exec) {
  if (!std::isfinite(a) || a <= 0.0) throw std::invalid_argument("monte carlo: a must be positive");
  if (samples < 2) throw std::invalid_argument("monte carlo: need at least two samples");
  std::mt19937_64 engine(seed);
  std::vector<double> couplings(static_cast<std::size_t>(samples));
  for (double& j : couplings) {
    const double u = 1.0 - static_cast<double>(engine() >> 11) * 0x1.0p-53;
    j = std::sqrt(-4.0 * a * std::log(u));
  }
  const std::vector<LogValue> values = evaluate(couplings, f, exec);
  double peak = -kInf;
  for (const LogValue& v : values)
    if (!v.is_zero()) peak = std::max(peak, v.ln_magnitude);
  if (peak == -kInf) return {LogValue::zero(), 0.0, samples};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const LogValue& v : values) {
    const double x = v.is_zero() ? 0.0 : v.sign * std::exp(v.ln_magnitude - peak);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / samples;
  const double variance = std::max(0.0, (sum_sq / samples - mean * mean) * samples / (samples - 1.0));
  if (mean == 0.0) return {LogValue::zero(), kInf, samples};
  return {LogValue::from_log(peak + std::log(std::fabs(mean)), mean > 0 ? 1 : -1),
          std::sqrt(variance / samples) / std::fabs(mean), samples};
}

}  // namespace hpchain::average
