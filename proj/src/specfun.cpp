#include "hpchain/specfun.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hpchain::specfun {
namespace {

constexpr double kMaxArgument = 1e6;
constexpr double kRescale = 1e-250;

void check_argument(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::invalid_argument("bessel: argument must be finite and non-negative");
  if (x > kMaxArgument) throw std::invalid_argument("bessel: argument exceeds 1e6");
}

void check_couplings(std::span<const double> couplings) {
  if (couplings.empty()) throw std::invalid_argument("generalized bessel: need K >= 1");
  for (double j : couplings)
    if (!std::isfinite(j)) throw std::invalid_argument("generalized bessel: non-finite coupling");
}

// Positive-term series, log-scaled prefactor.
double power_series(long n, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (long m = 1; m < 100000; ++m) {
    term *= q / (static_cast<double>(m) * static_cast<double>(m + n));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  const double log_prefactor = n * std::log(0.5 * x) - std::lgamma(n + 1.0) - x;
  return std::exp(log_prefactor + std::log(sum));
}

// Hankel expansion, valid for x large against nu^2.
double asymptotic(long n, double x) {
  const double mu = 4.0 * static_cast<double>(n) * static_cast<double>(n);
  double term = 1.0;
  double sum = 1.0;
  double previous = 2.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (std::fabs(term) > previous) break;
    sum += term;
    previous = std::fabs(term);
    if (previous < 1e-17 * std::fabs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

int miller_start(long n, double x) {
  const double start = std::sqrt(static_cast<double>(n) * n + 100.0 * x) + 10.0 * std::sqrt(x) + 30.0;
  return static_cast<int>(std::ceil(start));
}

// Downward recurrence I_{k-1} = I_{k+1} + (2k/x) I_k normalized by
// e^{-x}(I_0 + 2 Sum_k I_k) = 1. Fills out[0..n_max].
void miller(int n_max, double x, std::vector<double>& out) {
  const int start = std::max(miller_start(n_max, x), n_max + 2);
  out.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  double upper = 0.0;
  double current = 1e-300;
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double lower = upper + (2.0 * k / x) * current;
    upper = current;
    current = lower;
    const int order = k - 1;
    if (order <= n_max) out[static_cast<std::size_t>(order)] = current;
    norm += (order == 0 ? 1.0 : 2.0) * current;
    if (current > 1e250) {
      upper *= kRescale;
      current *= kRescale;
      norm *= kRescale;
      for (int m = order; m <= n_max; ++m) out[static_cast<std::size_t>(m)] *= kRescale;
    }
  }
  for (double& v : out) v /= norm;
}

// Leading Debye term of ln(e^{-x} I_n(x)); only used to skip underflowing cases.
double uniform_log_estimate(long n, double x) {
  const double nd = static_cast<double>(n);
  const double r = std::hypot(nd, x);
  return -x + r - nd * std::asinh(nd / x) - 0.5 * std::log(2.0 * std::numbers::pi * r);
}

int next_pow2(long v) { return static_cast<int>(std::bit_ceil(static_cast<unsigned long>(std::max(1L, v)))); }

}  // namespace

double bessel_i_scaled(long nu, double x) {
  check_argument(x);
  const long n = nu < 0 ? -nu : nu;
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x >= 30.0 && x >= static_cast<double>(n) * n) return asymptotic(n, x);
  if (x <= 30.0) return power_series(n, x);
  if (uniform_log_estimate(n, x) < -800.0) return 0.0;
  std::vector<double> values;
  miller(static_cast<int>(n), x, values);
  return values.back();
}

std::vector<double> bessel_i_scaled_sequence(int nu_max, double x) {
  check_argument(x);
  if (nu_max < 0) throw std::invalid_argument("bessel: nu_max must be non-negative");
  std::vector<double> values(static_cast<std::size_t>(nu_max) + 1, 0.0);
  if (x == 0.0) {
    values[0] = 1.0;
    return values;
  }
  miller(nu_max, x, values);
  return values;
}

double coupling_log_scale(std::span<const double> couplings) {
  double s = 0.0;
  for (std::size_t n = 0; n < couplings.size(); ++n) s += couplings[n] / static_cast<double>(n + 1);
  return s;
}

int generalized_bessel_nodes(int nu_max, std::span<const double> couplings) {
  double total = 0.0;
  for (double j : couplings) total += std::fabs(j);
  const long need = 8L * (std::abs(nu_max) + static_cast<long>(std::ceil(total)));
  return std::max(256, next_pow2(need));
}

std::vector<double> generalized_bessel_scaled_sequence(int nu_max,
                                                       std::span<const double> couplings) {
  check_couplings(couplings);
  if (nu_max < 0) throw std::invalid_argument("generalized bessel: nu_max must be non-negative");
  const int m_nodes = generalized_bessel_nodes(nu_max, couplings);
  const double step = 2.0 * std::numbers::pi / m_nodes;
  std::vector<double> cosine(static_cast<std::size_t>(m_nodes));
  for (int m = 0; m < m_nodes; ++m) cosine[static_cast<std::size_t>(m)] = std::cos(step * m);

  const int half = m_nodes / 2;
  std::vector<double> symbol(static_cast<std::size_t>(half) + 1);
  for (int m = 0; m <= half; ++m) {
    double exponent = 0.0;
    for (std::size_t n = 0; n < couplings.size(); ++n) {
      const long idx = (static_cast<long>(n + 1) * m) % m_nodes;
      exponent += couplings[n] / static_cast<double>(n + 1) * (cosine[static_cast<std::size_t>(idx)] - 1.0);
    }
    symbol[static_cast<std::size_t>(m)] = std::exp(exponent);
  }

  std::vector<double> values(static_cast<std::size_t>(nu_max) + 1);
  for (int nu = 0; nu <= nu_max; ++nu) {
    double sum = symbol[0] + ((nu % 2 == 0) ? 1.0 : -1.0) * symbol[static_cast<std::size_t>(half)];
    for (int m = 1; m < half; ++m) {
      const long idx = (static_cast<long>(nu) * m) % m_nodes;
      sum += 2.0 * cosine[static_cast<std::size_t>(idx)] * symbol[static_cast<std::size_t>(m)];
    }
    values[static_cast<std::size_t>(nu)] = sum / m_nodes;
  }
  return values;
}

double generalized_bessel_scaled(int nu, std::span<const double> couplings) {
  const int n = std::abs(nu);
  return generalized_bessel_scaled_sequence(n, couplings).back();
}

std::vector<std::complex<double>> bessel_i_complex_scaled_sequence(int nu_max,
                                                                   std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("bessel: non-finite complex argument");
  if (nu_max < 0) throw std::invalid_argument("bessel: nu_max must be non-negative");
  const long need = 8L * (nu_max + static_cast<long>(std::ceil(std::abs(z))));
  const int m_nodes = std::max(256, next_pow2(need));
  const double step = 2.0 * std::numbers::pi / m_nodes;
  const int half = m_nodes / 2;
  std::vector<double> cosine(static_cast<std::size_t>(m_nodes));
  for (int m = 0; m < m_nodes; ++m) cosine[static_cast<std::size_t>(m)] = std::cos(step * m);
  std::vector<std::complex<double>> symbol(static_cast<std::size_t>(half) + 1);
  for (int m = 0; m <= half; ++m)
    symbol[static_cast<std::size_t>(m)] = std::exp(z * cosine[static_cast<std::size_t>(m)] - z.real());

  std::vector<std::complex<double>> values(static_cast<std::size_t>(nu_max) + 1);
  for (int nu = 0; nu <= nu_max; ++nu) {
    std::complex<double> sum = symbol[0] + ((nu % 2 == 0) ? 1.0 : -1.0) * symbol[static_cast<std::size_t>(half)];
    for (int m = 1; m < half; ++m) {
      const long idx = (static_cast<long>(nu) * m) % m_nodes;
      sum += 2.0 * cosine[static_cast<std::size_t>(idx)] * symbol[static_cast<std::size_t>(m)];
    }
    values[static_cast<std::size_t>(nu)] = sum / static_cast<double>(m_nodes);
  }

  // The trapezoid sum carries absolute error ~ eps e^{|Re z|}; orders with
  // I_nu(|z|) below that are taken from the power series instead.
  const double r = std::abs(z);
  if (r == 0.0) return values;
  const std::vector<double> modulus = bessel_i_scaled_sequence(nu_max, r);
  const std::complex<double> quarter_z2 = 0.25 * z * z;
  for (int nu = 0; nu <= nu_max; ++nu) {
    const double m = modulus[static_cast<std::size_t>(nu)];
    if (m == 0.0 || std::log(m) + r >= std::fabs(z.real())) continue;
    std::complex<double> term =
        std::exp(static_cast<double>(nu) * std::log(0.5 * z) - std::lgamma(nu + 1.0) - z.real());
    std::complex<double> sum = term;
    for (int k = 1; k < 10000; ++k) {
      term *= quarter_z2 / (static_cast<double>(k) * (nu + k));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    values[static_cast<std::size_t>(nu)] = sum;
  }
  return values;
}

}  // namespace hpchain::specfun
