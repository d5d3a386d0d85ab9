#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hpchain/chain.hpp"
#include "hpchain/log_value.hpp"
#include "hpchain/parallel.hpp"

namespace hpchain::average {

// Measure (J / 2a) exp(-J^2 / 4a) dJ on J >= 0; a = a_modulus * e^{i a_phase}.
struct AverageParams {
  double a_modulus = 1.0;
  double a_phase = 0.0;
  double quad_rel_tol = 1e-9;
  int max_nodes = 8192;
  Exec exec = Exec::kParallel;
};

// ln f(J) for a non-negative observable f.
using EchoFunction = std::function<LogValue(double)>;

struct AverageResult {
  LogValue value;               // ln <f>
  double error_estimate = 0.0;  // relative, from the last node doubling
  double peak_coupling = 0.0;   // J maximizing the weighted integrand
  int nodes = 0;
};

// Chain whose couplings are J * profile, profile[0] = 1 for the XX chain.
struct ChainModel {
  chain::LatticeSize size = chain::LatticeSize::infinite();
  std::vector<double> profile{1.0};
};

// Upper truncation of the J integral for N particles at width a.
double default_upper_limit(int n, double a);

AverageResult gaussian_average(const EchoFunction& f, const AverageParams& params, double upper_limit);

// <sqrt(L_hat_N)> and <|G^x_N / G_1|>.
AverageResult averaged_echo(int n, const AverageParams& params, const ChainModel& model = {});
AverageResult averaged_impurity_echo(int n, int p, const AverageParams& params,
                                     const ChainModel& model = {});

// (1/N) <|G^x/G_1|> / <|G/G_1|>.
double polyakov_ratio(int n, int p, const AverageParams& params, const ChainModel& model = {});

// <sqrt(L_hat_N)> with independent Gaussian couplings J_n of widths a_n (K <= 3).
AverageResult multi_gaussian_average(int n, std::span<const double> widths, const AverageParams& params);

struct NestedParams {
  double a = 1.0;
  double b = 0.0;
  double mu_floor = 1e-6;
};

struct NestedResult {
  LogValue value;       // ln Int dmu/mu e^{-N^2 (mu-a)^2/(4b)} <sqrt L_hat>_{2 mu}
  LogValue normalizer;  // ln Int dmu/mu e^{-N^2 (mu-a)^2/(4b)}
  double error_estimate = 0.0;
  bool degenerate = false;  // Gaussian in mu reaches mu_floor

  LogValue normalized() const { return value / normalizer; }
};

NestedResult nested_average(int n, const NestedParams& nested, const AverageParams& params);

// <L_hat_N(J e^{-i phi/2})> over the Gaussian of width |a|, phi = params.a_phase.
AverageResult complex_temperature_average(int n, const AverageParams& params);

struct MonteCarloResult {
  LogValue mean;
  double relative_standard_error = 0.0;
  int samples = 0;
};

// Coupling samples J = sqrt(-4a ln U), U uniform from a mt19937_64 stream.
MonteCarloResult monte_carlo_average(const EchoFunction& f, double a, int samples, std::uint64_t seed,
                                     Exec exec = Exec::kParallel);

}  // namespace hpchain::average
