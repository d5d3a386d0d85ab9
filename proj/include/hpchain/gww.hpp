#pragma once

#include <span>

#include "hpchain/log_value.hpp"

namespace hpchain::gww {

struct GwwParams {
  int n = 1;
  double sigma = 0.0;
};

enum class Phase { kUngapped, kGapped };

struct PlanarResult {
  double sigma_star = 0.0;
  double free_energy = 0.0;      // F(sigma*)
  double entropy_density = 0.0;  // s = F(sigma*) - sigma*^2 / (4a)
  Phase phase = Phase::kUngapped;
};

// ln det_N [I_{j-k}(N sigma)].
LogValue gww_log_partition(const GwwParams& params);

// ln det_N of the symbol exp{Sum_n (J_n/n) cos(n theta)}.
LogValue multi_coupling_log_partition(int n, std::span<const double> couplings);

// Planar free energy F(sigma) and its derivative.
double planar_free_energy(double sigma);
double planar_free_energy_derivative(double sigma);

// sigma^2 / (4a) - F(sigma + source).
double effective_action(double sigma, double a, double source = 0.0);

// Closed-form saddle of the effective action.
PlanarResult saddle_entropy(double a);

// Numerical minimization of effective_action over sigma >= max(0, -source).
PlanarResult minimize_effective_action(double a, double source = 0.0);

// Planar Polyakov loop F'(sigma*(a)).
double planar_polyakov(double a);

// a(T) = 2 (3x - 1) / (x - 1)^3 with x = exp(1 / (2T)), and its inverse.
double a_of_t(double t);
double t_of_a(double a);
double hawking_page_temperature();

}  // namespace hpchain::gww
