#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "hpchain/log_value.hpp"

namespace hpchain::chain {

class LatticeSize {
 public:
  static LatticeSize infinite() { return LatticeSize(); }
  static LatticeSize finite(int sites);

  bool is_infinite() const { return !sites_.has_value(); }
  int sites() const;
  bool operator==(const LatticeSize&) const = default;

 private:
  LatticeSize() = default;
  std::optional<int> sites_;
};

// Chain with K = couplings.size() hopping ranges; couplings[n-1] is J_n.
struct ChainSpec {
  LatticeSize size = LatticeSize::infinite();
  std::vector<double> couplings;

  int range() const { return static_cast<int>(couplings.size()); }
  void validate() const;
};

// Sorted, distinct sites of the down spins (particles).
struct OccupationState {
  std::vector<int> sites;

  int count() const { return static_cast<int>(sites.size()); }
  bool operator==(const OccupationState&) const = default;
};

OccupationState make_state(std::vector<int> sites, LatticeSize size);
OccupationState psi0(int n, LatticeSize size);
OccupationState psi_impurity(int n, LatticeSize size, int p);

enum class Boundary { kPeriodic, kAntiperiodic };

// Fermion boundary condition of the spin ring in the n-particle sector.
Boundary jordan_wigner_boundary(int particles);

// Single-particle kernel <j| e^{-H} |k> on a ring (or the infinite line).
double propagator(const ChainSpec& spec, int j, int k, Boundary boundary = Boundary::kPeriodic);

// <out| e^{-H} |in> for the spin chain, from the free-fermion determinant.
LogValue amplitude(const ChainSpec& spec, const OccupationState& in, const OccupationState& out);

// ln |G_N / G_1| for psi0, i.e. half of ln L_hat_N.
LogValue echo_ratio(const ChainSpec& spec, int n);

// ln |G^x_N / G_1| for the impurity state displaced by p.
LogValue impurity_echo_ratio(const ChainSpec& spec, int n, int p);

// L_hat_N = |G_N / G_1|^2.
LogValue normalized_echo(const ChainSpec& spec, int n);

// |det[I_{j-k}(z)] / I_0(z)|^2 on the infinite line, complex coupling z.
LogValue complex_normalized_echo(int n, std::complex<double> z);

// Dispersion eps(k) = Sum_n c_n cos(n k), c_0 a constant shift.
struct DispersionModel {
  std::vector<double> cos_coefficients;

  double operator()(double k) const;

  // Fermion dispersion whose Boltzmann factor reproduces the spin-chain symbol.
  static DispersionModel from_couplings(std::span<const double> couplings);
};

// Kernel values <0| e^{-beta H_F} |d> for d = 0..max_distance, stored as
// values[d] * exp(log_scale), periodic momenta 2 pi q / L.
struct ScaledKernel {
  std::vector<double> values;
  double log_scale = 0.0;
};
ScaledKernel fermion_kernel(const DispersionModel& dispersion, int max_distance, LatticeSize size,
                            double beta);

// Slater determinant det[<j| e^{-beta H_F} |k>] over the first N sites.
LogValue fermion_amplitude(const DispersionModel& dispersion, int n, LatticeSize size, double beta);

}  // namespace hpchain::chain
