#include "hpchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "hpchain/circle_measure.hpp"
#include "hpchain/linalg.hpp"
#include "hpchain/specfun.hpp"

namespace hpchain::chain {
namespace {

double boundary_offset(Boundary b) { return b == Boundary::kAntiperiodic ? 0.5 : 0.0; }

CircleMeasure symbol_measure(const ChainSpec& spec, int degree, Boundary boundary) {
  if (spec.size.is_infinite())
    return CircleMeasure::from_couplings(spec.couplings,
                                         CircleMeasure::nodes_for(degree, spec.couplings), 0.0);
  return CircleMeasure::from_couplings(spec.couplings, spec.size.sites(), boundary_offset(boundary));
}

// Kernel g(d) / exp(Sum J_n/n) for |d| <= max_distance.
std::vector<double> scaled_kernel(const ChainSpec& spec, int max_distance, Boundary boundary) {
  if (spec.size.is_infinite())
    return specfun::generalized_bessel_scaled_sequence(max_distance, spec.couplings);
  const int l = spec.size.sites();
  const double offset = boundary_offset(boundary);
  std::vector<double> symbol(static_cast<std::size_t>(l));
  std::vector<double> momentum(static_cast<std::size_t>(l));
  for (int q = 0; q < l; ++q) {
    const double k = 2.0 * std::numbers::pi * (q + offset) / l;
    double exponent = 0.0;
    for (std::size_t n = 0; n < spec.couplings.size(); ++n)
      exponent += spec.couplings[n] / static_cast<double>(n + 1) *
                  (std::cos(static_cast<double>(n + 1) * k) - 1.0);
    symbol[static_cast<std::size_t>(q)] = std::exp(exponent);
    momentum[static_cast<std::size_t>(q)] = k;
  }
  std::vector<double> kernel(static_cast<std::size_t>(max_distance) + 1);
  for (int d = 0; d <= max_distance; ++d) {
    double sum = 0.0;
    for (int q = 0; q < l; ++q)
      sum += std::cos(momentum[static_cast<std::size_t>(q)] * d) * symbol[static_cast<std::size_t>(q)];
    kernel[static_cast<std::size_t>(d)] = sum / l;
  }
  return kernel;
}

bool is_block(const std::vector<int>& sites, int start) {
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (sites[i] != start + static_cast<int>(i)) return false;
  return true;
}

// True if a = {c..c+n-1} and b = {c..c+n-2, c+n-1+p} for some p >= 1.
bool is_impurity_pair(const std::vector<int>& a, const std::vector<int>& b, int c, int& p) {
  const int n = static_cast<int>(a.size());
  if (!is_block(a, c)) return false;
  for (int i = 0; i + 1 < n; ++i)
    if (b[static_cast<std::size_t>(i)] != c + i) return false;
  p = b.back() - (c + n - 1);
  return p >= 1;
}

LogValue lu_amplitude(const ChainSpec& spec, const OccupationState& in, const OccupationState& out,
                      Boundary boundary) {
  const int n = in.count();
  int max_distance = 0;
  for (int r : out.sites)
    for (int s : in.sites) max_distance = std::max(max_distance, std::abs(r - s));
  const std::vector<double> kernel = scaled_kernel(spec, max_distance, boundary);
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      m(r, s) = kernel[static_cast<std::size_t>(std::abs(out.sites[static_cast<std::size_t>(r)] -
                                                         in.sites[static_cast<std::size_t>(s)]))];
  const double scale = specfun::coupling_log_scale(spec.couplings);
  return linalg::log_det(m) * LogValue::from_log(n * scale);
}

void check_state(const OccupationState& state, LatticeSize size) {
  if (state.sites.empty()) throw std::invalid_argument("state: need at least one particle");
  for (std::size_t i = 0; i < state.sites.size(); ++i) {
    if (i > 0 && state.sites[i] <= state.sites[i - 1])
      throw std::invalid_argument("state: sites must be sorted and distinct");
    if (!size.is_infinite() && (state.sites[i] < 0 || state.sites[i] >= size.sites()))
      throw std::invalid_argument("state: site outside the ring");
  }
}

}  // namespace

LatticeSize LatticeSize::finite(int sites) {
  if (sites < 1) throw std::invalid_argument("LatticeSize: need at least one site");
  LatticeSize s;
  s.sites_ = sites;
  return s;
}

int LatticeSize::sites() const {
  if (!sites_) throw std::logic_error("LatticeSize: infinite lattice has no site count");
  return *sites_;
}

void ChainSpec::validate() const {
  if (couplings.empty()) throw std::invalid_argument("ChainSpec: need K >= 1");
  for (double j : couplings)
    if (!std::isfinite(j) || j < 0.0)
      throw std::invalid_argument("ChainSpec: couplings must be finite and non-negative");
}

OccupationState make_state(std::vector<int> sites, LatticeSize size) {
  std::sort(sites.begin(), sites.end());
  OccupationState state{std::move(sites)};
  check_state(state, size);
  return state;
}

OccupationState psi0(int n, LatticeSize size) {
  if (n < 1) throw std::invalid_argument("psi0: need N >= 1");
  if (!size.is_infinite() && n > size.sites() - 1)
    throw std::invalid_argument("psi0: need N <= L - 1");
  std::vector<int> sites(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sites[static_cast<std::size_t>(i)] = i;
  return OccupationState{std::move(sites)};
}

OccupationState psi_impurity(int n, LatticeSize size, int p) {
  if (p < 1) throw std::invalid_argument("psi_impurity: need p >= 1");
  OccupationState state = psi0(n, size);
  state.sites.back() = n - 1 + p;
  if (!size.is_infinite() && state.sites.back() > size.sites() - 1)
    throw std::invalid_argument("psi_impurity: need N - 1 + p <= L - 1");
  return state;
}

Boundary jordan_wigner_boundary(int particles) {
  return particles % 2 == 0 ? Boundary::kAntiperiodic : Boundary::kPeriodic;
}

double propagator(const ChainSpec& spec, int j, int k, Boundary boundary) {
  spec.validate();
  const int d = std::abs(j - k);
  const std::vector<double> kernel = scaled_kernel(spec, d, boundary);
  return kernel.back() * std::exp(specfun::coupling_log_scale(spec.couplings));
}

LogValue amplitude(const ChainSpec& spec, const OccupationState& in, const OccupationState& out) {
  spec.validate();
  check_state(in, spec.size);
  check_state(out, spec.size);
  if (in.count() != out.count())
    throw std::invalid_argument("amplitude: states must have the same particle number");
  const int n = in.count();
  const Boundary boundary =
      spec.size.is_infinite() ? Boundary::kPeriodic : jordan_wigner_boundary(n);
  const int c = std::min(in.sites.front(), out.sites.front());

  if (spec.size.is_infinite() || n < spec.size.sites()) {
    int p = 0;
    if (in == out && is_block(in.sites, c)) {
      const CircleMeasure measure = symbol_measure(spec, n, boundary);
      return SzegoBasis(measure, n).toeplitz_det(n);
    }
    const bool forward = is_impurity_pair(out.sites, in.sites, c, p);
    if (forward || is_impurity_pair(in.sites, out.sites, c, p)) {
      const CircleMeasure measure = symbol_measure(spec, n + p, boundary);
      const SzegoBasis basis(measure, n);
      return basis.toeplitz_det(n - 1) * LogValue::from_log(basis.log_norm(n - 1)) *
             basis.projection(n - 1, n - 1 + p);
    }
  }
  return lu_amplitude(spec, in, out, boundary);
}

LogValue echo_ratio(const ChainSpec& spec, int n) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("echo_ratio: need N >= 1");
  const OccupationState state = psi0(n, spec.size);
  const Boundary boundary =
      spec.size.is_infinite() ? Boundary::kPeriodic : jordan_wigner_boundary(n);
  const CircleMeasure measure = symbol_measure(spec, n, boundary);
  const SzegoBasis basis(measure, n);
  LogValue g1 = LogValue::from_log(2.0 * basis.log_norm(0));
  if (boundary != Boundary::kPeriodic) {
    const CircleMeasure periodic = symbol_measure(spec, 1, Boundary::kPeriodic);
    g1 = SzegoBasis(periodic, 1).toeplitz_det(1);
  }
  return (basis.toeplitz_det(n) / g1).abs();
}

LogValue impurity_echo_ratio(const ChainSpec& spec, int n, int p) {
  spec.validate();
  const OccupationState in = psi0(n, spec.size);
  const OccupationState out = psi_impurity(n, spec.size, p);
  const LogValue g1 = amplitude(spec, psi0(1, spec.size), psi0(1, spec.size));
  return (amplitude(spec, in, out) / g1).abs();
}

LogValue normalized_echo(const ChainSpec& spec, int n) { return echo_ratio(spec, n).pow(2); }

LogValue complex_normalized_echo(int n, std::complex<double> z) {
  if (n < 1) throw std::invalid_argument("complex_normalized_echo: need N >= 1");
  const std::vector<std::complex<double>> entries = specfun::bessel_i_complex_scaled_sequence(n - 1, z);
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) m(r, s) = entries[static_cast<std::size_t>(std::abs(r - s))];
  const linalg::ComplexLogValue det = linalg::log_det(m);
  if (det.is_zero()) return LogValue::zero();
  const double ln_i0 = std::log(std::abs(entries[0]));
  return LogValue::from_log(2.0 * (det.ln_magnitude - ln_i0 + (n - 1) * z.real()));
}

}  // namespace hpchain::chain
