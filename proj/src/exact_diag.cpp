#include "hpchain/exact_diag.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "hpchain/errors.hpp"

namespace hpchain::chain {
namespace {

using Mask = std::uint32_t;

Mask to_mask(const OccupationState& state) {
  Mask m = 0;
  for (int s : state.sites) m |= Mask{1} << s;
  return m;
}

std::vector<Mask> sector(int sites, int particles) {
  std::vector<Mask> basis;
  for (Mask m = 0; m < (Mask{1} << sites); ++m)
    if (std::popcount(m) == particles) basis.push_back(m);
  return basis;
}

// Occupied sites strictly between a and a + n (mod L) along the hop.
int string_count(Mask m, int a, int n, int sites) {
  int count = 0;
  for (int t = 1; t < n; ++t) count += static_cast<int>((m >> ((a + t) % sites)) & 1U);
  return count;
}

}  // namespace

double ed_oracle_amplitude(const ChainSpec& spec, const OccupationState& in,
                           const OccupationState& out, HoppingStatistics statistics) {
  spec.validate();
  if (spec.size.is_infinite()) throw std::invalid_argument("ed_oracle: needs a finite ring");
  const int sites = spec.size.sites();
  if (sites > kMaxExactSites)
    throw CostGuardError("ed_oracle: cost guard, L = " + std::to_string(sites) + " exceeds " +
                         std::to_string(kMaxExactSites));
  if (sites <= 2 * spec.range()) throw std::invalid_argument("ed_oracle: need L > 2K");
  const OccupationState a = make_state(in.sites, spec.size);
  const OccupationState b = make_state(out.sites, spec.size);
  if (a.count() != b.count()) throw std::invalid_argument("ed_oracle: particle numbers differ");

  const std::vector<Mask> basis = sector(sites, a.count());
  if (basis.size() > static_cast<std::size_t>(kMaxSectorDimension))
    throw CostGuardError("ed_oracle: cost guard, sector dimension too large");
  std::unordered_map<Mask, Eigen::Index> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<Eigen::Index>(i));

  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Mask m = basis[static_cast<std::size_t>(col)];
    for (int n = 1; n <= spec.range(); ++n) {
      const double amp = -0.5 * spec.couplings[static_cast<std::size_t>(n - 1)] / n;
      if (amp == 0.0) continue;
      for (int j = 0; j < sites; ++j) {
        const int k = (j + n) % sites;
        const bool at_j = (m >> j) & 1U;
        const bool at_k = (m >> k) & 1U;
        if (at_j == at_k) continue;
        const Mask moved = m ^ (Mask{1} << j) ^ (Mask{1} << k);
        double sign = 1.0;
        if (statistics == HoppingStatistics::kJordanWigner && string_count(m, j, n, sites) % 2 != 0)
          sign = -1.0;
        h(index.at(moved), col) += sign * amp;
      }
    }
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::Index row_out = index.at(to_mask(b));
  const Eigen::Index row_in = index.at(to_mask(a));
  double result = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i)
    result += v(row_out, i) * std::exp(-solver.eigenvalues()(i)) * v(row_in, i);
  return result;
}

}  // namespace hpchain::chain
