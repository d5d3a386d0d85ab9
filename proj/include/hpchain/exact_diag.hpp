#pragma once

#include "hpchain/chain.hpp"

namespace hpchain::chain {

// kSpin: hopping of the spin chain as written, sigma^-_j sigma^+_{j+n}.
// kJordanWigner: the same hops dressed with fermion string signs.
enum class HoppingStatistics { kSpin, kJordanWigner };

inline constexpr int kMaxExactSites = 14;
inline constexpr int kMaxSectorDimension = 10000;

// <out| e^{-H} |in> by dense diagonalization of the fixed-N sector of
// H = -(1/2) Sum_j Sum_n (J_n/n) (sigma^-_j sigma^+_{j+n} + h.c.) on a ring.
double ed_oracle_amplitude(const ChainSpec& spec, const OccupationState& in,
                           const OccupationState& out,
                           HoppingStatistics statistics = HoppingStatistics::kSpin);

}  // namespace hpchain::chain
