#pragma once

namespace hpchain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitIdentity = 3;

int run_app(int argc, char** argv);

}  // namespace hpchain::cli
