#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "hpchain/chain.hpp"
#include "hpchain/log_value.hpp"
#include "hpchain/parallel.hpp"

namespace hpchain::identities {

enum class IdentityId { kPropBessel, kDetIdK2, kDetIdGeneralK, kFermionEquivalence, kHeineSzego };

std::string to_string(IdentityId id);
IdentityId identity_from_string(const std::string& name);

struct Evaluation {
  std::string point;  // e.g. "K=2 N=3 J=1"
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  bool passed = false;
};

struct IdentityReport {
  IdentityId id = IdentityId::kPropBessel;
  bool relative = true;      // tolerance applies to rel_error, else abs_error
  bool log_values = false;   // lhs/rhs hold ln|value|
  double tolerance = 0.0;
  std::vector<Evaluation> evaluations;

  bool passed() const;
  double max_abs_error() const;
  double max_rel_error() const;
  std::vector<Evaluation> failures() const;
  void merge(const IdentityReport& other);
};

struct CheckOptions {
  double kernel_perturbation = 0.0;  // multiplies one left-hand kernel entry by (1 + delta)
  Exec exec = Exec::kParallel;
};

// I^{(1,K)}_nu(0,..,0,K J) against I_{nu/K}(J) (zero unless K | nu), scaled by e^{-J}.
IdentityReport check_prop_bessel(int nu_max, std::span<const double> grid, int k,
                                 const CheckOptions& options = {});

// det_{KN}[I^{(1,K)}_{j-k}(0,..,0,K J)] against det_N[I_{j-k}(J)]^K.
IdentityReport check_det_identity(int k, int n, double j, const CheckOptions& options = {});

// Spin-chain determinant against the fermion Slater determinant.
IdentityReport check_fermion_equivalence(int k, int n, chain::LatticeSize size,
                                         std::span<const double> couplings,
                                         const CheckOptions& options = {});

// Bessel Toeplitz determinant against a direct N-fold eigenvalue-angle quadrature.
IdentityReport check_heine_szego(int n_max, std::span<const double> grid, const CheckOptions& options = {});

struct EigenvalueIntegral {
  LogValue partition;       // (1/N!) (2 pi)^{-N} Int |Delta|^2 Prod w(theta_i)
  double trace_mean = 0.0;  // <Re Tr U>
};

// Product trapezoid rule over the N eigenvalue angles with weight
// w(theta) = exp{Sum_n (J_n/n) cos(n theta)}; nodes_per_angle = 0 picks a default.
EigenvalueIntegral eigenvalue_integral(int n, std::span<const double> couplings, int nodes_per_angle = 0,
                                       Exec exec = Exec::kParallel);

struct FermionCase {
  int k = 1;
  int n = 1;
  std::optional<int> sites;  // empty for the infinite line
  std::vector<double> couplings;
};

struct ManifestCheck {
  IdentityId id = IdentityId::kPropBessel;
  int nu_max = 0;
  int n_max = 0;
  int max_kn = 0;
  std::vector<int> ks;
  std::vector<int> ns;
  std::vector<double> js;
  std::vector<FermionCase> cases;
};

struct Manifest {
  std::string version;
  std::vector<ManifestCheck> checks;

  std::size_t grid_size() const;
};

inline constexpr const char* kManifestVersion = "hpchain-identities/1";

Manifest default_manifest();
Manifest parse_manifest(const nlohmann::json& doc);
nlohmann::json to_json(const Manifest& manifest);

std::vector<IdentityReport> run_manifest(const Manifest& manifest, const CheckOptions& options = {});

nlohmann::json to_json(const IdentityReport& report);
std::string format_table(std::span<const IdentityReport> reports);

}  // namespace hpchain::identities
