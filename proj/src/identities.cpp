#include "hpchain/identities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "hpchain/linalg.hpp"
#include "hpchain/specfun.hpp"

namespace hpchain::identities {
namespace {

constexpr double kPropTolerance = 1e-12;
constexpr double kDetTolerance = 1e-9;
constexpr double kFermionInfiniteTolerance = 1e-9;
constexpr double kFermionFiniteTolerance = 1e-6;
constexpr double kHeineSzegoTolerance = 1e-8;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string couplings_label(std::span<const double> js) {
  std::string s = "(";
  for (std::size_t i = 0; i < js.size(); ++i) s += (i ? "," : "") + fmt(js[i]);
  return s + ")";
}

Evaluation compare_values(std::string point, double lhs, double rhs, double tol, bool relative) {
  Evaluation e{std::move(point), lhs, rhs, std::fabs(lhs - rhs), 0.0, false};
  const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
  e.rel_error = scale == 0.0 ? 0.0 : e.abs_error / scale;
  e.passed = (relative ? e.rel_error : e.abs_error) <= tol;
  return e;
}

// lhs and rhs in log form; rel_error = |lhs/rhs - 1|.
Evaluation compare_logs(std::string point, LogValue lhs, LogValue rhs, double tol) {
  Evaluation e{std::move(point), lhs.ln_magnitude, rhs.ln_magnitude, 0.0, 0.0, false};
  if (lhs.is_zero() && rhs.is_zero()) {
    e.passed = true;
    return e;
  }
  if (lhs.sign != rhs.sign) {
    e.abs_error = e.rel_error = std::numeric_limits<double>::infinity();
    return e;
  }
  e.abs_error = std::fabs(lhs.ln_magnitude - rhs.ln_magnitude);
  e.rel_error = std::fabs(std::expm1(lhs.ln_magnitude - rhs.ln_magnitude));
  e.passed = e.rel_error <= tol;
  return e;
}

Eigen::MatrixXd toeplitz(std::span<const double> entries, int size) {
  Eigen::MatrixXd m(size, size);
  for (int r = 0; r < size; ++r)
    for (int s = 0; s < size; ++s) m(r, s) = entries[static_cast<std::size_t>(std::abs(r - s))];
  return m;
}

std::vector<double> spike(int k, double j) {
  std::vector<double> c(static_cast<std::size_t>(k), 0.0);
  c.back() = k * j;
  return c;
}

}  // namespace

std::string to_string(IdentityId id) {
  switch (id) {
    case IdentityId::kPropBessel: return "PROP_BESSEL";
    case IdentityId::kDetIdK2: return "DET_ID_K2";
    case IdentityId::kDetIdGeneralK: return "DET_ID_GENERAL_K";
    case IdentityId::kFermionEquivalence: return "FERMION_EQUIVALENCE";
    case IdentityId::kHeineSzego: return "HEINE_SZEGO";
  }
  return "UNKNOWN";
}

IdentityId identity_from_string(const std::string& name) {
  for (IdentityId id : {IdentityId::kPropBessel, IdentityId::kDetIdK2, IdentityId::kDetIdGeneralK,
                        IdentityId::kFermionEquivalence, IdentityId::kHeineSzego})
    if (to_string(id) == name) return id;
  throw std::invalid_argument("unknown identity: " + name);
}

bool IdentityReport::passed() const {
  return std::all_of(evaluations.begin(), evaluations.end(), [](const Evaluation& e) { return e.passed; });
}

double IdentityReport::max_abs_error() const {
  double m = 0.0;
  for (const Evaluation& e : evaluations) m = std::max(m, e.abs_error);
  return m;
}

double IdentityReport::max_rel_error() const {
  double m = 0.0;
  for (const Evaluation& e : evaluations) m = std::max(m, e.rel_error);
  return m;
}

std::vector<Evaluation> IdentityReport::failures() const {
  std::vector<Evaluation> out;
  for (const Evaluation& e : evaluations)
    if (!e.passed) out.push_back(e);
  return out;
}

void IdentityReport::merge(const IdentityReport& other) {
  if (other.id != id) throw std::invalid_argument("IdentityReport: cannot merge different identities");
  tolerance = std::max(tolerance, other.tolerance);
  evaluations.insert(evaluations.end(), other.evaluations.begin(), other.evaluations.end());
}

IdentityReport check_prop_bessel(int nu_max, std::span<const double> grid, int k,
                                 const CheckOptions& options) {
  if (nu_max < 0 || k < 1) throw std::invalid_argument("prop_bessel: need nu_max >= 0, K >= 1");
  IdentityReport report{IdentityId::kPropBessel, false, false, kPropTolerance, {}};
  for (double j : grid) {
    const std::vector<double> couplings = spike(k, j);
    std::vector<double> lhs = specfun::generalized_bessel_scaled_sequence(nu_max, couplings);
    lhs[0] *= 1.0 + options.kernel_perturbation;
    for (int nu = -nu_max; nu <= nu_max; ++nu) {
      const double l = lhs[static_cast<std::size_t>(std::abs(nu))];
      const double r = nu % k == 0 ? specfun::bessel_i_scaled(nu / k, j) : 0.0;
      report.evaluations.push_back(compare_values(
          "K=" + std::to_string(k) + " nu=" + std::to_string(nu) + " J=" + fmt(j), l, r,
          kPropTolerance, false));
    }
  }
  return report;
}

IdentityReport check_det_identity(int k, int n, double j, const CheckOptions& options) {
  if (k < 1 || n < 1) throw std::invalid_argument("det_identity: need K, N >= 1");
  if (!std::isfinite(j) || j < 0.0) throw std::invalid_argument("det_identity: need J >= 0");
  const int size = k * n;
  const std::vector<double> general = specfun::generalized_bessel_scaled_sequence(size - 1, spike(k, j));
  Eigen::MatrixXd big = toeplitz(general, size);
  big(0, 0) *= 1.0 + options.kernel_perturbation;
  const LogValue lhs = linalg::log_det(big);
  const std::vector<double> bessel = specfun::bessel_i_scaled_sequence(n - 1, j);
  const LogValue rhs = linalg::log_det(toeplitz(bessel, n)).pow(k);
  // both sides carry the same factor e^{-K N J}
  const IdentityId id = k == 2 ? IdentityId::kDetIdK2 : IdentityId::kDetIdGeneralK;
  IdentityReport report{id, true, true, kDetTolerance, {}};
  report.evaluations.push_back(compare_logs(
      "K=" + std::to_string(k) + " N=" + std::to_string(n) + " J=" + fmt(j), lhs, rhs, kDetTolerance));
  return report;
}

IdentityReport check_fermion_equivalence(int k, int n, chain::LatticeSize size,
                                         std::span<const double> couplings, const CheckOptions& options) {
  if (static_cast<int>(couplings.size()) != k)
    throw std::invalid_argument("fermion_equivalence: coupling vector must have K entries");
  const chain::ChainSpec spec{size, {couplings.begin(), couplings.end()}};
  const LogValue rhs = chain::amplitude(spec, chain::psi0(n, size), chain::psi0(n, size));
  const chain::DispersionModel model = chain::DispersionModel::from_couplings(couplings);
  const chain::ScaledKernel kernel = chain::fermion_kernel(model, n - 1, size, 1.0);
  Eigen::MatrixXd m = toeplitz(kernel.values, n);
  m(0, 0) *= 1.0 + options.kernel_perturbation;
  const LogValue lhs = linalg::log_det(m) * LogValue::from_log(n * kernel.log_scale);
  const double tol = size.is_infinite() ? kFermionInfiniteTolerance : kFermionFiniteTolerance;
  IdentityReport report{IdentityId::kFermionEquivalence, true, true, tol, {}};
  const std::string lattice = size.is_infinite() ? "inf" : std::to_string(size.sites());
  report.evaluations.push_back(compare_logs("K=" + std::to_string(k) + " N=" + std::to_string(n) +
                                                " L=" + lattice + " J=" + couplings_label(couplings),
                                            lhs, rhs, tol));
  return report;
}

IdentityReport check_heine_szego(int n_max, std::span<const double> grid, const CheckOptions& options) {
  if (n_max < 1 || n_max > 4) throw std::invalid_argument("heine_szego: need 1 <= N_max <= 4");
  IdentityReport report{IdentityId::kHeineSzego, true, true, kHeineSzegoTolerance, {}};
  for (int n = 1; n <= n_max; ++n) {
    for (double j : grid) {
      const std::vector<double> bessel = specfun::bessel_i_scaled_sequence(n - 1, j);
      Eigen::MatrixXd m = toeplitz(bessel, n);
      m(0, 0) *= 1.0 + options.kernel_perturbation;
      const LogValue lhs = linalg::log_det(m) * LogValue::from_log(n * j);
      const double couplings[1] = {j};
      const LogValue rhs = eigenvalue_integral(n, couplings, 0, options.exec).partition;
      report.evaluations.push_back(compare_logs(
          "N=" + std::to_string(n) + " J=" + fmt(j), lhs, rhs, kHeineSzegoTolerance));
    }
  }
  return report;
}

std::size_t Manifest::grid_size() const {
  std::size_t total = 0;
  for (const ManifestCheck& c : checks) {
    switch (c.id) {
      case IdentityId::kPropBessel: total += c.ks.size() * c.js.size(); break;
      case IdentityId::kDetIdK2: total += c.ns.size() * c.js.size(); break;
      case IdentityId::kDetIdGeneralK:
        for (int k : c.ks)
          for (int n : c.ns)
            if (c.max_kn == 0 || k * n <= c.max_kn) total += c.js.size();
        break;
      case IdentityId::kFermionEquivalence: total += c.cases.size(); break;
      case IdentityId::kHeineSzego: total += static_cast<std::size_t>(c.n_max) * c.js.size(); break;
    }
  }
  return total;
}

Manifest default_manifest() {
  Manifest m;
  m.version = kManifestVersion;
  ManifestCheck prop;
  prop.id = IdentityId::kPropBessel;
  prop.nu_max = 24;
  prop.ks = {2, 3, 4, 5};
  prop.js = {0.0, 0.5, 1.0, 2.5, 5.0};
  m.checks.push_back(prop);

  ManifestCheck k2;
  k2.id = IdentityId::kDetIdK2;
  k2.ns = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  k2.js = {0.0, 0.5, 1.0, 2.0, 5.0};
  m.checks.push_back(k2);

  ManifestCheck general;
  general.id = IdentityId::kDetIdGeneralK;
  general.ks = {3, 4, 5};
  general.ns = {1, 2, 3, 4, 5, 6, 7, 8};
  general.max_kn = 24;
  general.js = {0.0, 1.0, 2.0, 5.0};
  m.checks.push_back(general);

  ManifestCheck fermion;
  fermion.id = IdentityId::kFermionEquivalence;
  fermion.cases = {
      {1, 4, std::nullopt, {1.5}},     {1, 3, 64, {1.0}},          {1, 4, 64, {2.0}},
      {2, 4, 64, {1.0, 0.8}},          {2, 4, std::nullopt, {1.0, 0.8}},
      {3, 3, std::nullopt, {1.0, 0.5, 0.3}}, {2, 6, std::nullopt, {2.0, 1.0}},
      {1, 4, std::nullopt, {0.0}},
  };
  m.checks.push_back(fermion);

  ManifestCheck heine;
  heine.id = IdentityId::kHeineSzego;
  heine.n_max = 3;
  heine.js = {0.5, 1.0, 2.0};
  m.checks.push_back(heine);
  return m;
}

Manifest parse_manifest(const nlohmann::json& doc) {
  Manifest m;
  m.version = doc.at("version").get<std::string>();
  if (m.version != kManifestVersion)
    throw std::invalid_argument("identity manifest: unsupported version " + m.version);
  for (const auto& item : doc.at("checks")) {
    ManifestCheck c;
    c.id = identity_from_string(item.at("identity").get<std::string>());
    c.nu_max = item.value("nu_max", 0);
    c.n_max = item.value("N_max", 0);
    c.max_kn = item.value("max_KN", 0);
    c.ks = item.value("K", std::vector<int>{});
    c.ns = item.value("N", std::vector<int>{});
    c.js = item.value("J", std::vector<double>{});
    if (c.id == IdentityId::kDetIdK2) c.ks = {2};
    for (const auto& fc : item.value("cases", nlohmann::json::array())) {
      FermionCase f;
      f.k = fc.at("K").get<int>();
      f.n = fc.at("N").get<int>();
      if (fc.at("L").is_number_integer()) f.sites = fc.at("L").get<int>();
      else if (fc.at("L").get<std::string>() != "inf")
        throw std::invalid_argument("identity manifest: L must be an integer or \"inf\"");
      f.couplings = fc.at("J").get<std::vector<double>>();
      c.cases.push_back(f);
    }
    m.checks.push_back(c);
  }
  return m;
}

nlohmann::json to_json(const Manifest& manifest) {
  nlohmann::json checks = nlohmann::json::array();
  for (const ManifestCheck& c : manifest.checks) {
    nlohmann::json item{{"identity", to_string(c.id)}};
    if (c.nu_max) item["nu_max"] = c.nu_max;
    if (c.n_max) item["N_max"] = c.n_max;
    if (c.max_kn) item["max_KN"] = c.max_kn;
    if (!c.ks.empty() && c.id != IdentityId::kDetIdK2) item["K"] = c.ks;
    if (!c.ns.empty()) item["N"] = c.ns;
    if (!c.js.empty()) item["J"] = c.js;
    if (!c.cases.empty()) {
      nlohmann::json cases = nlohmann::json::array();
      for (const FermionCase& f : c.cases) {
        nlohmann::json fc{{"K", f.k}, {"N", f.n}, {"J", f.couplings}};
        if (f.sites) fc["L"] = *f.sites;
        else fc["L"] = "inf";
        cases.push_back(fc);
      }
      item["cases"] = cases;
    }
    checks.push_back(item);
  }
  return {{"version", manifest.version}, {"checks", checks}};
}

std::vector<IdentityReport> run_manifest(const Manifest& manifest, const CheckOptions& options) {
  std::vector<IdentityReport> reports;
  for (const ManifestCheck& c : manifest.checks) {
    std::optional<IdentityReport> combined;
    const auto add = [&](IdentityReport r) {
      r.id = c.id;
      if (combined) combined->merge(r);
      else combined = r;
    };
    switch (c.id) {
      case IdentityId::kPropBessel:
        for (int k : c.ks) add(check_prop_bessel(c.nu_max, c.js, k, options));
        break;
      case IdentityId::kDetIdK2:
        for (int n : c.ns)
          for (double j : c.js) add(check_det_identity(2, n, j, options));
        break;
      case IdentityId::kDetIdGeneralK:
        for (int k : c.ks)
          for (int n : c.ns)
            if (c.max_kn == 0 || k * n <= c.max_kn)
              for (double j : c.js) add(check_det_identity(k, n, j, options));
        break;
      case IdentityId::kFermionEquivalence:
        for (const FermionCase& f : c.cases) {
          const chain::LatticeSize size =
              f.sites ? chain::LatticeSize::finite(*f.sites) : chain::LatticeSize::infinite();
          add(check_fermion_equivalence(f.k, f.n, size, f.couplings, options));
        }
        break;
      case IdentityId::kHeineSzego:
        add(check_heine_szego(c.n_max, c.js, options));
        break;
    }
    if (combined) reports.push_back(*combined);
  }
  return reports;
}

nlohmann::json to_json(const IdentityReport& report) {
  nlohmann::json failures = nlohmann::json::array();
  for (const Evaluation& e : report.failures())
    failures.push_back({{"point", e.point}, {"lhs", e.lhs}, {"rhs", e.rhs},
                        {"abs_error", e.abs_error}, {"rel_error", e.rel_error}});
  return {{"identity", to_string(report.id)},
          {"points", report.evaluations.size()},
          {"tolerance", report.tolerance},
          {"tolerance_kind", report.relative ? "relative" : "absolute"},
          {"values_in_log_domain", report.log_values},
          {"max_abs_error", report.max_abs_error()},
          {"max_rel_error", report.max_rel_error()},
          {"passed", report.passed()},
          {"failures", failures}};
}

std::string format_table(std::span<const IdentityReport> reports) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-20s %7s %12s %12s %10s  %s\n", "identity", "points", "max_abs",
                "max_rel", "tol", "result");
  out << line;
  for (const IdentityReport& r : reports) {
    std::snprintf(line, sizeof line, "%-20s %7zu %12.3e %12.3e %10.1e  %s\n", to_string(r.id).c_str(),
                  r.evaluations.size(), r.max_abs_error(), r.max_rel_error(), r.tolerance,
                  r.passed() ? "PASS" : "FAIL");
    out << line;
  }
  return out.str();
}

}  // namespace hpchain::identities
