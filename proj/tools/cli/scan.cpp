#include "cli/scan.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "cli/echo_cache.hpp"
#include "hpchain/average.hpp"
#include "hpchain/errors.hpp"
#include "hpchain/exact_diag.hpp"
#include "hpchain/gww.hpp"

namespace hpchain::cli {
namespace {

struct Point {
  double a;
  double t;
};

std::vector<Point> temperature_points(const RunConfig& c) {
  std::vector<Point> points;
  for (double t : c.t_list) points.push_back({gww::a_of_t(t), t});
  for (double a : c.a_list) points.push_back({a, gww::t_of_a(a)});
  return points;
}

std::string lattice_label(const std::optional<int>& sites) {
  return sites ? std::to_string(*sites) : "inf";
}

chain::LatticeSize lattice_of(const std::optional<int>& sites) {
  return sites ? chain::LatticeSize::finite(*sites) : chain::LatticeSize::infinite();
}

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

average::AverageParams params_for(const RunConfig& c, double a) {
  average::AverageParams p;
  p.a_modulus = a;
  p.quad_rel_tol = c.quad_rel_tol;
  p.max_nodes = c.max_nodes;
  return p;
}

class RowEvaluator {
 public:
  explicit RowEvaluator(const RunConfig& config)
      : config_(config), cache_dir_(EchoCache::directory_from_env()) {}

  void compute(ScanRow& row, std::size_t index) {
    switch (config_.mode) {
      case Mode::kFig1:
      case Mode::kFig2: echo_row(row, index); break;
      case Mode::kPolyakov: polyakov_row(row, index); break;
      case Mode::kGww: gww_row(row); break;
      case Mode::kNested: nested_row(row); break;
      case Mode::kComplexTemp: complex_row(row); break;
      case Mode::kOracleCompare: oracle_row(row); break;
      case Mode::kIdentityCheck: throw std::logic_error("identity-check has no scan rows");
    }
  }

 private:
  average::ChainModel model() const { return {lattice_of(config_.sites), config_.profile}; }

  average::EchoFunction echo_function(int n, int p) {
    const average::ChainModel m = model();
    average::EchoFunction f = [m, n, p](double j) {
      chain::ChainSpec spec{m.size, m.profile};
      for (double& c : spec.couplings) c *= j;
      return p == 0 ? chain::echo_ratio(spec, n) : chain::impurity_echo_ratio(spec, n, p);
    };
    if (!cache_dir_) return f;
    std::string key = "echo;N=" + std::to_string(n) + ";p=" + std::to_string(p) +
                      ";L=" + lattice_label(config_.sites) + ";profile=";
    for (double g : config_.profile) key += format_number(g) + ",";
    auto& cache = caches_[key];
    if (!cache) cache = std::make_unique<EchoCache>(*cache_dir_, key);
    return cache->wrap(std::move(f));
  }

  void save_caches() {
    for (auto& [key, cache] : caches_) cache->save();
  }

  // ln <f> and its relative error, by quadrature or by Monte Carlo.
  std::pair<LogValue, double> average_of(int n, int p, double a, std::size_t index) {
    const average::EchoFunction f = echo_function(n, p);
    if (config_.mc_samples > 0) {
      const std::uint64_t seed = config_.seed + 0x9E3779B97F4A7C15ULL * (index + 1);
      const average::MonteCarloResult r =
          average::monte_carlo_average(f, a, config_.mc_samples, seed);
      save_caches();
      return {r.mean, r.relative_standard_error};
    }
    const average::AverageResult r =
        average::gaussian_average(f, params_for(config_, a), average::default_upper_limit(n, a));
    save_caches();
    return {r.value, r.error_estimate};
  }

  void echo_row(ScanRow& row, std::size_t index) {
    const auto [value, error] = average_of(row.n, 0, row.a, index);
    row.value = value.ln_magnitude;
    row.error_estimate = error;
    row.reference = static_cast<double>(row.n) * row.n * gww::saddle_entropy(row.a).entropy_density;
  }

  void polyakov_row(ScanRow& row, std::size_t index) {
    const auto [plain, e1] = average_of(row.n, 0, row.a, 2 * index);
    const auto [impurity, e2] = average_of(row.n, row.p, row.a, 2 * index + 1);
    row.value = (impurity / plain).value() / row.n;
    row.error_estimate = e1 + e2;
    row.reference = gww::planar_polyakov(row.a);
  }

  void gww_row(ScanRow& row) {
    const gww::PlanarResult saddle = gww::saddle_entropy(row.a);
    if (row.n == 0) {
      row.value = saddle.entropy_density;
      row.reference = saddle.sigma_star;
      return;
    }
    const double n2 = static_cast<double>(row.n) * row.n;
    row.value = gww::gww_log_partition({row.n, saddle.sigma_star}).ln_magnitude / n2;
    row.reference = saddle.free_energy;
  }

  void nested_row(ScanRow& row) {
    const average::NestedResult r =
        average::nested_average(row.n, {row.a, config_.b}, params_for(config_, row.a));
    row.value = r.normalized().ln_magnitude;
    row.error_estimate = r.error_estimate;
    row.reference = average::averaged_echo(row.n, params_for(config_, row.a)).value.ln_magnitude;
    if (r.degenerate) row.status = "degenerate";
  }

  void complex_row(ScanRow& row) {
    average::AverageParams p = params_for(config_, row.a);
    p.a_phase = config_.phi;
    const average::AverageResult r = average::complex_temperature_average(row.n, p);
    p.a_phase = 0.0;
    row.value = r.value.ln_magnitude;
    row.error_estimate = r.error_estimate;
    row.reference = average::complex_temperature_average(row.n, p).value.ln_magnitude;
  }

  void oracle_row(ScanRow& row) {
    const chain::ChainSpec spec{chain::LatticeSize::finite(std::stoi(row.lattice)),
                                std::vector<double>(static_cast<std::size_t>(row.k), row.coupling)};
    const chain::OccupationState state = chain::psi0(row.n, spec.size);
    const auto statistics = config_.statistics == "jw" ? chain::HoppingStatistics::kJordanWigner
                                                       : chain::HoppingStatistics::kSpin;
    const double ed = chain::ed_oracle_amplitude(spec, state, state, statistics);
    const double det = chain::amplitude(spec, state, state).value();
    row.value = ed;
    row.reference = det;
    row.error_estimate = std::fabs(ed - det) / std::fabs(det);
  }

  const RunConfig& config_;
  std::optional<std::filesystem::path> cache_dir_;
  std::map<std::string, std::unique_ptr<EchoCache>> caches_;
};

}  // namespace

std::vector<ScanRow> plan_rows(const RunConfig& c) {
  std::vector<ScanRow> rows;
  const std::string mode = to_string(c.mode);
  const int k = static_cast<int>(c.profile.size());
  const std::string lattice = lattice_label(c.sites);
  switch (c.mode) {
    case Mode::kFig1:
      for (const Point& pt : temperature_points(c))
        for (int n : c.n_list) rows.push_back({mode, n, lattice, k, 0, kMissing, pt.a, pt.t});
      break;
    case Mode::kFig2:
    case Mode::kNested:
    case Mode::kComplexTemp:
      for (int n : c.n_list)
        for (const Point& pt : temperature_points(c)) rows.push_back({mode, n, lattice, k, 0, kMissing, pt.a, pt.t});
      break;
    case Mode::kPolyakov:
      for (int n : c.n_list)
        for (const Point& pt : temperature_points(c)) rows.push_back({mode, n, lattice, k, c.p, kMissing, pt.a, pt.t});
      break;
    case Mode::kGww:
      for (const Point& pt : temperature_points(c)) {
        rows.push_back({mode, 0, "inf", 1, 0, kMissing, pt.a, pt.t});
        for (int n : c.n_list) rows.push_back({mode, n, "inf", 1, 0, kMissing, pt.a, pt.t});
      }
      break;
    case Mode::kOracleCompare:
      for (int l : c.oracle_sites)
        for (int kk : c.oracle_ranges)
          for (int n : c.n_list)
            for (double j : c.oracle_couplings)
              rows.push_back({mode, n, std::to_string(l), kk, 0, j, kMissing, kMissing});
      break;
    case Mode::kIdentityCheck:
      break;
  }
  return rows;
}

ScanOutcome run_scan(const RunConfig& config, const std::vector<ScanRow>& previous,
                     const std::function<void(const std::vector<ScanRow>&)>& persist) {
  std::map<std::string, ScanRow> done;
  for (const ScanRow& r : previous)
    if (r.status == "ok" || r.status == "degenerate") done.emplace(r.key(), r);

  if (config.mode == Mode::kOracleCompare)
    for (int l : config.oracle_sites)
      if (l > chain::kMaxExactSites)
        throw CostGuardError("oracle-compare: cost guard, L = " + std::to_string(l) + " exceeds " +
                             std::to_string(chain::kMaxExactSites));

  ScanOutcome outcome;
  RowEvaluator evaluator(config);
  const std::vector<ScanRow> plan = plan_rows(config);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto found = done.find(plan[i].key());
    if (found != done.end()) {
      outcome.rows.push_back(found->second);
      continue;
    }
    ScanRow row = plan[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      evaluator.compute(row, i);
    } catch (const NumericalError& e) {
      row.status = sanitize(std::string("numerical-error: ") + e.what());
      row.error_estimate = e.achieved_error();
      outcome.numerical_failure = true;
    }
    if (config.record_timing)
      row.wall_time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    outcome.rows.push_back(row);
    persist(outcome.rows);
  }
  return outcome;
}

}  // namespace hpchain::cli
