#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hpchain::cli {

enum class Mode { kFig1, kFig2, kPolyakov, kGww, kIdentityCheck, kOracleCompare, kNested, kComplexTemp };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct RunConfig {
  Mode mode = Mode::kFig1;

  std::vector<int> n_list;
  std::vector<double> a_list;
  std::vector<double> t_list;
  std::optional<int> sites;  // empty for the infinite line
  std::vector<double> profile{1.0};
  int p = 1;
  double b = 0.5;
  double phi = 0.5;

  double quad_rel_tol = 1e-9;
  int max_nodes = 8192;
  std::uint64_t seed = 0;
  int mc_samples = 0;  // 0 selects quadrature

  std::vector<int> oracle_sites;
  std::vector<int> oracle_ranges;
  std::vector<double> oracle_couplings;
  std::string statistics = "spin";

  std::string manifest_path;
  double perturb_kernel = 0.0;

  std::string format = "csv";
  std::string out;
  int jobs = 0;
  bool record_timing = false;
};

// Fills empty grids with the defaults of the selected mode.
void apply_mode_defaults(RunConfig& config);

// Reads an INI file (sections [run], [oracle], [identity]) over `config`.
void load_config_file(const std::string& path, RunConfig& config);

// Canonical one-line description of every setting that affects output values.
std::string canonical_string(const RunConfig& config);

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
std::optional<int> parse_lattice(const std::string& text);

}  // namespace hpchain::cli
