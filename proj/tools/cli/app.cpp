#include "cli/app.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cli/rows.hpp"
#include "cli/run_config.hpp"
#include "cli/scan.hpp"
#include "hpchain/errors.hpp"
#include "hpchain/identities.hpp"
#include "hpchain/parallel.hpp"

namespace hpchain::cli {
namespace {

void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

std::string render(const RunConfig& config, const std::vector<ScanRow>& rows, const std::string& line) {
  return config.format == "json" ? to_json_text(rows, line) : to_csv(rows, line);
}

int run_identity_check(const RunConfig& config) {
  identities::Manifest manifest = identities::default_manifest();
  if (!config.manifest_path.empty()) {
    std::ifstream in(config.manifest_path);
    if (!in) throw std::invalid_argument("cannot read manifest " + config.manifest_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("manifest: ") + e.what());
    }
    manifest = identities::parse_manifest(doc);
  }
  if (manifest.grid_size() == 0) throw std::invalid_argument("identity-check: empty grid");

  identities::CheckOptions options;
  options.kernel_perturbation = config.perturb_kernel;
  const std::vector<identities::IdentityReport> reports = identities::run_manifest(manifest, options);

  bool passed = true;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : reports) {
    passed = passed && r.passed();
    list.push_back(identities::to_json(r));
  }
  const nlohmann::json doc{{"schema", kSchema},
                           {"manifest", identities::to_json(manifest)},
                           {"perturb_kernel", config.perturb_kernel},
                           {"passed", passed},
                           {"reports", list}};
  std::cout << identities::format_table(reports);
  if (!config.out.empty()) write_atomically(config.out, doc.dump(1) + "\n");
  return passed ? kExitOk : kExitIdentity;
}

int run_rows(const RunConfig& config) {
  if (config.format != "csv" && config.format != "json")
    throw std::invalid_argument("format must be csv or json");
  if (plan_rows(config).empty()) throw std::invalid_argument("empty grid");
  const std::string line = canonical_string(config);
  std::vector<ScanRow> previous;
  if (!config.out.empty()) previous = read_previous_rows(config.out, config.format, line);

  const auto persist = [&](const std::vector<ScanRow>& rows) {
    if (config.out.empty()) return;
    // keep rows of an interrupted run that lie beyond the current prefix
    std::vector<ScanRow> merged = rows;
    std::map<std::string, bool> seen;
    for (const ScanRow& r : rows) seen[r.key()] = true;
    for (const ScanRow& r : previous)
      if (!seen.count(r.key())) merged.push_back(r);
    write_atomically(config.out, render(config, merged, line));
  };
  const ScanOutcome outcome = run_scan(config, previous, persist);
  const std::string text = render(config, outcome.rows, line);
  if (config.out.empty()) std::cout << text;
  else write_atomically(config.out, text);
  return outcome.numerical_failure ? kExitNumerical : kExitOk;
}

}  // namespace

int run_app(int argc, char** argv) {
  CLI::App app{"Coupling-averaged spin-chain echoes and unitary matrix model scans", "hpchain"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int jobs = 0;
  int max_nodes = 0;
  bool timing = false;
  std::vector<int> n_list;
  std::vector<double> a_list;
  std::vector<double> t_list;
  std::string lattice;
  std::vector<double> profile;
  int p = 0;
  double b = 0.0;
  double phi = 0.0;
  int mc_samples = 0;
  std::vector<int> oracle_sites;
  std::vector<int> oracle_ranges;
  std::vector<double> oracle_couplings;
  std::string statistics;
  std::string manifest;
  double perturb = 0.0;

  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out, "Output file (stdout if omitted)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_option("--tol", tol, "Relative quadrature tolerance");
  app.add_option("--max-nodes", max_nodes, "Quadrature node budget");
  app.add_option("--jobs", jobs, "OpenMP threads");
  app.add_flag("--timing", timing, "Record wall_time_ms (output is then not reproducible)");
  app.add_option("--N", n_list, "Particle numbers")->delimiter(',');
  app.add_option("--a", a_list, "Gaussian widths a")->delimiter(',');
  app.add_option("--T", t_list, "Temperatures T")->delimiter(',');
  app.add_option("--L", lattice, "Ring length or inf");
  app.add_option("--profile", profile, "Coupling profile J_n / J")->delimiter(',');
  app.add_option("--p", p, "Impurity displacement");
  app.add_option("--b", b, "Width of the Gaussian over a (nested)");
  app.add_option("--phi", phi, "Phase of the complex width");
  app.add_option("--mc-samples", mc_samples, "Monte Carlo samples per row (0: quadrature)");
  app.add_option("--oracle-L", oracle_sites, "ED ring lengths")->delimiter(',');
  app.add_option("--oracle-K", oracle_ranges, "ED hopping ranges")->delimiter(',');
  app.add_option("--oracle-J", oracle_couplings, "ED couplings")->delimiter(',');
  app.add_option("--statistics", statistics, "spin or jw")->check(CLI::IsMember({"spin", "jw"}));
  app.add_option("--manifest", manifest, "Identity manifest (JSON)");
  app.add_option("--perturb-kernel", perturb, "Perturb one left-hand kernel entry by (1 + delta)");

  std::string mode_name;
  for (const char* name : {"fig1", "fig2", "polyakov", "gww", "identity-check", "oracle-compare",
                           "nested", "complex-temp"}) {
    auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " scan");
    sub->fallthrough();
    sub->callback([&mode_name, name] { mode_name = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) load_config_file(config_path, config);
    config.mode = mode_from_string(mode_name);
    const auto given = [&](const char* flag) { return app.count(flag) > 0; };
    if (given("--out")) config.out = out;
    if (given("--format")) config.format = format;
    if (given("--seed")) config.seed = seed;
    if (given("--tol")) config.quad_rel_tol = tol;
    if (given("--max-nodes")) config.max_nodes = max_nodes;
    if (given("--jobs")) config.jobs = jobs;
    if (given("--timing")) config.record_timing = timing;
    if (given("--N")) config.n_list = n_list;
    if (given("--a")) config.a_list = a_list;
    if (given("--T")) config.t_list = t_list;
    if (given("--a") && !given("--T")) config.t_list.clear();
    if (given("--T") && !given("--a")) config.a_list.clear();
    if (given("--L")) config.sites = parse_lattice(lattice);
    if (given("--profile")) config.profile = profile;
    if (given("--p")) config.p = p;
    if (given("--b")) config.b = b;
    if (given("--phi")) config.phi = phi;
    if (given("--mc-samples")) config.mc_samples = mc_samples;
    if (given("--oracle-L")) config.oracle_sites = oracle_sites;
    if (given("--oracle-K")) config.oracle_ranges = oracle_ranges;
    if (given("--oracle-J")) config.oracle_couplings = oracle_couplings;
    if (given("--statistics")) config.statistics = statistics;
    if (given("--manifest")) config.manifest_path = manifest;
    if (given("--perturb-kernel")) config.perturb_kernel = perturb;
    apply_mode_defaults(config);
    if (config.jobs > 0) set_thread_count(config.jobs);

    if (config.mode == Mode::kIdentityCheck) return run_identity_check(config);
    return run_rows(config);
  } catch (const NumericalError& e) {
    std::cerr << "hpchain: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "hpchain: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "hpchain: value out of range: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace hpchain::cli
