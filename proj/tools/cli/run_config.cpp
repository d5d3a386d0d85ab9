#include "cli/run_config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cli/rows.hpp"

namespace hpchain::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_floating_point_v<T>) s += format_number(v[i]);
    else s += std::to_string(v[i]);
  }
  return s;
}

std::vector<double> linspace(double lo, double step, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(std::round((lo + i * step) * 1e9) / 1e9);
  return v;
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::kFig1: return "fig1";
    case Mode::kFig2: return "fig2";
    case Mode::kPolyakov: return "polyakov";
    case Mode::kGww: return "gww";
    case Mode::kIdentityCheck: return "identity-check";
    case Mode::kOracleCompare: return "oracle-compare";
    case Mode::kNested: return "nested";
    case Mode::kComplexTemp: return "complex-temp";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& name) {
  for (Mode m : {Mode::kFig1, Mode::kFig2, Mode::kPolyakov, Mode::kGww, Mode::kIdentityCheck,
                 Mode::kOracleCompare, Mode::kNested, Mode::kComplexTemp})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown mode: " + name);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : split(text)) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("not an integer: " + item);
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split(text)) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("not a number: " + item);
    out.push_back(v);
  }
  return out;
}

std::optional<int> parse_lattice(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "INFINITE" || t == "infinite") return std::nullopt;
  std::size_t used = 0;
  const int v = std::stoi(t, &used);
  if (used != t.size() || v < 1) throw std::invalid_argument("L must be a positive integer or inf");
  return v;
}

void apply_mode_defaults(RunConfig& c) {
  switch (c.mode) {
    case Mode::kFig1:
      if (c.n_list.empty()) c.n_list = {1, 2, 4, 8, 16, 32};
      if (c.a_list.empty() && c.t_list.empty()) c.t_list = {0.30, 0.45};
      break;
    case Mode::kFig2:
      if (c.n_list.empty()) c.n_list = {2, 3, 4, 5, 6, 7, 8};
      if (c.a_list.empty() && c.t_list.empty()) c.a_list = linspace(0.1, 0.1, 30);
      if (!c.sites) c.sites = 18;
      break;
    case Mode::kPolyakov:
      if (c.n_list.empty()) c.n_list = {16};
      if (c.a_list.empty() && c.t_list.empty()) c.a_list = {0.5, 1.5, 2.0, 2.5, 3.0};
      break;
    case Mode::kGww:
      if (c.a_list.empty() && c.t_list.empty()) c.t_list = linspace(0.25, 0.01, 36);
      break;
    case Mode::kNested:
      if (c.n_list.empty()) c.n_list = {8};
      if (c.a_list.empty() && c.t_list.empty()) c.a_list = {0.5, 1.0, 2.0};
      break;
    case Mode::kComplexTemp:
      if (c.n_list.empty()) c.n_list = {4};
      if (c.a_list.empty() && c.t_list.empty()) c.a_list = {0.5, 1.0};
      break;
    case Mode::kOracleCompare:
      if (c.oracle_sites.empty()) c.oracle_sites = {8, 10, 12};
      if (c.n_list.empty()) c.n_list = {1, 2, 3, 4};
      if (c.oracle_ranges.empty()) c.oracle_ranges = {1, 2};
      if (c.oracle_couplings.empty()) c.oracle_couplings = {0.5, 1.0, 2.0};
      break;
    case Mode::kIdentityCheck:
      break;
  }
}

void load_config_file(const std::string& path, RunConfig& c) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::invalid_argument("config: " + std::string(e.what()));
  }
  const auto get = [&](const char* key) { return tree.get_optional<std::string>(key); };
  if (auto v = get("run.mode")) c.mode = mode_from_string(trim(*v));
  if (auto v = get("run.N")) c.n_list = parse_int_list(*v);
  if (auto v = get("run.a")) c.a_list = parse_double_list(*v);
  if (auto v = get("run.T")) c.t_list = parse_double_list(*v);
  if (auto v = get("run.L")) c.sites = parse_lattice(*v);
  if (auto v = get("run.profile")) c.profile = parse_double_list(*v);
  if (auto v = get("run.p")) c.p = std::stoi(*v);
  if (auto v = get("run.b")) c.b = std::stod(*v);
  if (auto v = get("run.phi")) c.phi = std::stod(*v);
  if (auto v = get("run.tol")) c.quad_rel_tol = std::stod(*v);
  if (auto v = get("run.max_nodes")) c.max_nodes = std::stoi(*v);
  if (auto v = get("run.seed")) c.seed = std::stoull(*v);
  if (auto v = get("run.mc_samples")) c.mc_samples = std::stoi(*v);
  if (auto v = get("run.format")) c.format = trim(*v);
  if (auto v = get("run.out")) c.out = trim(*v);
  if (auto v = get("run.jobs")) c.jobs = std::stoi(*v);
  if (auto v = get("run.record_timing")) c.record_timing = trim(*v) == "true";
  if (auto v = get("oracle.L")) c.oracle_sites = parse_int_list(*v);
  if (auto v = get("oracle.K")) c.oracle_ranges = parse_int_list(*v);
  if (auto v = get("oracle.J")) c.oracle_couplings = parse_double_list(*v);
  if (auto v = get("oracle.statistics")) c.statistics = trim(*v);
  if (auto v = get("identity.manifest")) c.manifest_path = trim(*v);
  if (auto v = get("identity.perturb_kernel")) c.perturb_kernel = std::stod(*v);
}

std::string canonical_string(const RunConfig& c) {
  std::ostringstream s;
  s << "mode=" << to_string(c.mode) << ";N=" << join(c.n_list) << ";a=" << join(c.a_list)
    << ";T=" << join(c.t_list) << ";L=" << (c.sites ? std::to_string(*c.sites) : "inf")
    << ";profile=" << join(c.profile) << ";p=" << c.p << ";b=" << format_number(c.b)
    << ";phi=" << format_number(c.phi) << ";tol=" << format_number(c.quad_rel_tol)
    << ";max_nodes=" << c.max_nodes << ";seed=" << c.seed << ";mc_samples=" << c.mc_samples;
  if (c.mode == Mode::kOracleCompare)
    s << ";oracle_L=" << join(c.oracle_sites) << ";oracle_K=" << join(c.oracle_ranges)
      << ";oracle_J=" << join(c.oracle_couplings) << ";statistics=" << c.statistics;
  return s.str();
}

}  // namespace hpchain::cli
