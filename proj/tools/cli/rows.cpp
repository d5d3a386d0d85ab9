#include "cli/rows.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hpchain::cli {
namespace {

const char* kHeader = "mode,N,L,K,p,J,a,T,value,reference,error_estimate,wall_time_ms,status";

double parse_number(const std::string& s) {
  if (s.empty()) return kMissing;
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("bad number in previous output: " + s);
  }
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

nlohmann::json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double from_json(const nlohmann::json& j) {
  if (j.is_null()) return kMissing;
  if (j.is_string()) return parse_number(j.get<std::string>());
  return j.get<double>();
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string ScanRow::key() const {
  return mode + "|" + std::to_string(n) + "|" + lattice + "|" + std::to_string(k) + "|" +
         std::to_string(p) + "|" + format_number(coupling) + "|" + format_number(a) + "|" +
         format_number(t);
}

std::string to_csv(const std::vector<ScanRow>& rows, const std::string& config_line) {
  std::ostringstream out;
  out << "#schema=" << kSchema << "\n#config=" << config_line << "\n" << kHeader << "\n";
  for (const ScanRow& r : rows)
    out << r.mode << ',' << r.n << ',' << r.lattice << ',' << r.k << ',' << r.p << ','
        << format_number(r.coupling) << ',' << format_number(r.a) << ',' << format_number(r.t) << ','
        << format_number(r.value) << ',' << format_number(r.reference) << ','
        << format_number(r.error_estimate) << ',' << format_number(r.wall_time_ms) << ',' << r.status
        << '\n';
  return out.str();
}

std::string to_json_text(const std::vector<ScanRow>& rows, const std::string& config_line) {
  nlohmann::json list = nlohmann::json::array();
  for (const ScanRow& r : rows)
    list.push_back({{"mode", r.mode},
                    {"N", r.n},
                    {"L", r.lattice},
                    {"K", r.k},
                    {"p", r.p},
                    {"J", number_or_null(r.coupling)},
                    {"a", number_or_null(r.a)},
                    {"T", number_or_null(r.t)},
                    {"value", number_or_null(r.value)},
                    {"reference", number_or_null(r.reference)},
                    {"error_estimate", number_or_null(r.error_estimate)},
                    {"wall_time_ms", number_or_null(r.wall_time_ms)},
                    {"status", r.status}});
  const nlohmann::json doc{{"schema", kSchema}, {"config", config_line}, {"rows", list}};
  return doc.dump(1) + "\n";
}

std::vector<ScanRow> read_previous_rows(const std::string& path, const std::string& format,
                                        const std::string& config_line) {
  std::ifstream in(path);
  if (!in) return {};
  std::vector<ScanRow> rows;
  if (format == "json") {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception&) {
      return {};
    }
    if (doc.value("schema", "") != kSchema || doc.value("config", "") != config_line) return {};
    for (const auto& j : doc.at("rows")) {
      ScanRow r;
      r.mode = j.at("mode").get<std::string>();
      r.n = j.at("N").get<int>();
      r.lattice = j.at("L").get<std::string>();
      r.k = j.at("K").get<int>();
      r.p = j.at("p").get<int>();
      r.coupling = from_json(j.at("J"));
      r.a = from_json(j.at("a"));
      r.t = from_json(j.at("T"));
      r.value = from_json(j.at("value"));
      r.reference = from_json(j.at("reference"));
      r.error_estimate = from_json(j.at("error_estimate"));
      r.wall_time_ms = from_json(j.at("wall_time_ms"));
      r.status = j.at("status").get<std::string>();
      rows.push_back(r);
    }
    return rows;
  }
  std::string line;
  if (!std::getline(in, line) || line != std::string("#schema=") + kSchema) return {};
  if (!std::getline(in, line) || line != "#config=" + config_line) return {};
  if (!std::getline(in, line) || line != kHeader) return {};
  while (std::getline(in, line)) {
    const std::vector<std::string> c = split_csv(line);
    if (c.size() != 13) return {};
    ScanRow r;
    r.mode = c[0];
    r.n = std::stoi(c[1]);
    r.lattice = c[2];
    r.k = std::stoi(c[3]);
    r.p = std::stoi(c[4]);
    r.coupling = parse_number(c[5]);
    r.a = parse_number(c[6]);
    r.t = parse_number(c[7]);
    r.value = parse_number(c[8]);
    r.reference = parse_number(c[9]);
    r.error_estimate = parse_number(c[10]);
    r.wall_time_ms = parse_number(c[11]);
    r.status = c[12];
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hpchain::cli
