#pragma once

#include <limits>
#include <string>
#include <vector>

namespace hpchain::cli {

inline constexpr const char* kSchema = "hpchain/1";
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

// One output row. Columns that do not apply to a mode hold NaN (written empty).
struct ScanRow {
  std::string mode;
  int n = 0;
  std::string lattice = "inf";
  int k = 1;
  int p = 0;
  double coupling = kMissing;
  double a = kMissing;
  double t = kMissing;
  double value = kMissing;
  double reference = kMissing;
  double error_estimate = kMissing;
  double wall_time_ms = 0.0;
  std::string status = "ok";

  std::string key() const;
};

// Shortest round-trip decimal form; empty for NaN.
std::string format_number(double v);

std::string to_csv(const std::vector<ScanRow>& rows, const std::string& config_line);
std::string to_json_text(const std::vector<ScanRow>& rows, const std::string& config_line);

// Rows of a previous run with the same configuration, or nothing if the file is
// missing or was written for another configuration.
std::vector<ScanRow> read_previous_rows(const std::string& path, const std::string& format,
                                        const std::string& config_line);

}  // namespace hpchain::cli
