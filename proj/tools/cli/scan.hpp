#pragma once

#include <functional>
#include <vector>

#include "cli/rows.hpp"
#include "cli/run_config.hpp"

namespace hpchain::cli {

struct ScanOutcome {
  std::vector<ScanRow> rows;
  bool numerical_failure = false;
};

// Rows of the grid in output order with only the key columns filled.
std::vector<ScanRow> plan_rows(const RunConfig& config);

// Computes every planned row not already present (status ok) in `previous`.
// `persist` receives the completed prefix after each row.
ScanOutcome run_scan(const RunConfig& config, const std::vector<ScanRow>& previous,
                     const std::function<void(const std::vector<ScanRow>&)>& persist);

}  // namespace hpchain::cli
