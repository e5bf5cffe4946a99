#pragma once

#include "lcskit/config.hpp"
#include "lcskit/pipeline.hpp"

#include <string>
#include <vector>

namespace lcskit {

struct CheckResult {
  std::string suite;
  std::string metric;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  double invalid_fraction = 0.0;

  /// Numerical degradation: at least 1% of grid points failed.
  bool degraded() const { return invalid_fraction >= 0.01; }
  bool all_pass() const;
};

/// Runs every residual suite applicable to the configured chart, field, and
/// horizon. Inapplicable suites appear as skipped checks with a note, never
/// as silent omissions. Thresholds are fixed per field family.
VerifyReport run_verification(const RunConfig& cfg);

std::string report_to_json(const VerifyReport& rep, const RunConfig& cfg);

}  // namespace lcskit
