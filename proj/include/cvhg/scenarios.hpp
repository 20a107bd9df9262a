#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cvhg {

/// Oracle settings shared by the verification scenarios. Unset fields take
/// the scenario's own defaults.
struct OracleSettings {
  std::optional<double> r;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_l;
  std::uint64_t seed = 1;
};

struct ScenarioResult {
  std::string id;
  bool passed = false;
  /// Smallest fidelity (or the scenario's figure of merit) over all cases.
  double worst = 0.0;
  std::string criterion;  ///< e.g. "fidelity >= 0.9999"
  std::vector<std::string> details;
  double seconds = 0.0;
};

/// Ids accepted by run_scenario, in presentation order.
const std::vector<std::string>& scenario_ids();

/// Runs one oracle-vs-symbolic comparison. Throws DomainError for an unknown id.
ScenarioResult run_scenario(const std::string& id, const OracleSettings& settings = {});

}  // namespace cvhg
