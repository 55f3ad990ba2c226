#pragma once
// Scenario configs round-trip through a flat key=value text format with a
// [scenario] section, so a simulated experiment can be committed and rerun
// bit-for-bit. `#` starts a comment; unknown keys are rejected rather than
// ignored.

#include <string>

#include "horizonkit/scenario.hpp"

namespace horizonkit {

ScenarioConfig read_scenario_config(const std::string& path);
void write_scenario_config(const ScenarioConfig& config,
                           const std::string& path);

}  // namespace horizonkit
