#pragma once
// Bundled reference scenario: a desk-scale digital copy of a seasonal
// wood-processing operation. Twelve tracked parameters cover raw intake on
// summer barges, a log warehouse, sawing, lumber stock, three product output
// lines, four product value indices, and a penalty-cost series. The scenario
// layers an annual seasonal cycle, a demand doubling ramped in from a
// configured period, a small annual external growth factor on values,
// periodic penalty impulses, and gaussian measurement noise on top of the
// linear dynamics kernel.

#include <cstdint>
#include <string>
#include <vector>

#include "horizonkit/dyn_system.hpp"
#include "horizonkit/trajectory.hpp"

namespace horizonkit {

struct ScenarioConfig {
  int n_params = 12;  // the generator defines a fixed 12-component roster
  long T = 60;        // billing periods to simulate
  int seasonal_period = 12;
  std::vector<int> shipping_window = {6, 7, 8, 9};  // months with raw intake
  long doubling_period = 25;     // demand doubling ramp starts here
  double external_factor = 0.06; // annual growth applied to value indices
  int fine_period = 3;           // penalty impulse cadence
  double fine_magnitude = 2.0;
  double noise_sigma = 0.02;
  std::uint64_t seed = 42;
};

struct Scenario {
  ScenarioConfig config;
  SystemModel model;
  Eigen::VectorXd x0;
  std::vector<Eigen::VectorXd> controls;  // u driving steps t0 -> t0+1, ...
  NoiseModel noise;
  std::vector<std::string> labels;
  long t0 = 1;
  std::vector<std::string> warnings;  // soft config advisories
};

struct ScenarioRun {
  Trajectory trajectory;
  long clamp_events = 0;  // times the warehouse stock was clamped at zero
};

// The pinned default configuration of the bundled scenario.
ScenarioConfig reference_scenario();

// Deterministic construction from config. Throws ConfigInvalid naming the
// violated field. The initial state is the periodic fixed point of the
// deterministic annual loop, so the trajectory starts in seasonal steady
// state instead of a filling transient.
Scenario build_scenario(const ScenarioConfig& config);

// Roll the scenario forward. Delegates stepping to the dynamics kernel and
// applies one scenario-level rule the linear map cannot express: warehouse
// stock is clamped at zero, with the number of clamp events reported.
ScenarioRun run_scenario(const Scenario& scenario);

// Indices of the production components (labels ending in "_output").
std::vector<int> production_components(const std::vector<std::string>& labels);

}  // namespace horizonkit
