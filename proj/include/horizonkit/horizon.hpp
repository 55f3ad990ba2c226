#pragma once
// Decision layer on top of the indicator: locate cyclic peaks in a depth row,
// score candidate self-oscillation cadences, classify parameters as
// developing vs. decaying, and recommend tiered planning horizons from the
// depth summary.

#include <array>
#include <optional>
#include <vector>

#include "horizonkit/acf.hpp"
#include "horizonkit/errors.hpp"
#include "horizonkit/trajectory.hpp"

namespace horizonkit {

struct PeakReport {
  int depth = 0;  // depth row examined; informational, set by the caller
  std::vector<long> peak_times;       // strictly increasing
  std::vector<double> prominences;    // one per reported peak
  std::optional<double> dominant_period;  // median gap, needs >= 2 peaks
  double prominence_used = 0.0;
};

struct OscillationReport {
  int period = 0;             // candidate cadence under test
  double coverage = 0.0;      // observed / expected cadence hits, in [0, 1]
  std::vector<long> hit_times;  // extrema confirming the cadence
  long expected_hits = 0;
};

struct HorizonRecommendation {
  int short_k = 2;
  int medium_k = 2;
  int long_k = 2;
  std::array<double, 3> rationale{};  // captured marginal-mass fraction per tier
  std::array<double, 3> tiers{};
};

enum class GrowthClass { developing, decaying, mixed, undefined };

const char* to_string(GrowthClass c);

struct ComponentClassification {
  int component = 0;
  GrowthClass label = GrowthClass::undefined;
  double positive_fraction = 0.0;  // share of defined cells with value > 0
  int n_defined = 0;
};

// Interior local maxima with topographic prominence >= min_prominence.
// A plateau resolves to its leftmost index. Emitted peak_times are
// t_begin + index so callers can pass rows with real time labels.
PeakReport detect_peaks(const std::vector<double>& series,
                        double min_prominence, long t_begin = 0);

// Score how regularly strict local extrema recur at the candidate cadence:
// coverage = (consecutive extrema pairs with gap within +-1 of the period) /
// (cadence slots between the first extremum and the end of the series),
// clamped to [0, 1]. Fewer than two extrema scores 0.
OscillationReport detect_oscillation(const std::vector<double>& series,
                                     int candidate_period, long t_begin = 0);

// Tiered depth recommendation from marginal changes of the summary:
// E[first] = |W[first]|, E[k] = |W[k] - W[k-1]|; each tier picks the smallest
// depth whose cumulative share of the total marginal mass reaches the tier
// fraction (ties toward smaller depth). A net-decaying summary (sum of W <= 0)
// has no developing structure to plan for and degenerates to the minimum
// depth with zero captured fractions, as does an all-zero summary.
HorizonRecommendation recommend_horizon(
    const DepthSummary& summary,
    std::array<double, 3> tiers = {0.5, 0.8, 0.95});

// Per-parameter share of positive cells at a fixed depth across time;
// classes split at the two thresholds, with an explicit mixed band between.
std::vector<ComponentClassification> classify_components(
    const std::vector<std::vector<std::optional<double>>>& cells_per_component,
    double decay_threshold = 0.35, double develop_threshold = 0.65);

// Convenience overload computing the cells from a trajectory.
std::vector<ComponentClassification> classify_components(
    const Trajectory& series, const WindowSpec& spec,
    double decay_threshold = 0.35, double develop_threshold = 0.65);

}  // namespace horizonkit
