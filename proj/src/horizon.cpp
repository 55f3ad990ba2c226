#include "horizonkit/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace horizonkit {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<std::size_t> strict_extrema(const std::vector<double>& x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const bool high = x[i] > x[i - 1] && x[i] > x[i + 1];
    const bool low = x[i] < x[i - 1] && x[i] < x[i + 1];
    if (high || low) out.push_back(i);
  }
  return out;
}

}  // namespace

const char* to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::developing: return "developing";
    case GrowthClass::decaying: return "decaying";
    case GrowthClass::mixed: return "mixed";
    case GrowthClass::undefined: return "undefined";
  }
  return "undefined";
}

PeakReport detect_peaks(const std::vector<double>& series,
                        double min_prominence, long t_begin) {
  if (series.size() < 3) {
    throw SeriesTooShort("peak detection needs at least 3 samples, got " +
                         std::to_string(series.size()));
  }
  if (min_prominence < 0.0) {
    throw ConfigInvalid("prominence threshold must be non-negative");
  }
  const std::size_t n = series.size();
  PeakReport report;
  report.prominence_used = min_prominence;

  std::size_t i = 1;
  while (i + 1 < n) {
    if (series[i] > series[i - 1]) {
      // Extend across a flat top; the plateau resolves to its left edge.
      std::size_t j = i;
      while (j + 1 < n && series[j + 1] == series[j]) ++j;
      if (j + 1 < n && series[j + 1] < series[j]) {
        const double h = series[i];
        // Topographic prominence: drop to the higher of the two flanking
        // minima, scanning outward until terrain rises back to the peak
        // height or the series ends.
        double left_min = h;
        for (std::size_t p = i; p-- > 0 && series[p] < h;) {
          left_min = std::min(left_min, series[p]);
        }
        double right_min = h;
        for (std::size_t p = j + 1; p < n && series[p] < h; ++p) {
          right_min = std::min(right_min, series[p]);
        }
        const double prominence = h - std::max(left_min, right_min);
        if (prominence >= min_prominence) {
          report.peak_times.push_back(t_begin + static_cast<long>(i));
          report.prominences.push_back(prominence);
        }
      }
      i = j + 1;
    } else {
      ++i;
    }
  }

  if (report.peak_times.size() >= 2) {
    std::vector<double> gaps;
    for (std::size_t p = 1; p < report.peak_times.size(); ++p) {
      gaps.push_back(static_cast<double>(report.peak_times[p] -
                                         report.peak_times[p - 1]));
    }
    report.dominant_period = median(std::move(gaps));
  }
  return report;
}

OscillationReport detect_oscillation(const std::vector<double>& series,
                                     int candidate_period, long t_begin) {
  if (candidate_period < 2) {
    throw ConfigInvalid("candidate period must be at least 2, got " +
                        std::to_string(candidate_period));
  }
  if (series.size() < 2 * static_cast<std::size_t>(candidate_period)) {
    throw SeriesTooShort("oscillation check needs at least " +
                         std::to_string(2 * candidate_period) +
                         " samples, got " + std::to_string(series.size()));
  }
  OscillationReport report;
  report.period = candidate_period;

  const std::vector<std::size_t> extrema = strict_extrema(series);
  if (extrema.size() < 2) {
    return report;  // nothing oscillates; coverage stays 0
  }
  const long span =
      static_cast<long>(series.size()) - 1 - static_cast<long>(extrema[0]);
  report.expected_hits = span / candidate_period;
  if (report.expected_hits == 0) {
    return report;
  }
  long hits = 0;
  for (std::size_t e = 1; e < extrema.size(); ++e) {
    const long gap = static_cast<long>(extrema[e] - extrema[e - 1]);
    if (gap >= candidate_period - 1 && gap <= candidate_period + 1) {
      ++hits;
      report.hit_times.push_back(t_begin + static_cast<long>(extrema[e]));
    }
  }
  report.coverage = std::min(
      1.0, static_cast<double>(hits) / static_cast<double>(report.expected_hits));
  return report;
}

HorizonRecommendation recommend_horizon(const DepthSummary& summary,
                                        std::array<double, 3> tiers) {
  if (summary.depths.empty()) {
    throw EmptySummary("depth summary is empty");
  }
  if (summary.depths.size() != summary.totals.size()) {
    throw DimensionMismatch("summary depth/total lengths differ");
  }
  for (std::size_t j = 1; j < summary.depths.size(); ++j) {
    if (summary.depths[j] <= summary.depths[j - 1]) {
      throw ConfigInvalid("summary depths must be strictly increasing");
    }
  }
  if (!(tiers[0] > 0.0 && tiers[0] < tiers[1] && tiers[1] < tiers[2] &&
        tiers[2] <= 1.0)) {
    throw ConfigInvalid("tiers must satisfy 0 < t1 < t2 < t3 <= 1");
  }

  HorizonRecommendation rec;
  rec.tiers = tiers;

  double net = 0.0;
  for (double w : summary.totals) net += w;
  if (net <= 0.0) {
    // Net-decaying (or null) profile: no developing structure to plan for.
    rec.short_k = rec.medium_k = rec.long_k = summary.depths.front();
    rec.rationale = {0.0, 0.0, 0.0};
    return rec;
  }

  std::vector<double> cumulative(summary.totals.size());
  double running = 0.0;
  double previous = 0.0;
  for (std::size_t j = 0; j < summary.totals.size(); ++j) {
    const double marginal =
        (j == 0) ? std::abs(summary.totals[0])
                 : std::abs(summary.totals[j] - previous);
    previous = summary.totals[j];
    running += marginal;
    cumulative[j] = running;
  }
  const double total = running;  // > 0 whenever net > 0

  int* depth_out[3] = {&rec.short_k, &rec.medium_k, &rec.long_k};
  for (int tier = 0; tier < 3; ++tier) {
    const double target = tiers[static_cast<std::size_t>(tier)] * total *
                          (1.0 - 1e-12);
    for (std::size_t j = 0; j < cumulative.size(); ++j) {
      if (cumulative[j] >= target) {
        *depth_out[tier] = summary.depths[j];
        rec.rationale[static_cast<std::size_t>(tier)] = cumulative[j] / total;
        break;
      }
    }
  }
  return rec;
}

std::vector<ComponentClassification> classify_components(
    const std::vector<std::vector<std::optional<double>>>& cells_per_component,
    double decay_threshold, double develop_threshold) {
  if (!(decay_threshold >= 0.0 && decay_threshold < develop_threshold &&
        develop_threshold <= 1.0)) {
    throw ConfigInvalid("thresholds must satisfy 0 <= low < high <= 1");
  }
  std::vector<ComponentClassification> out;
  out.reserve(cells_per_component.size());
  for (std::size_t i = 0; i < cells_per_component.size(); ++i) {
    ComponentClassification c;
    c.component = static_cast<int>(i);
    long positive = 0;
    for (const auto& cell : cells_per_component[i]) {
      if (!cell.has_value()) continue;
      ++c.n_defined;
      if (*cell > 0.0) ++positive;
    }
    if (c.n_defined == 0) {
      c.label = GrowthClass::undefined;
    } else {
      c.positive_fraction =
          static_cast<double>(positive) / static_cast<double>(c.n_defined);
      if (c.positive_fraction >= develop_threshold) {
        c.label = GrowthClass::developing;
      } else if (c.positive_fraction <= decay_threshold) {
        c.label = GrowthClass::decaying;
      } else {
        c.label = GrowthClass::mixed;
      }
    }
    out.push_back(c);
  }
  return out;
}

std::vector<ComponentClassification> classify_components(
    const Trajectory& series, const WindowSpec& spec, double decay_threshold,
    double develop_threshold) {
  std::vector<std::vector<std::optional<double>>> cells;
  cells.reserve(static_cast<std::size_t>(series.dims()));
  for (int i = 0; i < series.dims(); ++i) {
    cells.push_back(component_cells(series, i, spec));
  }
  return classify_components(cells, decay_threshold, develop_threshold);
}

}  // namespace horizonkit
