#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "horizonkit/acf.hpp"
#include "horizonkit/horizon.hpp"
#include "horizonkit/scenario.hpp"
#include "test_support.hpp"

using namespace horizonkit;

namespace {

// Pinned values from an independent reference implementation of the same
// construction, compared loosely enough to absorb BLAS/libm rounding
// differences but tightly enough to catch any change in the model itself.
constexpr double kProbeTol = 1e-6;

struct Probe {
  long row;
  int col;
  double value;
};

const Probe kTrajectoryProbes[] = {
    {0, 0, 0.0},
    {0, 1, 349.37767473112},
    {0, 7, 18.3856406460551},
    {0, 11, -0.285714285714286},
    {10, 11, 0.842615415389934},
    {11, 1, 388.116122186418},
    {12, 0, -0.0137687028850864},
    {24, 4, 3.7882573599342},
    {24, 11, -0.260733167669376},
    {36, 2, 61.4777362055471},
    {36, 7, 25.4586032492938},
    {59, 5, 3.76534767242591},
    {59, 11, 1.43112492373004},
};

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("the bundled scenario carries its pinned defaults") {
  const ScenarioConfig cfg = reference_scenario();
  CHECK_EQ(cfg.n_params, 12);
  CHECK_EQ(cfg.T, 60);
  CHECK_EQ(cfg.seasonal_period, 12);
  CHECK_EQ(cfg.shipping_window, std::vector<int>{6, 7, 8, 9});
  CHECK_EQ(cfg.doubling_period, 25);
  CHECK_EQ(cfg.external_factor, 0.06);
  CHECK_EQ(cfg.fine_period, 3);
  CHECK_EQ(cfg.fine_magnitude, 2.0);
  CHECK_EQ(cfg.noise_sigma, 0.02);
  CHECK_EQ(cfg.seed, 42u);
}

TEST_CASE("building the scenario produces a fully wired system") {
  const Scenario s = build_scenario(reference_scenario());
  CHECK_EQ(s.model.A.rows(), 12);
  CHECK_EQ(s.model.A.cols(), 12);
  CHECK_EQ(s.model.B.rows(), 12);
  CHECK_EQ(s.x0.size(), 12);
  CHECK_EQ(s.controls.size(), 59u);
  CHECK_EQ(s.t0, 1);
  REQUIRE_EQ(s.labels.size(), 12u);
  CHECK_EQ(s.labels[0], "raw_intake");
  CHECK_EQ(s.labels[1], "warehouse_stock");
  CHECK_EQ(s.labels[11], "fines_cost");
  CHECK(s.warnings.empty());
}

TEST_CASE("config validation names every broken field") {
  auto broken = [](auto mutate) {
    ScenarioConfig cfg = reference_scenario();
    mutate(cfg);
    return cfg;
  };
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) { c.n_params = 11; })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) { c.T = 1; })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) { c.seasonal_period = 0; })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) {
        c.shipping_window = {0, 1};
      })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) {
        c.shipping_window = {13};
      })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) { c.doubling_period = 60; })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) { c.doubling_period = 0; })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) {
        c.external_factor = -0.1;
      })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) { c.fine_period = 0; })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) {
        c.fine_magnitude = -1.0;
      })),
      ConfigInvalid);
  CHECK_THROWS_AS(
      build_scenario(broken([](ScenarioConfig& c) { c.noise_sigma = -0.5; })),
      ConfigInvalid);
}

TEST_CASE("a run shorter than two seasons carries a warning") {
  ScenarioConfig cfg = reference_scenario();
  cfg.T = 20;
  cfg.doubling_period = 15;
  const Scenario s = build_scenario(cfg);
  CHECK_FALSE(s.warnings.empty());
}

TEST_CASE("the reference run reproduces its pinned trajectory values") {
  const ScenarioRun run = run_scenario(build_scenario(reference_scenario()));
  const Trajectory& traj = run.trajectory;
  REQUIRE_EQ(traj.length(), 60);
  REQUIRE_EQ(traj.dims(), 12);
  CHECK_EQ(traj.t0, 1);
  for (const Probe& p : kTrajectoryProbes) {
    CHECK_LE(std::abs(traj.data(p.row, p.col) - p.value), kProbeTol);
  }
  const double sum_abs = traj.data.cwiseAbs().sum();
  CHECK_LE(std::abs(sum_abs - 39682.4205261427) / 39682.4205261427, 1e-9);
  CHECK_LE(std::abs(traj.data.col(1).minCoeff() - 206.275284215036), kProbeTol);
  CHECK_EQ(run.clamp_events, 0);
}

TEST_CASE("two builds and runs are bitwise identical") {
  const ScenarioRun a = run_scenario(build_scenario(reference_scenario()));
  const ScenarioRun b = run_scenario(build_scenario(reference_scenario()));
  CHECK_EQ((a.trajectory.data - b.trajectory.data).cwiseAbs().maxCoeff(), 0.0);
}

TEST_CASE("while the clamp never binds, the run equals the raw simulation") {
  const Scenario s = build_scenario(reference_scenario());
  const ScenarioRun run = run_scenario(s);
  const Trajectory raw = simulate(s.model, s.x0, s.controls, s.noise, s.t0);
  CHECK_EQ((run.trajectory.data - raw.data).cwiseAbs().maxCoeff(), 0.0);
}

TEST_CASE("the initial state is the periodic fixed point of the annual loop") {
  // With growth, fines, and noise switched off, the pre-doubling part of the
  // trajectory repeats exactly year over year; the doubling ramp later breaks
  // the pattern by design.
  ScenarioConfig cfg = reference_scenario();
  cfg.external_factor = 0.0;
  cfg.fine_magnitude = 0.0;
  cfg.noise_sigma = 0.0;
  const ScenarioRun run = run_scenario(build_scenario(cfg));
  const double dev =
      (run.trajectory.data.topRows(12) - run.trajectory.data.middleRows(12, 12))
          .cwiseAbs()
          .maxCoeff();
  CHECK_LE(dev, 1e-9);
}

TEST_CASE("heavy noise drives the warehouse into the clamp") {
  ScenarioConfig cfg = reference_scenario();
  cfg.noise_sigma = 400.0;
  const ScenarioRun run = run_scenario(build_scenario(cfg));
  CHECK_GT(run.clamp_events, 0);
  CHECK_GE(run.trajectory.data.col(1).minCoeff(), 0.0);
}

TEST_CASE("production components are the output-labeled columns") {
  const Scenario s = build_scenario(reference_scenario());
  const std::vector<int> idx = production_components(s.labels);
  CHECK_EQ(idx, std::vector<int>{2, 4, 5, 6});
}

TEST_CASE("output roughly doubles from the first year to the last") {
  const ScenarioRun run = run_scenario(build_scenario(reference_scenario()));
  const std::vector<int> prod = production_components(
      build_scenario(reference_scenario()).labels);
  double early = 0.0, late = 0.0;
  for (long t = 13; t <= 24; ++t) {
    for (int i : prod) early += run.trajectory.value(t, i);
  }
  for (long t = 37; t <= 48; ++t) {
    for (int i : prod) late += run.trajectory.value(t, i);
  }
  const double ratio = late / early;
  CHECK_GT(ratio, 1.7);
  CHECK_LT(ratio, 2.3);
  CHECK_LE(std::abs(ratio - 1.99708280940652), 1e-6);
}

TEST_CASE("the analysis of the reference run reproduces its pinned summary") {
  const ScenarioRun run = run_scenario(build_scenario(reference_scenario()));
  const DepthTimeMatrix matrix = depth_time_matrix(run.trajectory, 1);
  REQUIRE_EQ(matrix.rows.size(), 29u);
  const DepthSummary summary = depth_summary(matrix);
  const struct {
    int k;
    double w;
  } pinned[] = {
      {2, 246.0},          {3, 261.800951066205}, {9, 350.85014292268},
      {12, 344.387430139462}, {13, 340.733444564187},
      {27, 273.325746186253}, {30, 254.266533353918},
  };
  for (const auto& p : pinned) {
    const auto it =
        std::find(summary.depths.begin(), summary.depths.end(), p.k);
    REQUIRE_NE(it, summary.depths.end());
    const std::size_t j =
        static_cast<std::size_t>(it - summary.depths.begin());
    CHECK_LE(std::abs(summary.totals[j] - p.w), kProbeTol);
  }

  // Specific cells of the one-year depth row.
  const DepthRow* row12 = nullptr;
  for (const DepthRow& row : matrix.rows) {
    if (row.depth == 12) row12 = &row;
  }
  REQUIRE_NE(row12, nullptr);
  CHECK_EQ(row12->cells.front().t, 13);
  CHECK_EQ(row12->cells.back().t, 60);
  const double first3[] = {6.23272483261201, 6.69513744155936,
                           6.29366805616398};
  for (int j = 0; j < 3; ++j) {
    CHECK_LE(std::abs(row12->cells[static_cast<std::size_t>(j)].w_total -
                      first3[j]),
             kProbeTol);
  }
  const IndicatorDecomposition& at14 = row12->cells[1];
  CHECK_EQ(at14.t, 14);
  CHECK_LE(std::abs(at14.w_plus - 7.19717405769751), kProbeTol);
  CHECK_LE(std::abs(at14.w_minus - -0.502036616138149), kProbeTol);
  CHECK_EQ(at14.n_valid, 12);
}

TEST_CASE("the annual cycle surfaces as evenly spaced indicator peaks") {
  const ScenarioRun run = run_scenario(build_scenario(reference_scenario()));
  const DepthTimeMatrix matrix = depth_time_matrix(run.trajectory, 1);
  const DepthRow* row12 = nullptr;
  for (const DepthRow& row : matrix.rows) {
    if (row.depth == 12) row12 = &row;
  }
  REQUIRE_NE(row12, nullptr);
  std::vector<double> w;
  for (const IndicatorDecomposition& cell : row12->cells) {
    w.push_back(cell.w_total);
  }
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  const PeakReport peaks =
      detect_peaks(w, 0.1 * (*hi - *lo), row12->cells.front().t);
  CHECK_EQ(peaks.peak_times, std::vector<long>{14, 24, 38});
  REQUIRE(peaks.dominant_period.has_value());
  CHECK_EQ(*peaks.dominant_period, doctest::Approx(12.0));
}

TEST_CASE("the fines cadence dominates the penalty series oscillation") {
  const ScenarioRun run = run_scenario(build_scenario(reference_scenario()));
  const auto cells = component_cells(run.trajectory, 11, WindowSpec{2, 1});
  std::vector<double> series;
  for (const auto& v : cells) {
    if (v.has_value()) series.push_back(*v);
  }
  const OscillationReport at3 = detect_oscillation(series, 3);
  CHECK_EQ(at3.expected_hits, 18);
  CHECK_EQ(at3.coverage, doctest::Approx(17.0 / 18.0));
  const OscillationReport at5 = detect_oscillation(series, 5);
  CHECK_EQ(at5.coverage, 0.0);
}

TEST_CASE("the depth recommendation lands on the pinned tiers") {
  const ScenarioRun run = run_scenario(build_scenario(reference_scenario()));
  const DepthSummary summary =
      depth_summary(depth_time_matrix(run.trajectory, 1));
  const HorizonRecommendation rec = recommend_horizon(summary);
  CHECK_EQ(rec.short_k, 2);
  CHECK_EQ(rec.medium_k, 13);
  CHECK_EQ(rec.long_k, 27);
  CHECK_EQ(rec.rationale[0], doctest::Approx(0.549802062607481).epsilon(1e-9));
  CHECK_EQ(rec.rationale[1], doctest::Approx(0.806749243371121).epsilon(1e-9));
  CHECK_EQ(rec.rationale[2], doctest::Approx(0.957403274280923).epsilon(1e-9));
}

}  // TEST_SUITE
