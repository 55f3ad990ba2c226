#include "horizonkit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace horizonkit {

namespace {

// Component roster (fixed 12-cell layout).
constexpr int kRaw = 0;         // raw material intake
constexpr int kWarehouse = 1;   // log warehouse stock (clamped at zero)
constexpr int kSawn = 2;        // sawn volume produced to plan
constexpr int kLumber = 3;      // lumber stock feeding the product lines
constexpr int kFloor = 4;       // floorboard output
constexpr int kGlued = 5;       // glued beam output
constexpr int kPallet = 6;      // europallet output
constexpr int kValueFloor = 7;  // product value indices
constexpr int kValueGlued = 8;
constexpr int kValuePallet = 9;
constexpr int kValuePellet = 10;
constexpr int kFines = 11;      // penalty cost series

// Fixed plausible process constants; documented in the README. The transition
// matrix keeps spectral radius < 1 so the seasonal loop has a steady state.
constexpr double kIntakeLevel = 100.0;     // barge delivery per shipping month
constexpr double kSawPlanLevel = 30.0;     // monthly sawing plan
constexpr double kSawSeasonalAmp = 0.05;   // mild seasonal modulation of plan
constexpr double kSawSeasonalPhase = 11.0;
constexpr int kRampMonths = 12;            // doubling phased in over a year
constexpr double kValueSeasonalAmp = 0.08;
constexpr double kFinesBaseline = 1.0;     // steady penalty inflow
constexpr int kFactorMonth = 1;            // annual growth steps up here

constexpr int kValueCells[4] = {kValueFloor, kValueGlued, kValuePallet,
                                kValuePellet};
constexpr double kValueBase[4] = {20.0, 12.0, 10.0, 6.0};
constexpr double kValuePhase[4] = {2.0, 5.0, 8.0, 11.0};
constexpr int kValueChannel[4] = {3, 4, 5, 6};

long month_of(long t, long t0, int period) {
  const long m = (t - t0) % period;
  return (m < 0 ? m + period : m) + 1;
}

const std::vector<std::string>& roster_labels() {
  static const std::vector<std::string> labels = {
      "raw_intake",        "warehouse_stock",  "sawn_output",
      "lumber_stock",      "floorboard_output", "glued_beam_output",
      "europallet_output", "value_floorboard", "value_glued_beam",
      "value_europallet",  "value_pellet",     "fines_cost"};
  return labels;
}

void validate(const ScenarioConfig& c, std::vector<std::string>& warnings) {
  if (c.n_params != 12) {
    throw ConfigInvalid(
        "n_params: the generator defines a fixed 12-component roster, got " +
        std::to_string(c.n_params));
  }
  if (c.T < 2) {
    throw ConfigInvalid("T: need at least 2 periods, got " +
                        std::to_string(c.T));
  }
  if (c.seasonal_period < 1) {
    throw ConfigInvalid("seasonal_period: must be positive, got " +
                        std::to_string(c.seasonal_period));
  }
  for (int m : c.shipping_window) {
    if (m < 1 || m > c.seasonal_period) {
      throw ConfigInvalid("shipping_window: month " + std::to_string(m) +
                          " outside 1.." +
                          std::to_string(c.seasonal_period));
    }
  }
  if (c.doubling_period < 1 || c.doubling_period >= c.T) {
    throw ConfigInvalid("doubling_period: must satisfy 1 <= value < T, got " +
                        std::to_string(c.doubling_period));
  }
  if (c.external_factor < 0.0) {
    throw ConfigInvalid("external_factor: must be non-negative");
  }
  if (c.fine_period < 1) {
    throw ConfigInvalid("fine_period: must be positive, got " +
                        std::to_string(c.fine_period));
  }
  if (c.fine_magnitude < 0.0) {
    throw ConfigInvalid("fine_magnitude: must be non-negative");
  }
  if (c.noise_sigma < 0.0) {
    throw ConfigInvalid("noise_sigma: must be non-negative");
  }
  if (c.T < 2 * c.seasonal_period) {
    warnings.push_back(
        "T is shorter than two seasonal periods; cycle statistics will be "
        "weak");
  }
}

// Deterministic control/event machinery shared by the fixed-point solve and
// the control sequence proper.
struct ScenarioForcing {
  const ScenarioConfig& cfg;
  long t0;
  double shock;       // value event size around year boundaries and doubling
  double tail_shock;  // echo events in later years
  std::map<long, double> events;

  explicit ScenarioForcing(const ScenarioConfig& c, long origin)
      : cfg(c), t0(origin) {
    const long P = c.seasonal_period;
    shock = 2.5 * c.external_factor;
    tail_shock = c.external_factor * 5.0 / 3.0;
    // Event times; later assignments overwrite on collision.
    events[t0 + P - 2] = shock;
    events[t0 + P + 2] = shock;
    events[c.doubling_period] = shock;
    events[t0 + 3 * P + 1] = tail_shock;
    events[t0 + 4 * P + 1] = tail_shock;
  }

  double seasonal(int value_slot, long month) const {
    return std::cos(2.0 * std::numbers::pi *
                    (static_cast<double>(month) - kValuePhase[value_slot]) /
                    cfg.seasonal_period);
  }

  // Annual external growth on value indices; first step-up one year in.
  double growth(long t) const {
    const long P = cfg.seasonal_period;
    long first =
        t0 + ((kFactorMonth - month_of(t0, t0, cfg.seasonal_period)) % P + P) %
                 P;
    if (first == t0) first += P;
    if (cfg.external_factor == 0.0 || t < first) return 1.0;
    return std::pow(1.0 + cfg.external_factor,
                    static_cast<double>(1 + (t - first) / P));
  }

  // Demand doubling, phased in as a geometric ramp over kRampMonths.
  double demand(long t) const {
    if (t < cfg.doubling_period) return 1.0;
    const double frac = static_cast<double>(t - cfg.doubling_period + 1) /
                        static_cast<double>(kRampMonths);
    return std::pow(2.0, std::min(1.0, frac));
  }

  // Control vector driving the transition into period t. with_aperiodic=false
  // keeps only the strictly seasonal part (used for the periodic fixed point).
  Eigen::VectorXd control_at(long t, bool with_aperiodic) const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(7);
    const long mo = month_of(t, t0, cfg.seasonal_period);
    const double f = with_aperiodic ? growth(t) : 1.0;
    const double d = with_aperiodic ? demand(t) : 1.0;

    const bool shipping =
        std::find(cfg.shipping_window.begin(), cfg.shipping_window.end(),
                  static_cast<int>(mo)) != cfg.shipping_window.end();
    u[0] = shipping ? kIntakeLevel * d : 0.0;
    u[1] = kSawPlanLevel *
           (1.0 + kSawSeasonalAmp *
                      std::cos(2.0 * std::numbers::pi *
                               (static_cast<double>(mo) - kSawSeasonalPhase) /
                               cfg.seasonal_period)) *
           d;
    u[2] = kFinesBaseline;

    double event_size = 0.0;
    if (with_aperiodic) {
      const auto it = events.find(t);
      if (it != events.end()) event_size = it->second;
    }
    const long mo_prev = month_of(t - 1, t0, cfg.seasonal_period);
    for (int s = 0; s < 4; ++s) {
      double v = kValueBase[s] * (1.0 + kValueSeasonalAmp * seasonal(s, mo)) * f;
      if (event_size != 0.0) {
        // Counter-seasonal sign: the event pushes against the current phase.
        const double sign = seasonal(s, mo_prev) >= 0.0 ? -1.0 : 1.0;
        v += kValueBase[s] * f * event_size * sign;
      }
      u[kValueChannel[s]] = v;
    }
    return u;
  }

  // Deterministic penalty impulse applied on the transition of step j.
  Eigen::VectorXd fines_at(long j) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(12);
    if (cfg.fine_period >= 1 && (j + 1) % cfg.fine_period == 0) {
      v[kFines] -= cfg.fine_magnitude;
    }
    return v;
  }
};

}  // namespace

ScenarioConfig reference_scenario() { return ScenarioConfig{}; }

Scenario build_scenario(const ScenarioConfig& config) {
  Scenario sc;
  sc.config = config;
  sc.t0 = 1;
  validate(config, sc.warnings);

  const int n = 12;
  const int m = 7;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  A(kWarehouse, kWarehouse) = 0.90;  // stock carries over, slow natural draw
  A(kWarehouse, kRaw) = 1.0;         // intake lands in the warehouse
  A(kLumber, kLumber) = 0.25;
  A(kLumber, kSawn) = 0.90;          // sawn volume becomes lumber
  A(kFloor, kLumber) = 0.10;         // product lines draw on lumber stock
  A(kGlued, kLumber) = 0.05;
  A(kPallet, kLumber) = 0.05;
  A(kFines, kFines) = 0.50;          // penalties decay but accumulate

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, m);
  B(kRaw, 0) = 1.0;
  B(kSawn, 1) = 1.0;
  B(kFines, 2) = 1.0;
  B(kValueFloor, 3) = 1.0;
  B(kValueGlued, 4) = 1.0;
  B(kValuePallet, 5) = 1.0;
  B(kValuePellet, 6) = 1.0;
  sc.model = SystemModel{A, B};

  const ScenarioForcing forcing(config, sc.t0);
  const long P = config.seasonal_period;

  // Initial state: periodic fixed point of the deterministic annual loop,
  // x = A^P x + r, so the series opens in seasonal steady state. When the
  // penalty cadence divides the year, its deterministic impulse train is part
  // of that loop and belongs in the fixed point too (otherwise the penalty
  // series opens with a startup transient).
  Eigen::MatrixXd AP = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  const bool fold_fines = (P % config.fine_period == 0);
  for (long j = 0; j < P; ++j) {
    r = A * r + B * forcing.control_at(sc.t0 + j + 1, false);
    if (fold_fines) {
      r += forcing.fines_at(j);
    }
    AP = A * AP;
  }
  const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) - AP;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  if (!(lu.rcond() > 1e-12)) {
    throw SingularSystem(
        "seasonal loop has no unique steady state (annual map close to "
        "identity)");
  }
  sc.x0 = lu.solve(r);

  // One value event at the start so year one carries the same disturbance
  // signature as later year boundaries.
  const long mo_first = month_of(sc.t0 + 1, sc.t0, config.seasonal_period);
  for (int s = 0; s < 4; ++s) {
    const double sign = forcing.seasonal(s, mo_first) >= 0.0 ? -1.0 : 1.0;
    sc.x0[kValueCells[s]] += kValueBase[s] * forcing.shock * sign;
  }

  sc.controls.reserve(static_cast<std::size_t>(config.T - 1));
  for (long j = 0; j + 1 < config.T; ++j) {
    sc.controls.push_back(forcing.control_at(sc.t0 + j + 1, true));
  }

  sc.noise.kind = NoiseKind::fines;
  sc.noise.sigma = config.noise_sigma;
  sc.noise.fine_magnitude = config.fine_magnitude;
  sc.noise.fine_period = config.fine_period;
  sc.noise.fine_components = {kFines};
  sc.noise.seed = config.seed;

  sc.labels = roster_labels();
  return sc;
}

ScenarioRun run_scenario(const Scenario& scenario) {
  const int n = 12;
  ScenarioRun run;
  run.trajectory.t0 = scenario.t0;
  run.trajectory.names = scenario.labels;
  const long T = static_cast<long>(scenario.controls.size()) + 1;
  run.trajectory.data.resize(T, n);
  run.trajectory.data.row(0) = scenario.x0.transpose();

  Eigen::VectorXd x = scenario.x0;
  for (long j = 0; j + 1 < T; ++j) {
    const Eigen::VectorXd xi = sample_noise(scenario.noise, j, n);
    x = step(scenario.model, x,
             scenario.controls[static_cast<std::size_t>(j)], xi);
    if (!x.allFinite()) {
      throw NonFinite("state overflowed to non-finite at t = " +
                      std::to_string(scenario.t0 + j + 1));
    }
    if (x[kWarehouse] < 0.0) {
      x[kWarehouse] = 0.0;
      ++run.clamp_events;
    }
    run.trajectory.data.row(j + 1) = x.transpose();
  }
  return run;
}

std::vector<int> production_components(
    const std::vector<std::string>& labels) {
  std::vector<int> out;
  const std::string suffix = "_output";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string& name = labels[i];
    if (name.size() >= suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

}  // namespace horizonkit
