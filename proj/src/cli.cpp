#include "horizonkit/cli.hpp"

#include <clocale>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "horizonkit/config_io.hpp"
#include "horizonkit/dyn_system.hpp"
#include "horizonkit/horizon.hpp"
#include "horizonkit/scenario.hpp"
#include "horizonkit/series_io.hpp"
#include "text_util.hpp"

namespace horizonkit {

namespace {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// shared helpers

std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value,
                           std::uint64_t config_value) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv(kSeedEnvVar)) {
    std::uint64_t v = 0;
    if (!detail::parse_uint64(env, v)) {
      throw ConfigInvalid(std::string(kSeedEnvVar) + " is set to '" + env +
                          "', which is not a valid unsigned seed");
    }
    return v;
  }
  return config_value;
}

std::array<double, 3> parse_tiers(const std::string& text) {
  const auto fields = detail::split(text, ',');
  std::array<double, 3> tiers{};
  if (fields.size() != 3) {
    throw ConfigInvalid("tiers must be three comma-separated fractions");
  }
  for (std::size_t j = 0; j < 3; ++j) {
    if (!detail::parse_double(fields[j], tiers[j])) {
      throw ConfigInvalid("cannot parse tier fraction '" +
                          std::string(fields[j]) + "'");
    }
  }
  return tiers;
}

// Tier flags are validated at parse time so malformed values are usage errors.
std::string check_tiers(const std::string& text) {
  try {
    const auto tiers = parse_tiers(text);
    if (!(tiers[0] > 0.0 && tiers[0] < tiers[1] && tiers[1] < tiers[2] &&
          tiers[2] <= 1.0)) {
      return "tiers must satisfy 0 < t1 < t2 < t3 <= 1";
    }
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw FileError("cannot create directory '" + dir + "': " + ec.message());
  }
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) {
    std::cerr << "warning: " << w << '\n';
  }
}

// Fail the whole analysis when no window anywhere carried variance; a grid of
// absent cells is a numeric breakdown, not a report.
void require_defined_cells(const DepthTimeMatrix& matrix) {
  for (const DepthRow& row : matrix.rows) {
    for (const IndicatorDecomposition& cell : row.cells) {
      if (cell.n_valid > 0) return;
    }
  }
  throw ZeroVariance("every analysis window is degenerate (zero variance)");
}

std::string relative_path_for(const std::string& indicator_path) {
  const std::string suffix = ".csv";
  if (indicator_path.size() > suffix.size() &&
      indicator_path.compare(indicator_path.size() - suffix.size(),
                             suffix.size(), suffix) == 0) {
    return indicator_path.substr(0, indicator_path.size() - suffix.size()) +
           ".relative.csv";
  }
  return indicator_path + ".relative.csv";
}

std::string horizon_text(const HorizonRecommendation& rec) {
  std::ostringstream out;
  out << "short_k: " << rec.short_k << '\n';
  out << "medium_k: " << rec.medium_k << '\n';
  out << "long_k: " << rec.long_k << '\n';
  out << "short_fraction: " << format_value(rec.rationale[0]) << '\n';
  out << "medium_fraction: " << format_value(rec.rationale[1]) << '\n';
  out << "long_fraction: " << format_value(rec.rationale[2]) << '\n';
  out << "tiers: " << format_value(rec.tiers[0]) << ','
      << format_value(rec.tiers[1]) << ',' << format_value(rec.tiers[2])
      << '\n';
  out << "W[1]: undefined\n";
  return out.str();
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw FileError("cannot open '" + path + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw FileError("failed while writing '" + path + "'");
  }
}

// ---------------------------------------------------------------------------
// subcommand options

struct GenOptions {
  std::string scenario_name = "paper";
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

struct SimulateOptions {
  std::string config_path;
  std::string out_path = "trajectory.csv";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

struct AnalyzeOptions {
  std::string in_path;
  int lag = 1;
  int max_depth = 0;  // 0 selects the floor(T/2) default
  std::string out_path = "indicator.csv";
  std::string summary_path = "summary.csv";
  bool relative = false;
};

struct HorizonOptions {
  std::string in_path;
  std::string tiers = "0.5,0.8,0.95";
  std::string out_path;  // empty: standard output
};

struct ReportOptions {
  std::string scenario_name;
  std::string config_path;
  std::string in_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int lag = 1;
  int max_depth = 0;
  std::string tiers = "0.5,0.8,0.95";
  int peak_depth = 12;
  int osc_depth = 2;
  int osc_period = 3;
  std::string osc_component;  // empty: fines_cost label, else last column
  double prominence = 0.0;    // 0 selects 10% of the row's range
  bool relative = false;
};

// ---------------------------------------------------------------------------
// scenario sourcing

ScenarioConfig bundled_scenario(const std::string& name) {
  if (name == "paper" || name == "reference") {
    return reference_scenario();
  }
  throw ConfigInvalid("unknown scenario '" + name +
                      "' (available: paper, reference)");
}

struct ScenarioSource {
  ScenarioConfig config;
  Scenario scenario;
  ScenarioRun run;
};

ScenarioSource make_scenario(const ScenarioConfig& base, bool seed_given,
                             std::uint64_t seed_flag) {
  ScenarioSource src;
  src.config = base;
  src.config.seed = resolve_seed(seed_given, seed_flag, base.seed);
  src.scenario = build_scenario(src.config);
  print_warnings(src.scenario.warnings);
  src.run = run_scenario(src.scenario);
  return src;
}

// ---------------------------------------------------------------------------
// subcommand bodies

void run_gen(const GenOptions& opt) {
  const ScenarioConfig base = opt.config_path.empty()
                                  ? bundled_scenario(opt.scenario_name)
                                  : read_scenario_config(opt.config_path);
  const ScenarioSource src =
      make_scenario(base, opt.seed_given, opt.seed);
  ensure_directory(opt.out_dir);
  const fs::path dir(opt.out_dir);
  write_scenario_config(src.config, (dir / "scenario.cfg").string());
  write_series_csv(src.run.trajectory, (dir / "trajectory.csv").string());
  if (src.run.clamp_events > 0) {
    std::cerr << "note: warehouse stock clamped at zero "
              << src.run.clamp_events << " time(s)\n";
  }
}

void run_simulate(const SimulateOptions& opt) {
  const ScenarioConfig base = read_scenario_config(opt.config_path);
  const ScenarioSource src =
      make_scenario(base, opt.seed_given, opt.seed);
  write_series_csv(src.run.trajectory, opt.out_path);
  if (src.run.clamp_events > 0) {
    std::cerr << "note: warehouse stock clamped at zero "
              << src.run.clamp_events << " time(s)\n";
  }
}

void run_analyze(const AnalyzeOptions& opt) {
  const Trajectory series = read_series_csv(opt.in_path);
  const DepthTimeMatrix matrix =
      depth_time_matrix(series, opt.lag, opt.max_depth);
  require_defined_cells(matrix);
  write_indicator_csv(matrix, opt.out_path);
  write_summary_csv(depth_summary(matrix), opt.summary_path);
  if (opt.relative) {
    write_relative_csv(matrix, relative_path_for(opt.out_path));
  }
}

void run_horizon(const HorizonOptions& opt) {
  const DepthSummary summary = read_depth_summary(opt.in_path);
  const HorizonRecommendation rec =
      recommend_horizon(summary, parse_tiers(opt.tiers));
  const std::string text = horizon_text(rec);
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    write_text(text, opt.out_path);
  }
}

int resolve_osc_component(const std::string& requested,
                          const Trajectory& series) {
  if (!requested.empty()) {
    int idx = 0;
    if (detail::parse_int(requested, idx)) {
      if (idx < 0 || idx >= series.dims()) {
        throw IndexOutOfRange("oscillation component " + requested +
                              " outside [0, " +
                              std::to_string(series.dims() - 1) + "]");
      }
      return idx;
    }
    for (std::size_t i = 0; i < series.names.size(); ++i) {
      if (series.names[i] == requested) return static_cast<int>(i);
    }
    throw ConfigInvalid("no component labeled '" + requested + "'");
  }
  for (std::size_t i = 0; i < series.names.size(); ++i) {
    if (series.names[i] == "fines_cost") return static_cast<int>(i);
  }
  return series.dims() - 1;  // conventionally the cost/penalty series
}

std::string component_label(const Trajectory& series, int idx) {
  if (idx >= 0 && idx < static_cast<int>(series.names.size())) {
    return series.names[static_cast<std::size_t>(idx)];
  }
  return "x" + std::to_string(idx);
}

void run_report(const ReportOptions& opt) {
  // Source the trajectory: bundled scenario by default, else config, else a
  // pre-computed series file.
  std::optional<ScenarioSource> src;
  Trajectory series;
  if (!opt.in_path.empty()) {
    series = read_series_csv(opt.in_path);
  } else {
    const ScenarioConfig base =
        opt.config_path.empty()
            ? bundled_scenario(opt.scenario_name.empty() ? "paper"
                                                         : opt.scenario_name)
            : read_scenario_config(opt.config_path);
    src = make_scenario(base, opt.seed_given, opt.seed);
    series = src->run.trajectory;
  }

  ensure_directory(opt.out_dir);
  const fs::path dir(opt.out_dir);
  if (src) {
    write_scenario_config(src->config, (dir / "scenario.cfg").string());
    if (src->run.clamp_events > 0) {
      std::cerr << "note: warehouse stock clamped at zero "
                << src->run.clamp_events << " time(s)\n";
    }
  }
  write_series_csv(series, (dir / "trajectory.csv").string());

  const DepthTimeMatrix matrix =
      depth_time_matrix(series, opt.lag, opt.max_depth);
  require_defined_cells(matrix);
  const std::string indicator_path = (dir / "indicator.csv").string();
  write_indicator_csv(matrix, indicator_path);
  const DepthSummary summary = depth_summary(matrix);
  write_summary_csv(summary, (dir / "summary.csv").string());
  if (opt.relative) {
    write_relative_csv(matrix, relative_path_for(indicator_path));
  }

  const HorizonRecommendation rec =
      recommend_horizon(summary, parse_tiers(opt.tiers));
  write_text(horizon_text(rec), (dir / "horizon.txt").string());

  // Peaks of the aggregate indicator row at the requested depth.
  const DepthRow* peak_row = nullptr;
  for (const DepthRow& row : matrix.rows) {
    if (row.depth == opt.peak_depth) peak_row = &row;
  }
  if (peak_row == nullptr) {
    throw ConfigInvalid("peak depth " + std::to_string(opt.peak_depth) +
                        " has no indicator row (max available: " +
                        std::to_string(matrix.rows.back().depth) + ")");
  }
  std::vector<double> row_values;
  row_values.reserve(peak_row->cells.size());
  for (const IndicatorDecomposition& cell : peak_row->cells) {
    row_values.push_back(cell.w_total);
  }
  double prominence = opt.prominence;
  if (prominence <= 0.0 && !row_values.empty()) {
    const auto [lo, hi] =
        std::minmax_element(row_values.begin(), row_values.end());
    prominence = 0.1 * (*hi - *lo);
  }
  const PeakReport peaks = detect_peaks(
      row_values, prominence,
      peak_row->cells.empty() ? 0 : peak_row->cells.front().t);
  {
    std::ostringstream out;
    out << "depth: " << peak_row->depth << '\n';
    out << "lag: " << matrix.lag << '\n';
    out << "prominence_threshold: " << format_value(prominence) << '\n';
    out << "peak_times: ";
    for (std::size_t j = 0; j < peaks.peak_times.size(); ++j) {
      if (j > 0) out << ',';
      out << peaks.peak_times[j];
    }
    out << '\n';
    out << "prominences: ";
    for (std::size_t j = 0; j < peaks.prominences.size(); ++j) {
      if (j > 0) out << ',';
      out << format_value(peaks.prominences[j]);
    }
    out << '\n';
    out << "dominant_period: "
        << (peaks.dominant_period ? format_value(*peaks.dominant_period)
                                  : "undefined")
        << '\n';
    write_text(out.str(), (dir / "peaks.txt").string());
  }

  // Self-oscillation score of one component's indicator cell series.
  const int osc_idx = resolve_osc_component(opt.osc_component, series);
  const WindowSpec osc_spec{opt.osc_depth, opt.lag};
  const auto osc_cells = component_cells(series, osc_idx, osc_spec);
  std::vector<double> osc_series;
  for (const auto& cell : osc_cells) {
    if (cell.has_value()) osc_series.push_back(*cell);
  }
  const OscillationReport osc =
      detect_oscillation(osc_series, opt.osc_period);
  {
    std::ostringstream out;
    out << "component: " << osc_idx << '\n';
    out << "label: " << component_label(series, osc_idx) << '\n';
    out << "depth: " << osc_spec.depth << '\n';
    out << "lag: " << osc_spec.lag << '\n';
    out << "candidate_period: " << osc.period << '\n';
    out << "coverage: " << format_value(osc.coverage) << '\n';
    out << "expected_hits: " << osc.expected_hits << '\n';
    out << "observed_hits: " << osc.hit_times.size() << '\n';
    write_text(out.str(), (dir / "oscillation.txt").string());
  }

  // Developing/decaying split at the peak depth.
  const auto classes =
      classify_components(series, WindowSpec{opt.peak_depth, opt.lag});
  {
    std::ostringstream out;
    out << "component,label,positive_fraction,n_defined,class\n";
    for (const ComponentClassification& c : classes) {
      out << c.component << ',' << component_label(series, c.component) << ','
          << format_value(c.positive_fraction) << ',' << c.n_defined << ','
          << to_string(c.label) << '\n';
    }
    write_text(out.str(), (dir / "classification.csv").string());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  std::setlocale(LC_ALL, "C");  // fixed decimal formatting everywhere

  CLI::App app{
      "Linear production-system simulator with depth-parameterized "
      "autocorrelation analysis and planning-horizon recommendation"};
  app.name("horizonkit");
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand(
      "gen", "Build a scenario; write its config and trajectory");
  auto* gen_scenario = gen_cmd->add_option(
      "--scenario", gen.scenario_name, "Bundled scenario (paper|reference)");
  auto* gen_config = gen_cmd->add_option("--config", gen.config_path,
                                         "Scenario config file to build from");
  gen_scenario->excludes(gen_config);
  auto* gen_seed =
      gen_cmd->add_option("--seed", gen.seed, "Override the scenario seed");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")
      ->required();
  gen_cmd->callback([&] {
    gen.seed_given = gen_seed->count() > 0;
    run_gen(gen);
  });

  SimulateOptions sim;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Simulate a scenario config file");
  sim_cmd->add_option("--config", sim.config_path, "Scenario config file")
      ->required();
  sim_cmd->add_option("--out", sim.out_path, "Trajectory CSV to write");
  auto* sim_seed =
      sim_cmd->add_option("--seed", sim.seed, "Override the scenario seed");
  sim_cmd->callback([&] {
    sim.seed_given = sim_seed->count() > 0;
    run_simulate(sim);
  });

  AnalyzeOptions ana;
  auto* ana_cmd = app.add_subcommand(
      "analyze", "Compute the depth-time indicator grid of a trajectory");
  ana_cmd->add_option("--in", ana.in_path, "Trajectory CSV")->required();
  ana_cmd->add_option("--lag", ana.lag, "Window lag c")
      ->check(CLI::NonNegativeNumber);
  ana_cmd->add_option("--max-depth", ana.max_depth,
                      "Deepest row K (0 = floor(T/2))")
      ->check(CLI::Range(0, 1 << 20));
  ana_cmd->add_option("--out", ana.out_path, "Indicator CSV to write");
  ana_cmd->add_option("--summary-out", ana.summary_path,
                      "Depth summary CSV to write");
  ana_cmd->add_flag("--relative-base", ana.relative,
                    "Also write the base-period-scaled grid (.relative.csv)");
  ana_cmd->callback([&] { run_analyze(ana); });

  HorizonOptions hor;
  auto* hor_cmd = app.add_subcommand(
      "horizon", "Recommend planning depths from an indicator or summary CSV");
  hor_cmd->add_option("--in", hor.in_path, "Indicator or summary CSV")
      ->required();
  hor_cmd
      ->add_option("--tiers", hor.tiers,
                   "Three increasing captured-mass fractions")
      ->check(CLI::Validator(check_tiers, "TIERS"));
  hor_cmd->add_option("--out", hor.out_path,
                      "Write the recommendation here instead of stdout");
  hor_cmd->callback([&] { run_horizon(hor); });

  ReportOptions rep;
  auto* rep_cmd = app.add_subcommand(
      "report", "Full chain: simulate (or load), analyze, recommend, report");
  auto* rep_scenario = rep_cmd->add_option(
      "--scenario", rep.scenario_name, "Bundled scenario (paper|reference)");
  auto* rep_config = rep_cmd->add_option("--config", rep.config_path,
                                         "Scenario config file");
  auto* rep_in =
      rep_cmd->add_option("--in", rep.in_path, "Pre-computed trajectory CSV");
  rep_scenario->excludes(rep_config);
  rep_scenario->excludes(rep_in);
  rep_config->excludes(rep_in);
  auto* rep_seed =
      rep_cmd->add_option("--seed", rep.seed, "Override the scenario seed");
  rep_cmd->add_option("--out-dir", rep.out_dir, "Output directory")
      ->required();
  rep_cmd->add_option("--lag", rep.lag, "Window lag c")
      ->check(CLI::NonNegativeNumber);
  rep_cmd->add_option("--max-depth", rep.max_depth,
                      "Deepest row K (0 = floor(T/2))")
      ->check(CLI::Range(0, 1 << 20));
  rep_cmd
      ->add_option("--tiers", rep.tiers,
                   "Three increasing captured-mass fractions")
      ->check(CLI::Validator(check_tiers, "TIERS"));
  rep_cmd->add_option("--peak-depth", rep.peak_depth,
                      "Indicator row for peak detection and classification")
      ->check(CLI::Range(2, 1 << 20));
  rep_cmd->add_option("--osc-depth", rep.osc_depth,
                      "Window depth for the oscillation series")
      ->check(CLI::Range(2, 1 << 20));
  rep_cmd->add_option("--osc-period", rep.osc_period,
                      "Candidate self-oscillation period")
      ->check(CLI::Range(2, 1 << 20));
  rep_cmd->add_option("--osc-component", rep.osc_component,
                      "Component index or label to score for oscillation");
  rep_cmd->add_option("--prominence", rep.prominence,
                      "Peak prominence threshold (0 = 10% of row range)")
      ->check(CLI::NonNegativeNumber);
  rep_cmd->add_flag("--relative-base", rep.relative,
                    "Also write the base-period-scaled grid (.relative.csv)");
  rep_cmd->callback([&] {
    rep.seed_given = rep_seed->count() > 0;
    run_report(rep);
  });

  // CLI11 wants argc/argv; synthesize them from the argument vector.
  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("horizonkit");
  for (const std::string& a : args) argv_storage.push_back(a);
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version exit cleanly; misuse is 1
  } catch (const SingularSystem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NonFinite& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ZeroVariance& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace horizonkit
