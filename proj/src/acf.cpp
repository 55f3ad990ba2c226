#include "horizonkit/acf.hpp"

#include <cmath>
#include <string>

namespace horizonkit {

namespace {

void validate_spec(const WindowSpec& spec) {
  if (spec.depth < 2) {
    throw ConfigInvalid("depth must be at least 2, got " +
                        std::to_string(spec.depth));
  }
  if (spec.lag < 0) {
    throw ConfigInvalid("lag must be non-negative, got " +
                        std::to_string(spec.lag));
  }
}

// Per-anchor window statistics over one contiguous column. The window with
// anchor r covers rows [r-k, r): the k samples just before row r.
struct WindowStats {
  std::vector<double> mean;
  std::vector<double> sd;          // sample standard deviation, divisor k-1
  std::vector<char> degenerate;    // spread negligible against the mean
};

WindowStats window_stats(const double* x, long T, int k) {
  WindowStats s;
  s.mean.assign(static_cast<std::size_t>(T) + 1, 0.0);
  s.sd.assign(static_cast<std::size_t>(T) + 1, 0.0);
  s.degenerate.assign(static_cast<std::size_t>(T) + 1, 1);
  for (long r = k; r <= T; ++r) {
    double sum = 0.0;
    for (long j = r - k; j < r; ++j) sum += x[j];
    const double m = sum / k;
    double ss = 0.0;
    for (long j = r - k; j < r; ++j) {
      const double d = x[j] - m;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / (k - 1));
    s.mean[static_cast<std::size_t>(r)] = m;
    s.sd[static_cast<std::size_t>(r)] = sd;
    s.degenerate[static_cast<std::size_t>(r)] =
        (sd < 1e-12 * std::max(1.0, std::abs(m))) ? 1 : 0;
  }
  return s;
}

// Correlation between the windows anchored at rows a and b (= a + lag).
// Callers have already checked both anchors for degeneracy.
double window_correlation(const double* x, const WindowStats& s, long a, long b,
                          int k) {
  const double ma = s.mean[static_cast<std::size_t>(a)];
  const double mb = s.mean[static_cast<std::size_t>(b)];
  double cross = 0.0;
  for (int j = 0; j < k; ++j) {
    cross += (x[a - k + j] - ma) * (x[b - k + j] - mb);
  }
  return cross / ((k - 1) * s.sd[static_cast<std::size_t>(a)] *
                  s.sd[static_cast<std::size_t>(b)]);
}

}  // namespace

Eigen::VectorXd extract_window(const Trajectory& series, int component, long t,
                               int depth) {
  if (depth < 1) {
    throw ConfigInvalid("window depth must be positive, got " +
                        std::to_string(depth));
  }
  if (component < 0 || component >= series.dims()) {
    throw IndexOutOfRange("component " + std::to_string(component) +
                          " outside [0, " + std::to_string(series.dims() - 1) +
                          "]");
  }
  if (t - depth < series.t0 || t > series.t_end()) {
    throw InsufficientHistory(
        "window of depth " + std::to_string(depth) + " anchored at t = " +
        std::to_string(t) + " leaves the series range [" +
        std::to_string(series.t0) + ", " + std::to_string(series.t_end() - 1) +
        "]");
  }
  Eigen::VectorXd w(depth);
  for (int l = 1; l <= depth; ++l) {
    w[l - 1] = series.data(t - l - series.t0, component);
  }
  return w;
}

Eigen::VectorXd center_normalize(const Eigen::VectorXd& window) {
  const long k = window.size();
  if (k < 2) {
    throw ConfigInvalid("normalization needs at least 2 samples, got " +
                        std::to_string(k));
  }
  const double mean = window.sum() / static_cast<double>(k);
  const Eigen::VectorXd centered = window.array() - mean;
  const double sd =
      std::sqrt(centered.squaredNorm() / static_cast<double>(k - 1));
  if (sd < 1e-12 * std::max(1.0, std::abs(mean))) {
    throw ZeroVariance("window has no usable variance (sd = " +
                       std::to_string(sd) + ")");
  }
  return centered / sd;
}

double acf_value(const Trajectory& series, int component, long t,
                 const WindowSpec& spec) {
  validate_spec(spec);
  const Eigen::VectorXd a =
      center_normalize(extract_window(series, component, t, spec.depth));
  const Eigen::VectorXd b =
      center_normalize(extract_window(series, component, t + spec.lag,
                                      spec.depth));
  return a.dot(b) / static_cast<double>(spec.depth - 1);
}

std::vector<std::optional<double>> acf_row(const Trajectory& series, long t,
                                           const WindowSpec& spec) {
  validate_spec(spec);
  if (t - spec.depth < series.t0 || t + spec.lag > series.t_end()) {
    throw InsufficientHistory("anchor t = " + std::to_string(t) +
                              " outside the valid range [" +
                              std::to_string(series.t0 + spec.depth) + ", " +
                              std::to_string(series.t_end() - spec.lag) + "]");
  }
  std::vector<std::optional<double>> row;
  row.reserve(static_cast<std::size_t>(series.dims()));
  for (int i = 0; i < series.dims(); ++i) {
    try {
      row.push_back(acf_value(series, i, t, spec));
    } catch (const ZeroVariance&) {
      row.push_back(std::nullopt);
    }
  }
  return row;
}

IndicatorDecomposition decompose(const std::vector<std::optional<double>>& row,
                                 long t) {
  IndicatorDecomposition d;
  d.t = t;
  for (const auto& cell : row) {
    if (!cell.has_value()) continue;
    ++d.n_valid;
    if (*cell > 0.0) {
      d.w_plus += *cell;
    } else if (*cell < 0.0) {
      d.w_minus += *cell;
    }
  }
  d.w_total = d.w_plus + d.w_minus;
  return d;
}

std::vector<double> relative_to_base(const std::vector<double>& values,
                                     std::size_t base_index) {
  if (base_index >= values.size()) {
    throw IndexOutOfRange("base index " + std::to_string(base_index) +
                          " outside row of length " +
                          std::to_string(values.size()));
  }
  const double base = values[base_index];
  if (std::abs(base) < 1e-12) {
    throw DegenerateBase("base value " + std::to_string(base) +
                         " too close to zero to scale by");
  }
  std::vector<double> out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    out[j] = values[j] / base;
  }
  return out;
}

std::vector<std::optional<double>> component_cells(const Trajectory& series,
                                                   int component,
                                                   const WindowSpec& spec) {
  validate_spec(spec);
  if (component < 0 || component >= series.dims()) {
    throw IndexOutOfRange("component " + std::to_string(component) +
                          " outside [0, " + std::to_string(series.dims() - 1) +
                          "]");
  }
  const long T = series.length();
  const int k = spec.depth;
  std::vector<std::optional<double>> cells;
  if (T < k + spec.lag) {
    return cells;  // no valid anchor exists
  }
  const double* x = series.data.col(component).data();
  const WindowStats stats = window_stats(x, T, k);
  for (long a = k; a + spec.lag <= T; ++a) {
    const long b = a + spec.lag;
    if (stats.degenerate[static_cast<std::size_t>(a)] ||
        stats.degenerate[static_cast<std::size_t>(b)]) {
      cells.push_back(std::nullopt);
    } else {
      cells.push_back(window_correlation(x, stats, a, b, k));
    }
  }
  return cells;
}

DepthTimeMatrix depth_time_matrix(const Trajectory& series, int lag,
                                  int max_depth) {
  if (lag < 0) {
    throw ConfigInvalid("lag must be non-negative, got " + std::to_string(lag));
  }
  const long T = series.length();
  if (T < 4) {
    throw SeriesTooShort("analysis needs at least 4 rows, got " +
                         std::to_string(T));
  }
  const int default_depth = static_cast<int>(T / 2);
  int K = default_depth;
  if (max_depth != 0) {
    if (max_depth < 2) {
      throw ConfigInvalid("max depth must be at least 2, got " +
                          std::to_string(max_depth));
    }
    K = std::min(max_depth, default_depth);
  }

  DepthTimeMatrix matrix;
  matrix.lag = lag;
  matrix.t0 = series.t0;
  matrix.series_length = T;
  matrix.rows.reserve(static_cast<std::size_t>(K - 1));
  for (int k = 2; k <= K; ++k) {
    DepthRow row;
    row.depth = k;
    for (long a = k; a + lag <= T; ++a) {
      IndicatorDecomposition cell;
      cell.t = series.t0 + a;
      row.cells.push_back(cell);
    }
    matrix.rows.push_back(std::move(row));
  }

  // Accumulate component by component so each cell's sums run over ascending
  // parameter index regardless of loop structure (bit-stable aggregation).
  for (int i = 0; i < series.dims(); ++i) {
    const double* x = series.data.col(i).data();
    for (DepthRow& row : matrix.rows) {
      const int k = row.depth;
      const WindowStats stats = window_stats(x, T, k);
      for (std::size_t c = 0; c < row.cells.size(); ++c) {
        const long a = k + static_cast<long>(c);
        const long b = a + lag;
        if (stats.degenerate[static_cast<std::size_t>(a)] ||
            stats.degenerate[static_cast<std::size_t>(b)]) {
          continue;
        }
        const double v = window_correlation(x, stats, a, b, k);
        ++row.cells[c].n_valid;
        if (v > 0.0) {
          row.cells[c].w_plus += v;
        } else if (v < 0.0) {
          row.cells[c].w_minus += v;
        }
      }
    }
  }
  for (DepthRow& row : matrix.rows) {
    for (IndicatorDecomposition& cell : row.cells) {
      cell.w_total = cell.w_plus + cell.w_minus;
    }
  }
  return matrix;
}

DepthSummary depth_summary(const DepthTimeMatrix& matrix) {
  DepthSummary summary;
  summary.depths.reserve(matrix.rows.size());
  summary.totals.reserve(matrix.rows.size());
  for (const DepthRow& row : matrix.rows) {
    double total = 0.0;
    for (const IndicatorDecomposition& cell : row.cells) {
      total += cell.w_total;
    }
    summary.depths.push_back(row.depth);
    summary.totals.push_back(total);
  }
  return summary;
}

}  // namespace horizonkit
