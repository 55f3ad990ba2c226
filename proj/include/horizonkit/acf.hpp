#pragma once
// Depth-parameterized autocorrelation indicator.
//
// For a depth k and lag c, each parameter contributes a cell at anchor time t:
// the Pearson correlation between its window [x(t-1) .. x(t-k)] and the lagged
// window [x(t+c-1) .. x(t+c-k)], each centered and scaled to unit sample
// standard deviation (divisor k-1). Cells whose windows carry no variance are
// absent, not zero. Per (k,t) the defined cells are split into a positive and
// a negative sum; rows over all valid t for k = 2..K form the depth-time
// matrix, and the row totals give the depth summary used for horizon
// selection.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "horizonkit/errors.hpp"
#include "horizonkit/trajectory.hpp"

namespace horizonkit {

struct WindowSpec {
  int depth = 2;  // k >= 2; window length in billing periods
  int lag = 1;    // c >= 0; offset between the two windows
};

// Aggregation of one (k, t) grid entry over all parameters.
struct IndicatorDecomposition {
  long t = 0;
  double w_total = 0.0;
  double w_plus = 0.0;   // sum over strictly positive cells
  double w_minus = 0.0;  // sum over strictly negative cells
  int n_valid = 0;       // parameters whose cell is defined
};

struct DepthRow {
  int depth = 2;
  std::vector<IndicatorDecomposition> cells;  // ascending t
};

struct DepthTimeMatrix {
  int lag = 1;
  long t0 = 0;
  long series_length = 0;
  std::vector<DepthRow> rows;  // depth 2..K ascending
};

struct DepthSummary {
  std::vector<int> depths;     // ascending
  std::vector<double> totals;  // W[k]: row sum over valid t
};

// The k most recent samples before t, newest first:
// [x(t-1), x(t-2), ..., x(t-k)].
Eigen::VectorXd extract_window(const Trajectory& series, int component, long t,
                               int depth);

// Shift to zero mean, scale to unit sample standard deviation (divisor k-1).
// Throws ZeroVariance when the spread is negligible against the mean
// (sd < 1e-12 * max(1, |mean|)).
Eigen::VectorXd center_normalize(const Eigen::VectorXd& window);

// One correlation cell; see file header. Throws InsufficientHistory when
// either window leaves the series, ZeroVariance when either is degenerate.
double acf_value(const Trajectory& series, int component, long t,
                 const WindowSpec& spec);

// All parameters' cells at one anchor; degenerate cells are absent.
// Throws InsufficientHistory when t itself is out of the valid anchor range.
std::vector<std::optional<double>> acf_row(const Trajectory& series, long t,
                                           const WindowSpec& spec);

// Split a row into positive/negative sums (left to right; exact zeros join
// neither). An empty or all-absent row yields (0, 0, 0) with n_valid = 0.
IndicatorDecomposition decompose(const std::vector<std::optional<double>>& row,
                                 long t);

// Scale a row of indicator values by the entry at base_index (the first valid
// period, by convention). Throws DegenerateBase when |base| < 1e-12.
std::vector<double> relative_to_base(const std::vector<double>& values,
                                     std::size_t base_index);

// One parameter's cell value per valid anchor t in [t0+k, t0+T-c]; degenerate
// windows yield absent entries.
std::vector<std::optional<double>> component_cells(const Trajectory& series,
                                                   int component,
                                                   const WindowSpec& spec);

// Full grid: rows k = 2..max_depth (0 selects the default floor(T/2), larger
// requests are clamped to it), anchors t in [t0+k, t0+T-lag] per row.
// Throws SeriesTooShort when T < 4.
DepthTimeMatrix depth_time_matrix(const Trajectory& series, int lag,
                                  int max_depth = 0);

// Row totals W[k] = sum over valid t of w_total, summed left to right.
DepthSummary depth_summary(const DepthTimeMatrix& matrix);

}  // namespace horizonkit
