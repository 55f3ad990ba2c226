#pragma once
// CSV serialization. All numeric output uses 12 significant digits so files
// diff cleanly while round-tripping within 1e-10. Parsers are strict: any
// malformed field fails with a line-numbered error instead of silently
// truncating.

#include <string>

#include "horizonkit/acf.hpp"
#include "horizonkit/trajectory.hpp"

namespace horizonkit {

// Fixed 12-significant-digit decimal rendering used for every value written.
std::string format_value(double v);

// Series files: header `t,<name1>,...,<nameN>`, then one row per period with
// an integer time label increasing by exactly 1 and N finite reals.
Trajectory read_series_csv(const std::string& path);
void write_series_csv(const Trajectory& traj, const std::string& path);

// Long-format indicator grid: `k,t,W,W_plus,W_minus,n_valid`, rows ordered by
// depth then time.
void write_indicator_csv(const DepthTimeMatrix& matrix, const std::string& path);

// Reporting transform of the indicator: each depth row scaled by its first
// entry (the base period). Rows whose base is numerically zero are emitted
// unscaled with the degenerate flag set. Header: `k,t,W_rel,degenerate`.
void write_relative_csv(const DepthTimeMatrix& matrix, const std::string& path);

// Depth summary: `k,W`.
void write_summary_csv(const DepthSummary& summary, const std::string& path);

// Reads either a summary CSV (`k,W`) or an indicator CSV
// (`k,t,W,W_plus,W_minus,n_valid`, summed over t per depth in file order).
DepthSummary read_depth_summary(const std::string& path);

}  // namespace horizonkit
