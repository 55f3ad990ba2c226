#pragma once
// Time-labeled multivariate series: one row per billing period, one column per
// tracked parameter. Row r holds the state at time t0 + r.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "horizonkit/errors.hpp"

namespace horizonkit {

struct Trajectory {
  Eigen::MatrixXd data;            // T x n, row per time step
  long t0 = 0;                     // time label of row 0
  std::vector<std::string> names;  // empty, or one label per column

  long length() const { return data.rows(); }
  int dims() const { return static_cast<int>(data.cols()); }

  // First time label past the end of the series.
  long t_end() const { return t0 + length(); }

  // Time-indexed, bounds-checked element access.
  double value(long t, int component) const {
    const long r = t - t0;
    if (r < 0 || r >= length()) {
      throw IndexOutOfRange("time " + std::to_string(t) +
                            " outside series range [" + std::to_string(t0) +
                            ", " + std::to_string(t_end() - 1) + "]");
    }
    if (component < 0 || component >= dims()) {
      throw IndexOutOfRange("component " + std::to_string(component) +
                            " outside [0, " + std::to_string(dims() - 1) + "]");
    }
    return data(r, component);
  }
};

}  // namespace horizonkit
