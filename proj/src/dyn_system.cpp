#include "horizonkit/dyn_system.hpp"

#include <cmath>
#include <string>

#include "horizonkit/rng.hpp"

namespace horizonkit {

namespace {

void require_square(const Eigen::MatrixXd& A, const char* what) {
  if (A.rows() != A.cols()) {
    throw DimensionMismatch(std::string(what) + " matrix must be square, got " +
                            std::to_string(A.rows()) + "x" +
                            std::to_string(A.cols()));
  }
}

}  // namespace

Eigen::VectorXd sample_noise(const NoiseModel& noise, long t, int n) {
  if (n < 0) {
    throw DimensionMismatch("negative state dimension");
  }
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
  if (noise.kind == NoiseKind::none) {
    return xi;
  }
  if (noise.sigma > 0.0) {
    for (int i = 0; i < n; ++i) {
      xi[i] = noise.sigma * rng::gaussian(noise.seed,
                                          static_cast<std::uint64_t>(t),
                                          static_cast<std::uint64_t>(i));
    }
  }
  if (noise.kind == NoiseKind::fines && noise.fine_period >= 1 &&
      (t + 1) % noise.fine_period == 0) {
    for (int idx : noise.fine_components) {
      if (idx < 0 || idx >= n) {
        throw IndexOutOfRange("fine component " + std::to_string(idx) +
                              " outside state dimension " + std::to_string(n));
      }
      xi[idx] -= noise.fine_magnitude;
    }
  }
  return xi;
}

Eigen::VectorXd step(const SystemModel& model, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& u, const Eigen::VectorXd& xi) {
  require_square(model.A, "transition");
  const long n = model.A.rows();
  if (model.B.rows() != n) {
    throw DimensionMismatch("control matrix has " +
                            std::to_string(model.B.rows()) +
                            " rows, state dimension is " + std::to_string(n));
  }
  if (x.size() != n) {
    throw DimensionMismatch("state vector size " + std::to_string(x.size()) +
                            " does not match dimension " + std::to_string(n));
  }
  if (u.size() != model.B.cols()) {
    throw DimensionMismatch("control vector size " + std::to_string(u.size()) +
                            " does not match control dimension " +
                            std::to_string(model.B.cols()));
  }
  if (xi.size() != n) {
    throw DimensionMismatch("noise vector size " + std::to_string(xi.size()) +
                            " does not match dimension " + std::to_string(n));
  }
  return model.A * x + model.B * u + xi;
}

Trajectory simulate(const SystemModel& model, const Eigen::VectorXd& x0,
                    const std::vector<Eigen::VectorXd>& controls,
                    const NoiseModel& noise, long t0) {
  require_square(model.A, "transition");
  const long n = model.A.rows();
  if (x0.size() != n) {
    throw DimensionMismatch("initial state size " + std::to_string(x0.size()) +
                            " does not match dimension " + std::to_string(n));
  }
  const long T = static_cast<long>(controls.size()) + 1;
  Trajectory traj;
  traj.t0 = t0;
  traj.data.resize(T, n);
  traj.data.row(0) = x0.transpose();
  Eigen::VectorXd x = x0;
  for (long j = 0; j + 1 < T; ++j) {
    const Eigen::VectorXd xi = sample_noise(noise, j, static_cast<int>(n));
    x = step(model, x, controls[static_cast<std::size_t>(j)], xi);
    if (!x.allFinite()) {
      throw NonFinite("state overflowed to non-finite at t = " +
                      std::to_string(t0 + j + 1));
    }
    traj.data.row(j + 1) = x.transpose();
  }
  return traj;
}

Trajectory observe(const Trajectory& traj, const ObservationMap& map) {
  Trajectory out;
  out.t0 = traj.t0;
  out.data.resize(traj.length(), static_cast<long>(map.indices.size()));
  const bool labeled = !traj.names.empty();
  for (std::size_t j = 0; j < map.indices.size(); ++j) {
    const int idx = map.indices[j];
    if (idx < 0 || idx >= traj.dims()) {
      throw IndexOutOfRange("observation index " + std::to_string(idx) +
                            " outside [0, " + std::to_string(traj.dims() - 1) +
                            "]");
    }
    out.data.col(static_cast<long>(j)) = traj.data.col(idx);
    if (labeled) {
      out.names.push_back(traj.names[static_cast<std::size_t>(idx)]);
    }
  }
  return out;
}

Eigen::VectorXd leontief_observe(const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& x) {
  require_square(A, "technology");
  if (x.size() != A.rows()) {
    throw DimensionMismatch("state vector size " + std::to_string(x.size()) +
                            " does not match matrix dimension " +
                            std::to_string(A.rows()));
  }
  return x - A * x;
}

Eigen::VectorXd leontief_plan(const Eigen::MatrixXd& A,
                              const Eigen::VectorXd& y) {
  require_square(A, "technology");
  const long n = A.rows();
  if (y.size() != n) {
    throw DimensionMismatch("output vector size " + std::to_string(y.size()) +
                            " does not match matrix dimension " +
                            std::to_string(n));
  }
  const Eigen::MatrixXd M =
      Eigen::MatrixXd::Identity(n, n) - A;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12)) {
    throw SingularSystem(
        "technology map is singular or near-singular (reciprocal condition "
        "estimate " +
        std::to_string(rcond) + ")");
  }
  const Eigen::VectorXd x = lu.solve(y);
  const double scale = std::max(1.0, y.lpNorm<Eigen::Infinity>());
  const double residual = (M * x - y).lpNorm<Eigen::Infinity>();
  if (!(residual <= 1e-9 * scale)) {
    throw SingularSystem("solve residual " + std::to_string(residual) +
                         " exceeds tolerance; system is numerically unusable");
  }
  return x;
}

}  // namespace horizonkit
