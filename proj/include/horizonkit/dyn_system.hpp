#pragma once
// Discrete-time linear state-space dynamics
//
//     x(t+1) = A x(t) + B u(t) + xi(t)
//
// plus the two input-output planning problems on the technology matrix A:
// observe y = (E - A) x and plan x = (E - A)^{-1} y.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "horizonkit/errors.hpp"
#include "horizonkit/trajectory.hpp"

namespace horizonkit {

struct SystemModel {
  Eigen::MatrixXd A;  // n x n state transition
  Eigen::MatrixXd B;  // n x m control injection
};

enum class NoiseKind { none, gaussian, fines };

// Exogenous disturbance description. "gaussian" draws i.i.d. N(0, sigma^2)
// per component; "fines" additionally applies a deterministic negative
// impulse of fine_magnitude to the designated components every fine_period
// steps (cadence counted so the impulse lands on rows t+1 with
// (t+1) % fine_period == 0).
struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  double sigma = 0.0;
  double fine_magnitude = 0.0;
  long fine_period = 0;
  std::vector<int> fine_components;
  std::uint64_t seed = 0;
};

struct ObservationMap {
  std::vector<int> indices;  // columns to expose, in output order
};

// Disturbance vector for the transition from step t to t+1. Pure function of
// (model, t): sampling any step is independent of all other steps.
Eigen::VectorXd sample_noise(const NoiseModel& noise, long t, int n);

// One transition. Dimensions are checked; the result is not (callers that
// iterate check finiteness once per step with a time label).
Eigen::VectorXd step(const SystemModel& model, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& u, const Eigen::VectorXd& xi);

// Roll the system forward: row 0 is x0, row j+1 = step(row j, controls[j],
// sample_noise(noise, j)). The trajectory has controls.size() + 1 rows.
Trajectory simulate(const SystemModel& model, const Eigen::VectorXd& x0,
                    const std::vector<Eigen::VectorXd>& controls,
                    const NoiseModel& noise, long t0 = 0);

// Column selection y(t) = psi(x(t)); preserves time labels and names.
Trajectory observe(const Trajectory& traj, const ObservationMap& map);

// y = (E - A) x : net output of a state under technology matrix A.
Eigen::VectorXd leontief_observe(const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& x);

// x = (E - A)^{-1} y : state required to deliver net output y. Throws
// SingularSystem when E - A is singular or numerically rank-deficient
// (reciprocal condition estimate at or below 1e-12), or when the solve
// cannot meet the residual contract |(E-A)x - y|_inf <= 1e-9 * max(1,|y|_inf).
Eigen::VectorXd leontief_plan(const Eigen::MatrixXd& A,
                              const Eigen::VectorXd& y);

}  // namespace horizonkit
