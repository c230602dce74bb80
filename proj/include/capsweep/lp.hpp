#pragma once

#include <Eigen/Dense>

namespace capsweep {

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
};

/// Maximizes c^T x subject to a x <= b and x >= 0 with a dense two-phase
/// tableau simplex. Bland's rule picks entering and leaving variables, so the
/// iteration cannot cycle. Negative right-hand sides are allowed; phase one
/// decides feasibility. An empty constraint system is treated as feasible
/// with only the sign constraints active.
LpSolution solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace capsweep
