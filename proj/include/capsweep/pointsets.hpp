#pragma once

#include <Eigen/Dense>

namespace capsweep {

/// Quasi-uniform lattice of n points on the sphere of the given radius,
/// generated by the golden-angle spiral. Deterministic in n.
Eigen::MatrixXd fibonacci_sphere(int n, double radius = 1.0);

}  // namespace capsweep
