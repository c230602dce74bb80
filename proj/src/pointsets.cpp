#include "capsweep/pointsets.hpp"

#include <cmath>

#include "capsweep/errors.hpp"

namespace capsweep {

Eigen::MatrixXd fibonacci_sphere(int n, double radius) {
  if (n < 1) throw PreconditionViolated("sphere lattice needs at least one point");
  if (!(radius > 0.0)) throw PreconditionViolated("sphere radius must be positive");

  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  Eigen::MatrixXd pts(n, 3);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double theta = golden_angle * static_cast<double>(i);
    pts(i, 0) = radius * rho * std::cos(theta);
    pts(i, 1) = radius * rho * std::sin(theta);
    pts(i, 2) = radius * z;
  }
  return pts;
}

}  // namespace capsweep
