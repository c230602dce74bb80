#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capsweep/kernel.hpp"

namespace capsweep {

/// Outcome of one named invariant check.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the randomized invariant suite against one kernel: primal-dual
/// agreement, first-order optimality of every capacitary measure, positive
/// homogeneity of the capacity, and the sandwich between squared set
/// capacity and the covering value. Requires a strictly positive definite
/// kernel. The 2k upper bound is only checked when the space is small enough
/// for the exhaustive dilation search.
std::vector<CheckResult> run_verification(const KernelMatrix& k, int trials, std::uint64_t seed,
                                          double tol);

struct StudyParams {
  double radius = 1.0;
  double alpha = 2.0;
  std::vector<int> point_counts = {100, 200, 500};
  double exterior_distance = 2.0;
};

struct StudyRow {
  int n = 0;
  double capacity_sq = 0.0;
  double swept_mass = 0.0;
  double residual_a = 0.0;
  double residual_b = 0.0;
  double runtime_ms = 0.0;
};

/// Sphere lattice refinement study: for each point count, the squared
/// capacity of the lattice sphere and the swept mass of a unit charge at an
/// exterior site, with the sweep residuals and wall time per row.
std::vector<StudyRow> run_sphere_study(const StudyParams& params);

}  // namespace capsweep
