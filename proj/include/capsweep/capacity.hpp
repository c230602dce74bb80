#pragma once

#include <optional>

#include "capsweep/gauss.hpp"
#include "capsweep/kernel.hpp"
#include "capsweep/types.hpp"

namespace capsweep {

/// Capacity of a field or set together with the dual value and, for sets,
/// the covering value from the linear program.
struct CapacityReport {
  double c = 0.0;
  double gamma = 0.0;
  std::optional<double> gcapa;
  double duality_gap = 0.0;
  Measure capacitary_measure;
};

/// Capacity c(f): the square root of the optimal value of gauss_maximize
/// over the full space. Requires f >= 0. Throws SolverFailure when the
/// underlying solve does not converge.
double capacity(const KernelMatrix& k, const PotentialField& f, double tol = 1e-9);

/// The maximizing measure behind capacity(f). Unique when K is strictly
/// positive definite, which this op requires.
Measure capacitary_measure(const KernelMatrix& k, const PotentialField& f, double tol = 1e-9);

/// Dual capacity: the smallest energy norm among nonnegative measures whose
/// potential covers f everywhere. Requires f >= 0, the domain shared with
/// the primal problem.
double dual_capacity(const KernelMatrix& k, const PotentialField& f, double tol = 1e-9);

/// Capacity of a set of sites: the capacity of its indicator field.
double set_capacity(const KernelMatrix& k, const IndexSet& a, double tol = 1e-9);

/// Covering capacity of a set: the largest mass a nonnegative measure can
/// place on A while its potential stays at most 1 on every site. The measure
/// may sit anywhere in the space. Solved as a linear program.
double g_capacity(const KernelMatrix& k, const IndexSet& a);

/// Solves the primal and dual problems for f independently and reports both
/// values, their gap and the maximizing measure.
CapacityReport check_duality(const KernelMatrix& k, const PotentialField& f, double tol = 1e-9);

/// Set overload of check_duality; additionally fills the gcapa field.
CapacityReport check_duality(const KernelMatrix& k, const IndexSet& a, double tol = 1e-9);

}  // namespace capsweep
