#include "capsweep/capacity.hpp"

#include <cmath>

#include "capsweep/errors.hpp"
#include "capsweep/lp.hpp"

namespace capsweep {
namespace {

void require_nonnegative(const PotentialField& f) {
  for (int i = 0; i < f.size(); ++i) {
    if (f[i] < 0.0) {
      throw NegativeEntry("field value " + std::to_string(f[i]) + " at site " + std::to_string(i) +
                          " is negative");
    }
  }
}

SolveReport solve_or_throw(const KernelMatrix& k, const PotentialField& f, double tol) {
  SolveReport rep = gauss_maximize(k, f, IndexSet::all(k.size()), tol);
  if (rep.status != SolveStatus::Converged) {
    throw SolverFailure("capacity solve ended with status " + to_string(rep.status));
  }
  return rep;
}

}  // namespace

double capacity(const KernelMatrix& k, const PotentialField& f, double tol) {
  require_nonnegative(f);
  const SolveReport rep = solve_or_throw(k, f, tol);
  return std::sqrt(std::max(0.0, rep.value));
}

Measure capacitary_measure(const KernelMatrix& k, const PotentialField& f, double tol) {
  require_nonnegative(f);
  k.require_strictly_pd();
  return solve_or_throw(k, f, tol).measure;
}

double dual_capacity(const KernelMatrix& k, const PotentialField& f, double tol) {
  require_nonnegative(f);
  const SolveReport rep = min_norm_dual(k, f, tol);
  if (rep.status != SolveStatus::Converged) {
    throw SolverFailure("dual capacity solve ended with status " + to_string(rep.status));
  }
  return rep.value;
}

double set_capacity(const KernelMatrix& k, const IndexSet& a, double tol) {
  return capacity(k, indicator(k.size(), a), tol);
}

double g_capacity(const KernelMatrix& k, const IndexSet& a) {
  const int n = k.size();
  a.validate(n);
  const Eigen::VectorXd c = indicator(n, a).values();
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
  const LpSolution sol = solve_lp(c, k.entries(), b);
  if (sol.status != LpStatus::Optimal) {
    throw LpFailure("covering capacity program did not reach an optimum");
  }
  return sol.value;
}

CapacityReport check_duality(const KernelMatrix& k, const PotentialField& f, double tol) {
  require_nonnegative(f);
  CapacityReport rep;
  const SolveReport primal = solve_or_throw(k, f, tol);
  rep.c = std::sqrt(std::max(0.0, primal.value));
  rep.capacitary_measure = primal.measure;
  rep.gamma = dual_capacity(k, f, tol);
  rep.duality_gap = std::abs(rep.c - rep.gamma);
  return rep;
}

CapacityReport check_duality(const KernelMatrix& k, const IndexSet& a, double tol) {
  CapacityReport rep = check_duality(k, indicator(k.size(), a), tol);
  rep.gcapa = g_capacity(k, a);
  return rep;
}

}  // namespace capsweep
