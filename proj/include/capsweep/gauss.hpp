#pragma once

#include <string>

#include "capsweep/kernel.hpp"
#include "capsweep/types.hpp"

namespace capsweep {

enum class SolveStatus { Converged, MaxIterations, Infeasible };

std::string to_string(SolveStatus s);

/// First-order optimality residuals of a candidate maximizer mu for the
/// quadratic program behind gauss_maximize.
struct KKTReport {
  /// max over the allowed sites of (f - K mu), positive part.
  double max_under_shoot = 0.0;
  /// max over the support of mu of |K mu - f|.
  double max_support_gap = 0.0;
  /// |<f, mu> - mu^T K mu|.
  double complementarity_gap = 0.0;
  /// Threshold that defined the support: sites with mu_i above it.
  double support_eps = 0.0;

  bool within(double threshold) const {
    return max_under_shoot <= threshold && max_support_gap <= threshold &&
           complementarity_gap <= threshold;
  }
};

struct SolveReport {
  Measure measure;
  /// Objective 2 <f, nu> - nu^T K nu at the returned point.
  double value = 0.0;
  double max_under_shoot = 0.0;
  double max_support_gap = 0.0;
  /// Effective tolerance the residuals were checked against.
  double tolerance = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::Infeasible;
};

/// Maximizes 2 <f, nu> - nu^T K nu over measures nu >= 0 supported inside
/// `allowed`, the variational problem whose optimum value is the squared
/// capacity of f.
///
/// Runs an active-set iteration: solve the unconstrained problem on the
/// working support, step back and drop the most negative coordinate while
/// the solve leaves the cone, otherwise admit the most violated site of the
/// optimality condition K nu >= f - tol on `allowed`. Ties break toward the
/// lowest site index. When a working-set system is singular beyond a relative
/// pivot floor of 1e-10 the iteration restarts as projected gradient ascent
/// with step 1 / lambda_max(K).
///
/// `tol` is scaled by max(f, 1) before use. `initial_support` seeds the
/// working set; distinct seeds must converge to the same maximizer whenever
/// K is strictly positive definite. The iteration budget is 50 n.
SolveReport gauss_maximize(const KernelMatrix& k, const PotentialField& f, const IndexSet& allowed,
                           double tol = 1e-9, const IndexSet& initial_support = IndexSet());

/// Minimizes the energy norm over measures lambda >= 0 with K lambda >= f
/// everywhere. The minimizer coincides with the gauss_maximize optimizer on
/// the full space; feasibility of the returned point is re-verified from
/// scratch and a violation is reported as an internal error. The report's
/// value field holds the attained norm sqrt(lambda^T K lambda).
SolveReport min_norm_dual(const KernelMatrix& k, const PotentialField& f, double tol = 1e-9);

/// Reference maximizer obtained by enumerating every support subset of
/// `allowed`, solving the unconstrained system on it and filtering by the
/// cone and optimality conditions. Exponential in |allowed|; refuses more
/// than 14 candidate sites. Intended as an oracle for the iterative solver.
SolveReport brute_force_capacitary(const KernelMatrix& k, const PotentialField& f,
                                   const IndexSet& allowed);

/// Residuals of the optimality system at mu, with the support cut at
/// tol * max(mu).
KKTReport verify_kkt(const KernelMatrix& k, const PotentialField& f, const Measure& mu,
                     const IndexSet& allowed, double tol = 1e-9);

}  // namespace capsweep
