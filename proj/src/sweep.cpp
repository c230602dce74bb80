#include "capsweep/sweep.hpp"

#include <cmath>

#include "capsweep/errors.hpp"

namespace capsweep {
namespace {

constexpr double kSolverTol = 1e-9;

SolveReport sweep_solve(const KernelMatrix& k, const PotentialField& target, const IndexSet& a,
                        double tol) {
  SolveReport rep = gauss_maximize(k, target, a, std::min(tol, kSolverTol));
  if (rep.status != SolveStatus::Converged) {
    throw SolverFailure("sweep solve ended with status " + to_string(rep.status));
  }
  return rep;
}

double pairwise_gap(double x, double y, double z) {
  return std::max(std::abs(x - y), std::abs(y - z));
}

}  // namespace

SweepReport balayage(const KernelMatrix& k, const Measure& omega, const IndexSet& a, double tol) {
  const int n = k.size();
  if (omega.size() != n) {
    throw DimensionMismatch("measure on " + std::to_string(omega.size()) +
                            " sites against kernel on " + std::to_string(n));
  }
  a.validate(n);
  if (!(tol > 0.0)) throw PreconditionViolated("tolerance must be positive");

  const PotentialField reference = potential(k, omega);
  const PotentialField target = restrict_field(reference, a);
  const SolveReport solve = sweep_solve(k, target, a, tol);

  SweepReport rep;
  rep.swept = solve.measure;
  rep.c_value = std::sqrt(std::max(0.0, solve.value));

  const double eff = tol * std::max(reference.max_value(), 1.0);
  const PotentialField swept_pot = potential(k, rep.swept);
  for (int i : a) rep.residual_a = std::max(rep.residual_a, std::abs(swept_pot[i] - reference[i]));
  for (int i = 0; i < n; ++i) {
    rep.residual_b = std::max(rep.residual_b, swept_pot[i] - reference[i]);
  }
  rep.residual_b = std::max(rep.residual_b, 0.0);
  rep.is_proper = rep.residual_b <= eff;

  const double cross = mutual_energy(k, omega, rep.swept);
  const double self = mutual_energy(k, rep.swept, rep.swept);
  rep.energy_identity_gap = pairwise_gap(cross, self, solve.value);

  const SolveReport dual = min_norm_dual(k, target, std::min(tol, kSolverTol));
  rep.dual_gap = std::abs(dual.value - rep.c_value);
  return rep;
}

SweepReport equilibrium(const KernelMatrix& k, const IndexSet& a, double tol) {
  const int n = k.size();
  a.validate(n);
  if (!(tol > 0.0)) throw PreconditionViolated("tolerance must be positive");

  const PotentialField target = indicator(n, a);
  const SolveReport solve = sweep_solve(k, target, a, tol);

  SweepReport rep;
  rep.swept = solve.measure;
  rep.c_value = std::sqrt(std::max(0.0, solve.value));

  const PotentialField pot = potential(k, rep.swept);
  if (k.maximum_principle_verified()) {
    for (int i : a) rep.residual_a = std::max(rep.residual_a, std::abs(pot[i] - 1.0));
  } else {
    for (int i : a) rep.residual_a = std::max(rep.residual_a, 1.0 - pot[i]);
    rep.residual_a = std::max(rep.residual_a, 0.0);
  }
  for (int i = 0; i < n; ++i) rep.residual_b = std::max(rep.residual_b, pot[i] - 1.0);
  rep.residual_b = std::max(rep.residual_b, 0.0);
  rep.is_proper = rep.residual_b <= tol;

  const double mass = rep.swept.mass_on(a);
  const double self = mutual_energy(k, rep.swept, rep.swept);
  rep.energy_identity_gap = pairwise_gap(mass, self, solve.value);

  const SolveReport dual = min_norm_dual(k, target, std::min(tol, kSolverTol));
  rep.dual_gap = std::abs(dual.value - rep.c_value);
  return rep;
}

EnvelopeReport lower_envelope(const KernelMatrix& k, const std::vector<Measure>& family,
                              double tol) {
  if (family.empty()) throw EmptyFamily("lower envelope of an empty family");
  const int n = k.size();
  if (!(tol > 0.0)) throw PreconditionViolated("tolerance must be positive");

  PotentialField envelope = potential(k, family.front());
  for (std::size_t t = 1; t < family.size(); ++t) {
    envelope = min_field(envelope, potential(k, family[t]));
  }

  const SolveReport solve = sweep_solve(k, envelope, IndexSet::all(n), tol);

  EnvelopeReport rep;
  rep.measure = solve.measure;
  const PotentialField pot = potential(k, rep.measure);
  const double support_eps = kSolverTol * rep.measure.weights().maxCoeff();
  for (int i = 0; i < n; ++i) {
    const double over = pot[i] - envelope[i];
    rep.global_residual = std::max(rep.global_residual, over);
    if (rep.measure[i] > support_eps) {
      rep.support_residual = std::max(rep.support_residual, std::abs(over));
    }
  }
  rep.global_residual = std::max(rep.global_residual, 0.0);
  return rep;
}

IteratedSweepResult iterated_sweep_check(const KernelMatrix& k, const Measure& omega,
                                         const IndexSet& a, const IndexSet& b, double tol) {
  const int n = k.size();
  a.validate(n);
  b.validate(n);
  if (!a.subset_of(b)) {
    throw PreconditionViolated("iterated sweep needs nested targets, got " + a.to_string() +
                               " not inside " + b.to_string());
  }
  k.require_strictly_pd();
  if (!k.domination_verified()) {
    throw PreconditionViolated("iterated sweep requires a kernel with verified domination");
  }

  const Measure once = balayage(k, omega, a, tol).swept;
  const Measure again = balayage(k, once, b, tol).swept;
  const Measure via_b = balayage(k, balayage(k, omega, b, tol).swept, a, tol).swept;

  IteratedSweepResult out;
  out.max_deviation =
      std::max((again.weights() - once.weights()).cwiseAbs().maxCoeff(),
               (via_b.weights() - once.weights()).cwiseAbs().maxCoeff());
  out.pass = out.max_deviation <= tol * std::max(omega.total_mass(), 1.0);
  return out;
}

}  // namespace capsweep
