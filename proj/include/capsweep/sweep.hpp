#pragma once

#include <vector>

#include "capsweep/gauss.hpp"
#include "capsweep/kernel.hpp"
#include "capsweep/types.hpp"

namespace capsweep {

/// Result of sweeping a measure onto a set of sites.
struct SweepReport {
  Measure swept;
  /// Capacity of the target field; square root of the attained objective.
  double c_value = 0.0;
  /// max over the target set of |potential(swept) - reference|. Expected at
  /// tolerance only when the kernel has a verified domination or maximum
  /// principle; the one-sided part holds unconditionally.
  double residual_a = 0.0;
  /// max over every site of (potential(swept) - reference), positive part.
  double residual_b = 0.0;
  /// Worst gap in the chain mass/energy identities tied to the sweep.
  double energy_identity_gap = 0.0;
  /// True when the swept potential nowhere exceeds the reference beyond
  /// tolerance, the hallmark of a proper sweep.
  bool is_proper = false;
  /// Disagreement between the dual route to c_value and the primal one.
  /// Not part of the serialized report; recorded for verification suites.
  double dual_gap = 0.0;
};

/// Sweeps omega onto A: the maximizer for the target field that equals the
/// potential of omega on A and vanishes elsewhere, carried by A. `tol`
/// scales with the largest reference potential value and gates the residual
/// verdicts in the report.
SweepReport balayage(const KernelMatrix& k, const Measure& omega, const IndexSet& a,
                     double tol = 1e-8);

/// Equilibrium of a set: the maximizer for the indicator of A, carried by A.
/// Its total mass, squared energy norm and squared capacity agree; the gap
/// field records how well. residual_a compares the potential against 1 on A,
/// two-sided once the kernel's maximum principle has been verified, else
/// one-sided from below.
SweepReport equilibrium(const KernelMatrix& k, const IndexSet& a, double tol = 1e-8);

struct EnvelopeReport {
  Measure measure;
  /// max over the support of |potential - envelope|; the envelope is
  /// attained exactly where the measure sits.
  double support_residual = 0.0;
  /// max over every site of (potential - envelope), positive part.
  double global_residual = 0.0;
};

/// Capacitary solve for the pointwise minimum of the potentials of a family
/// of measures. Under a verified domination principle the resulting
/// potential stays below the envelope everywhere.
EnvelopeReport lower_envelope(const KernelMatrix& k, const std::vector<Measure>& family,
                              double tol = 1e-8);

struct IteratedSweepResult {
  bool pass = false;
  double max_deviation = 0.0;
};

/// Consistency of repeated sweeps for nested targets A inside B: sweeping
/// the A-swept measure onto B must change nothing, and sweeping onto B then
/// A must agree with sweeping onto A directly. Requires a strictly positive
/// definite kernel whose domination principle has been verified.
IteratedSweepResult iterated_sweep_check(const KernelMatrix& k, const Measure& omega,
                                         const IndexSet& a, const IndexSet& b, double tol = 1e-8);

}  // namespace capsweep
