#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "capsweep/kernel.hpp"
#include "capsweep/types.hpp"

namespace capsweep {

enum class Principle { Energy, Maximum, DilatedMaximum, Domination };
enum class SearchMethod { Exhaustive, Randomized };

std::string to_string(Principle p);
std::string to_string(SearchMethod m);

/// Eigenvalue-level definiteness verdict. Thresholds are relative to the
/// spectral norm: semidefinite means the smallest eigenvalue clears
/// -1e-10 * |K|, strict means it clears +1e-10 * |K|.
struct PositiveDefiniteCheck {
  bool psd = false;
  bool strict = false;
  double min_eigenvalue = 0.0;
  /// Direction attaining the smallest eigenvalue; the witness of failure
  /// when psd is false.
  Eigen::VectorXd witness;
};

PositiveDefiniteCheck check_positive_definite(const KernelMatrix& k);

/// Violating configuration found by a principle search.
struct PrincipleWitness {
  Measure mu;
  /// Second measure, present for domination counterexamples.
  std::optional<Measure> omega;
  int site = -1;
  double amount = 0.0;
};

struct PrincipleReport {
  Principle principle = Principle::Energy;
  bool holds = false;
  /// Dilation constant; meaningful for Maximum and DilatedMaximum rows.
  double k = 0.0;
  SearchMethod method = SearchMethod::Exhaustive;
  std::optional<PrincipleWitness> witness;
};

/// Smallest factor k such that any measure whose potential stays at most 1
/// on its own support has potential at most k everywhere.
///
/// For each support S and each target site j off S the worst case is the
/// linear program: maximize (K mu)_j over mu >= 0 carried by S with
/// (K mu)_i <= 1 on S. Exhaustive mode enumerates every nonempty S (size
/// capped at 12 sites) and caches the result on the kernel; randomized mode
/// samples `trials` supports with the given seed and yields a lower bound.
/// The report's holds field answers whether k <= 1 + 1e-9, that is, whether
/// the classical maximum principle was observed.
PrincipleReport dilation_constant(const KernelMatrix& k, SearchMethod method, int trials = 200,
                                  std::uint64_t seed = 0);

/// Single hypothesis-conclusion check of the domination implication for a
/// concrete pair: when (K mu) <= (K omega) + tol on the support of mu, does
/// (K mu) <= (K omega) + tol hold on every site? `vacuous` marks pairs whose
/// hypothesis already fails; those return holds = true. On failure `site`
/// and `amount` give the worst site and the raw potential excess there.
struct DominationPairCheck {
  bool holds = true;
  bool vacuous = false;
  int site = -1;
  double amount = 0.0;
};

DominationPairCheck check_domination_pair(const KernelMatrix& k, const Measure& mu,
                                          const Measure& omega, double tol = 1e-8);

/// Adversarial search for a pair violating the domination implication.
///
/// Exhaustive mode decides the question exactly: for every support S (size
/// capped at 12 sites) and every site j off S it solves the linear program
/// maximize (K mu)_j - (K omega)_j over mu >= 0 on S, omega >= 0 anywhere,
/// total mass at most 1, subject to (K mu)_i <= (K omega)_i on S. A positive
/// optimum is a certified counterexample; if none exists the principle holds
/// and the verdict is cached on the kernel. Randomized mode instead probes
/// `trials` random (omega, A) pairs through the sweep construction, plus the
/// exact programs for all singleton and pair supports when the space is
/// small enough; its positive verdict is only empirical and never cached.
PrincipleReport search_domination(const KernelMatrix& k, SearchMethod method, int trials = 200,
                                  double tol = 1e-8, std::uint64_t seed = 0);

}  // namespace capsweep
