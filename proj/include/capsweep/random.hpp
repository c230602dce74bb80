#pragma once

#include <cstdint>
#include <random>

#include "capsweep/kernel.hpp"
#include "capsweep/types.hpp"

namespace capsweep {

/// Seeded generator used across all randomized sweeps. No global state; each
/// experiment threads one of these explicitly.
using Rng = std::mt19937_64;

/// Strictly positive definite random kernel B^T B + 0.1 I with B uniform on
/// [0, 1]. Entries are nonnegative and the diagonal dominates 0.1.
KernelMatrix random_kernel(int n, Rng& rng);

/// Random kernel built as the inverse of a diagonally dominant matrix with
/// nonpositive off-diagonal entries. Inverses of that shape have nonnegative
/// entries and tend to satisfy the domination principle, which makes them
/// the generator of choice for sweep property suites.
KernelMatrix random_green_kernel(int n, Rng& rng);

/// Exponential-decay kernel exp(-|x - y|) on sorted random points of a line
/// segment; unit diagonal. The classical example of a kernel obeying the
/// maximum principle.
KernelMatrix random_line_kernel(int n, Rng& rng);

/// Measure with independent uniform [0, 1] weights.
Measure random_measure(int n, Rng& rng);

/// Field with independent uniform [0, 1] values.
PotentialField random_field(int n, Rng& rng);

/// Uniformly random nonempty subset of the sites.
IndexSet random_subset(int n, Rng& rng);

}  // namespace capsweep
