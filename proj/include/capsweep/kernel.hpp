#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>

#include "capsweep/types.hpp"

namespace capsweep {

/// Rule for filling the diagonal of a distance-based kernel, where the
/// pointwise formula would blow up at zero distance.
struct DiagRule {
  enum class Kind { Constant, CellSelfEnergy };

  Kind kind = Kind::CellSelfEnergy;
  /// Constant: the diagonal value itself. CellSelfEnergy: the cell width h
  /// fed through the kernel formula; nonpositive h means "derive h from the
  /// mean nearest-neighbor spacing of the point cloud".
  double value = 0.0;

  static DiagRule constant(double m) { return {Kind::Constant, m}; }
  static DiagRule cell_self_energy(double h) { return {Kind::CellSelfEnergy, h}; }
  static DiagRule cell_self_energy_auto() { return {Kind::CellSelfEnergy, 0.0}; }
};

/// Symmetric kernel on a finite site set, stored densely.
///
/// Construction validates squareness, finiteness, symmetry (within 1e-12
/// relative to the largest entry magnitude), nonnegative entries and a
/// strictly positive diagonal, then replaces the table by (G + G^T)/2 so
/// downstream algebra sees an exactly symmetric matrix.
///
/// Spectral data and principle verdicts are cached lazily and shared between
/// copies; all accessors are safe to call concurrently.
class KernelMatrix {
 public:
  /// Validates and adopts an explicit entry table.
  static KernelMatrix from_matrix(Eigen::MatrixXd g);

  /// Builds the inverse-distance-power kernel |x - y|^(alpha - d) on a point
  /// cloud, with the diagonal filled per `rule` and every entry clamped to
  /// the diagonal value. Requires 0 < alpha < d.
  static KernelMatrix riesz(const Space& space, double alpha, const DiagRule& rule);

  int size() const { return static_cast<int>(g_.rows()); }
  const Eigen::MatrixXd& entries() const { return g_; }
  double operator()(int i, int j) const { return g_(i, j); }
  /// Largest entry magnitude; the scale used by relative tolerances.
  double max_entry() const { return scale_; }

  /// Smallest eigenvalue at least -1e-10 times the spectral norm.
  bool is_psd() const;
  /// Smallest eigenvalue at least +1e-10 times the spectral norm.
  bool is_strictly_pd() const;
  double min_eigenvalue() const;
  double spectral_norm() const;
  /// Unit vector attaining the smallest eigenvalue; the witness reported
  /// when a definiteness gate rejects the kernel.
  Eigen::VectorXd min_eigenvector() const;

  /// Throws NotPositiveSemidefinite with the witness direction in the
  /// message when is_psd() is false.
  void require_psd() const;
  /// Throws NotStrictlyPositiveDefinite when is_strictly_pd() is false.
  void require_strictly_pd() const;

  /// Best dilation constant found so far by the exhaustive search, if any.
  std::optional<double> noted_dilation_constant() const;
  void note_dilation_constant(double k) const;

  /// Outcome of an exhaustive domination search: true means the principle
  /// was verified to hold, false means a witness violation was found.
  /// Empty until such a search has run.
  std::optional<bool> noted_domination() const;
  void note_domination(bool holds) const;
  bool domination_verified() const;

  /// Outcome of an exhaustive dilation search compared against k <= 1:
  /// true once the classical maximum principle is verified.
  bool maximum_principle_verified() const;

 private:
  KernelMatrix(Eigen::MatrixXd g, double scale);

  struct Cache;
  void ensure_spectral() const;

  Eigen::MatrixXd g_;
  double scale_ = 0.0;
  std::shared_ptr<Cache> cache_;
};

/// Potential of a measure: the field (K mu) with values sum_j K(i,j) mu_j.
PotentialField potential(const KernelMatrix& k, const Measure& mu);

/// Mutual energy mu^T K nu; symmetric in its measure arguments.
double mutual_energy(const KernelMatrix& k, const Measure& mu, const Measure& nu);

/// Energy norm sqrt(mu^T K mu), with tiny negative squares clamped to zero.
double energy_norm(const KernelMatrix& k, const Measure& mu);

/// Integral of a field against a measure: sum_i f_i mu_i.
double integrate(const PotentialField& f, const Measure& mu);

/// Quadratic form v^T K v for a signed density, such as the difference of
/// two measures.
double quadratic_energy(const KernelMatrix& k, const Eigen::VectorXd& v);

/// Mean over all sites of the distance to the nearest other site.
/// Requires at least two points.
double mean_nearest_neighbor_distance(const Eigen::MatrixXd& points);

}  // namespace capsweep
