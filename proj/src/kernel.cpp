#include "capsweep/kernel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace capsweep {
namespace {

constexpr double kSymmetryRelTol = 1e-12;
constexpr double kEigenRelTol = 1e-10;

std::string describe_entry(const Eigen::MatrixXd& g, Eigen::Index i, Eigen::Index j) {
  std::ostringstream os;
  os << "entry (" << i << "," << j << ") = " << g(i, j);
  return os.str();
}

}  // namespace

struct KernelMatrix::Cache {
  std::mutex mutex;
  bool spectral_done = false;
  double min_eig = 0.0;
  double max_abs_eig = 0.0;
  Eigen::VectorXd min_vec;
  std::optional<double> dilation_k;
  std::optional<bool> domination;
};

KernelMatrix::KernelMatrix(Eigen::MatrixXd g, double scale)
    : g_(std::move(g)), scale_(scale), cache_(std::make_shared<Cache>()) {}

KernelMatrix KernelMatrix::from_matrix(Eigen::MatrixXd g) {
  if (g.rows() != g.cols()) {
    throw DimensionMismatch("kernel table is " + std::to_string(g.rows()) + "x" +
                            std::to_string(g.cols()) + ", expected square");
  }
  if (g.rows() < 1) throw PreconditionViolated("kernel needs at least one site");
  if (!g.allFinite()) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = 0; j < g.cols(); ++j) {
        if (!std::isfinite(g(i, j))) {
          throw NonfiniteEntry("kernel " + describe_entry(g, i, j) + " is not finite");
        }
      }
    }
  }
  const double scale = g.cwiseAbs().maxCoeff();
  const double sym_tol = kSymmetryRelTol * scale;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < g.cols(); ++j) {
      if (std::abs(g(i, j) - g(j, i)) > sym_tol) {
        throw SymmetryViolation("kernel " + describe_entry(g, i, j) + " but " +
                                describe_entry(g, j, i));
      }
    }
  }
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (g(i, j) < 0.0) {
        throw NegativeEntry("kernel " + describe_entry(g, i, j) + " is negative");
      }
    }
  }
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (g(i, i) <= 0.0) {
      throw NonpositiveDiagonal("kernel diagonal " + describe_entry(g, i, i) +
                                " must be positive");
    }
  }
  Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  return KernelMatrix(std::move(sym), scale);
}

KernelMatrix KernelMatrix::riesz(const Space& space, double alpha, const DiagRule& rule) {
  const Eigen::MatrixXd& pts = space.points();
  const int n = space.size();
  const double d = static_cast<double>(space.dimension());
  if (!(alpha > 0.0 && alpha < d)) {
    throw AlphaOutOfRange("alpha = " + std::to_string(alpha) + " must lie in (0, " +
                          std::to_string(space.dimension()) + ")");
  }

  double diag = 0.0;
  switch (rule.kind) {
    case DiagRule::Kind::Constant:
      diag = rule.value;
      if (!(diag > 0.0) || !std::isfinite(diag)) {
        throw PreconditionViolated("constant diagonal value must be positive and finite");
      }
      break;
    case DiagRule::Kind::CellSelfEnergy: {
      double h = rule.value;
      if (h <= 0.0) h = mean_nearest_neighbor_distance(pts);
      if (!(h > 0.0) || !std::isfinite(h)) {
        throw PreconditionViolated("cell width must be positive and finite");
      }
      diag = std::pow(h, alpha - d);
      break;
    }
  }

  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = diag;
    for (int j = i + 1; j < n; ++j) {
      const double dist = (pts.row(i) - pts.row(j)).norm();
      if (dist == 0.0) {
        throw DuplicatePoints("points " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide");
      }
      const double v = std::min(std::pow(dist, alpha - d), diag);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return from_matrix(std::move(g));
}

void KernelMatrix::ensure_spectral() const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (cache_->spectral_done) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g_);
  if (eig.info() != Eigen::Success) {
    throw InternalError("eigendecomposition failed on a validated kernel");
  }
  cache_->min_eig = eig.eigenvalues().minCoeff();
  cache_->max_abs_eig = eig.eigenvalues().cwiseAbs().maxCoeff();
  cache_->min_vec = eig.eigenvectors().col(0);
  cache_->spectral_done = true;
}

bool KernelMatrix::is_psd() const {
  ensure_spectral();
  return cache_->min_eig >= -kEigenRelTol * cache_->max_abs_eig;
}

bool KernelMatrix::is_strictly_pd() const {
  ensure_spectral();
  return cache_->min_eig >= kEigenRelTol * cache_->max_abs_eig;
}

double KernelMatrix::min_eigenvalue() const {
  ensure_spectral();
  return cache_->min_eig;
}

double KernelMatrix::spectral_norm() const {
  ensure_spectral();
  return cache_->max_abs_eig;
}

Eigen::VectorXd KernelMatrix::min_eigenvector() const {
  ensure_spectral();
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->min_vec;
}

void KernelMatrix::require_psd() const {
  if (is_psd()) return;
  std::ostringstream os;
  os << "kernel is not positive semidefinite: eigenvalue " << min_eigenvalue()
     << " along direction [";
  const Eigen::VectorXd v = min_eigenvector();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) os << ", ";
    os << v[i];
  }
  os << "]";
  throw NotPositiveSemidefinite(os.str());
}

void KernelMatrix::require_strictly_pd() const {
  require_psd();
  if (!is_strictly_pd()) {
    std::ostringstream os;
    os << "kernel is semidefinite but not strictly positive definite: eigenvalue "
       << min_eigenvalue();
    throw NotStrictlyPositiveDefinite(os.str());
  }
}

std::optional<double> KernelMatrix::noted_dilation_constant() const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->dilation_k;
}

void KernelMatrix::note_dilation_constant(double k) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->dilation_k = k;
}

std::optional<bool> KernelMatrix::noted_domination() const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->domination;
}

void KernelMatrix::note_domination(bool holds) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->domination = holds;
}

bool KernelMatrix::domination_verified() const {
  const auto d = noted_domination();
  return d.has_value() && *d;
}

bool KernelMatrix::maximum_principle_verified() const {
  const auto k = noted_dilation_constant();
  return k.has_value() && *k <= 1.0 + 1e-9;
}

PotentialField potential(const KernelMatrix& k, const Measure& mu) {
  if (mu.size() != k.size()) {
    throw DimensionMismatch("measure on " + std::to_string(mu.size()) +
                            " sites against kernel on " + std::to_string(k.size()));
  }
  return PotentialField(k.entries() * mu.weights());
}

double mutual_energy(const KernelMatrix& k, const Measure& mu, const Measure& nu) {
  if (mu.size() != k.size() || nu.size() != k.size()) {
    throw DimensionMismatch("measure size does not match kernel size " +
                            std::to_string(k.size()));
  }
  return mu.weights().dot(k.entries() * nu.weights());
}

double energy_norm(const KernelMatrix& k, const Measure& mu) {
  return std::sqrt(std::max(0.0, mutual_energy(k, mu, mu)));
}

double integrate(const PotentialField& f, const Measure& mu) {
  if (f.size() != mu.size()) {
    throw DimensionMismatch("field on " + std::to_string(f.size()) + " sites against measure on " +
                            std::to_string(mu.size()));
  }
  return f.values().dot(mu.weights());
}

double quadratic_energy(const KernelMatrix& k, const Eigen::VectorXd& v) {
  if (v.size() != k.size()) {
    throw DimensionMismatch("density on " + std::to_string(v.size()) +
                            " sites against kernel on " + std::to_string(k.size()));
  }
  return v.dot(k.entries() * v);
}

double mean_nearest_neighbor_distance(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw PreconditionViolated("nearest-neighbor spacing needs at least two points");
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      best = std::min(best, (points.row(i) - points.row(j)).norm());
    }
    total += best;
  }
  return total / static_cast<double>(n);
}

}  // namespace capsweep
