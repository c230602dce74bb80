#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capsweep/errors.hpp"

namespace capsweep {

/// Sorted, duplicate-free set of site indices. Entries are validated to be
/// nonnegative at construction and checked against a space size at use sites.
class IndexSet {
 public:
  IndexSet() = default;

  IndexSet(std::initializer_list<int> indices) : IndexSet(std::vector<int>(indices)) {}

  explicit IndexSet(std::vector<int> indices) : indices_(std::move(indices)) {
    for (int i : indices_) {
      if (i < 0) throw IndexOutOfRange("index set contains negative index " + std::to_string(i));
    }
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  }

  /// The full space {0, ..., n-1}.
  static IndexSet all(int n) {
    std::vector<int> v(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    return IndexSet(std::move(v));
  }

  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  const std::vector<int>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(int i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }

  bool subset_of(const IndexSet& other) const {
    return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                         indices_.end());
  }

  /// Throws IndexOutOfRange unless every index lies in [0, n).
  void validate(int n) const {
    if (!indices_.empty() && indices_.back() >= n) {
      throw IndexOutOfRange("index " + std::to_string(indices_.back()) +
                            " out of range for space of size " + std::to_string(n));
    }
  }

  IndexSet complement(int n) const {
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (!contains(i)) v.push_back(i);
    }
    return IndexSet(std::move(v));
  }

  bool operator==(const IndexSet& other) const { return indices_ == other.indices_; }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (k > 0) s += ",";
      s += std::to_string(indices_[k]);
    }
    return s + "}";
  }

 private:
  std::vector<int> indices_;
};

/// Finite state space: a site count plus optional point coordinates used by
/// geometric kernel builders. Rows of `points` must be pairwise distinct.
class Space {
 public:
  static Space of_size(int n) {
    if (n < 1) throw PreconditionViolated("space must contain at least one site");
    Space s;
    s.n_ = n;
    return s;
  }

  static Space from_points(Eigen::MatrixXd points) {
    if (points.rows() < 1) throw PreconditionViolated("space must contain at least one site");
    if (!points.allFinite()) throw NonfiniteEntry("point cloud contains a nonfinite coordinate");
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
        if ((points.row(i) - points.row(j)).norm() == 0.0) {
          throw DuplicatePoints("points " + std::to_string(i) + " and " + std::to_string(j) +
                                " coincide");
        }
      }
    }
    Space s;
    s.n_ = static_cast<int>(points.rows());
    s.points_ = std::move(points);
    return s;
  }

  int size() const { return n_; }
  bool has_points() const { return points_.has_value(); }
  const Eigen::MatrixXd& points() const {
    if (!points_) throw PreconditionViolated("space carries no point coordinates");
    return *points_;
  }
  int dimension() const { return static_cast<int>(points().cols()); }

 private:
  int n_ = 0;
  std::optional<Eigen::MatrixXd> points_;
};

/// Nonnegative vector of site masses. Entries are validated to be finite and
/// nonnegative at construction; arithmetic lives on the underlying vector.
class Measure {
 public:
  /// Empty measure on zero sites; useful as a report placeholder.
  Measure() = default;

  explicit Measure(Eigen::VectorXd weights) : w_(std::move(weights)) {
    if (!w_.allFinite()) throw NonfiniteEntry("measure contains a nonfinite weight");
    for (Eigen::Index i = 0; i < w_.size(); ++i) {
      if (w_[i] < 0.0) {
        throw NegativeEntry("measure weight " + std::to_string(w_[i]) + " at site " +
                            std::to_string(i) + " is negative");
      }
    }
  }

  static Measure zero(int n) { return Measure(Eigen::VectorXd::Zero(n)); }

  static Measure unit_at(int n, int site) {
    if (site < 0 || site >= n) {
      throw IndexOutOfRange("site " + std::to_string(site) + " out of range for space of size " +
                            std::to_string(n));
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    w[site] = 1.0;
    return Measure(std::move(w));
  }

  int size() const { return static_cast<int>(w_.size()); }
  const Eigen::VectorXd& weights() const { return w_; }
  double operator[](int i) const { return w_[i]; }
  double total_mass() const { return w_.sum(); }
  double mass_on(const IndexSet& a) const {
    a.validate(size());
    double m = 0.0;
    for (int i : a) m += w_[i];
    return m;
  }

  /// Sites whose weight exceeds eps.
  IndexSet support(double eps = 0.0) const {
    std::vector<int> idx;
    for (int i = 0; i < size(); ++i) {
      if (w_[i] > eps) idx.push_back(i);
    }
    return IndexSet(std::move(idx));
  }

 private:
  Eigen::VectorXd w_;
};

/// Real-valued function on the sites, stored densely. Entries must be finite.
class PotentialField {
 public:
  explicit PotentialField(Eigen::VectorXd values) : v_(std::move(values)) {
    if (!v_.allFinite()) throw NonfiniteEntry("field contains a nonfinite value");
  }

  static PotentialField zero(int n) { return PotentialField(Eigen::VectorXd::Zero(n)); }
  static PotentialField constant(int n, double c) {
    return PotentialField(Eigen::VectorXd::Constant(n, c));
  }

  int size() const { return static_cast<int>(v_.size()); }
  const Eigen::VectorXd& values() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  double max_value() const { return v_.size() == 0 ? 0.0 : v_.maxCoeff(); }
  bool nonnegative() const { return v_.size() == 0 || v_.minCoeff() >= 0.0; }

 private:
  Eigen::VectorXd v_;
};

/// Indicator function of a set of sites: 1 on A, 0 elsewhere.
inline PotentialField indicator(int n, const IndexSet& a) {
  a.validate(n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (int i : a) v[i] = 1.0;
  return PotentialField(std::move(v));
}

inline PotentialField indicator(const Space& space, const IndexSet& a) {
  return indicator(space.size(), a);
}

/// Pointwise product of f with the indicator of A: keeps f on A, zero off A.
inline PotentialField restrict_field(const PotentialField& f, const IndexSet& a) {
  a.validate(f.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(f.size());
  for (int i : a) v[i] = f[i];
  return PotentialField(std::move(v));
}

/// Pointwise minimum of two fields.
inline PotentialField min_field(const PotentialField& f, const PotentialField& g) {
  if (f.size() != g.size()) throw DimensionMismatch("fields live on different spaces");
  return PotentialField(f.values().cwiseMin(g.values()));
}

}  // namespace capsweep
