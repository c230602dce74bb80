#include "capsweep/lp.hpp"

#include <cmath>
#include <vector>

#include "capsweep/errors.hpp"

namespace capsweep {
namespace {

constexpr double kReducedCostEps = 1e-9;
constexpr double kPivotEps = 1e-11;
constexpr double kRatioTieEps = 1e-12;

// Dense tableau simplex over the columns [original vars | slacks | artificials].
// Rows hold the constraint equations; `zrow` holds reduced costs for whichever
// objective is active and its last entry tracks the objective value.
class Tableau {
 public:
  Tableau(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : n_(static_cast<int>(c.size())), m_(static_cast<int>(a.rows())) {
    art_begin_ = n_ + m_;
    int n_art = 0;
    for (int i = 0; i < m_; ++i) {
      if (b[i] < 0.0) ++n_art;
    }
    cols_ = n_ + m_ + n_art;
    t_ = Eigen::MatrixXd::Zero(m_, cols_ + 1);
    basis_.resize(static_cast<std::size_t>(m_));

    int art = art_begin_;
    for (int i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign * a.row(i);
      t_(i, n_ + i) = sign;
      t_(i, cols_) = sign * b[i];
      if (b[i] < 0.0) {
        t_(i, art) = 1.0;
        basis_[static_cast<std::size_t>(i)] = art;
        ++art;
      } else {
        basis_[static_cast<std::size_t>(i)] = n_ + i;
      }
    }
    has_artificials_ = n_art > 0;
  }

  bool has_artificials() const { return has_artificials_; }

  // Sets the reduced-cost row for cost vector `cost` over all columns,
  // consistent with the current basis.
  void load_objective(const Eigen::VectorXd& cost) {
    zrow_ = Eigen::VectorXd::Zero(cols_ + 1);
    zrow_.head(cost.size()) = cost;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost.size() > basis_[static_cast<std::size_t>(i)]
                            ? cost[basis_[static_cast<std::size_t>(i)]]
                            : 0.0;
      if (cb != 0.0) zrow_ -= cb * t_.row(i).transpose();
    }
  }

  // Runs simplex iterations until optimal or unbounded. `allow_artificial`
  // permits artificial columns to enter, which only phase one wants.
  LpStatus iterate(bool allow_artificial) {
    const long max_iters = 2000 + 200L * static_cast<long>(m_ + cols_) * (m_ + cols_);
    for (long iter = 0; iter < max_iters; ++iter) {
      const int limit = allow_artificial ? cols_ : art_begin_;
      int jin = -1;
      for (int j = 0; j < limit; ++j) {
        if (zrow_[j] > kReducedCostEps) {
          jin = j;
          break;
        }
      }
      if (jin < 0) return LpStatus::Optimal;

      int row = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double pivot = t_(i, jin);
        if (pivot <= kPivotEps) continue;
        const double ratio = t_(i, cols_) / pivot;
        if (row < 0 || ratio < best - kRatioTieEps * (1.0 + std::abs(best))) {
          row = i;
          best = ratio;
        } else if (ratio <= best + kRatioTieEps * (1.0 + std::abs(best)) &&
                   basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(row)]) {
          row = i;
        }
      }
      if (row < 0) return LpStatus::Unbounded;
      pivot(row, jin);
    }
    throw LpFailure("simplex did not terminate within its iteration budget");
  }

  // The corner entry of the reduced-cost row carries the negated objective.
  double objective_value() const { return -zrow_[cols_]; }

  // Pivots basic artificials out after phase one; rows that admit no pivot
  // are redundant and get dropped.
  void eliminate_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < art_begin_) continue;
      int jin = -1;
      for (int j = 0; j < art_begin_; ++j) {
        if (std::abs(t_(i, j)) > kPivotEps) {
          jin = j;
          break;
        }
      }
      if (jin >= 0) {
        pivot(i, jin);
      } else {
        drop_row(i);
        --i;
      }
    }
  }

  Eigen::VectorXd primal() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      const int v = basis_[static_cast<std::size_t>(i)];
      if (v < n_) x[v] = std::max(0.0, t_(i, cols_));
    }
    return x;
  }

  int original_vars() const { return n_; }
  int total_cols() const { return cols_; }

 private:
  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    const double zf = zrow_[col];
    if (zf != 0.0) zrow_ -= zf * t_.row(row).transpose();
    basis_[static_cast<std::size_t>(row)] = col;
  }

  void drop_row(int row) {
    const int last = m_ - 1;
    if (row != last) {
      t_.row(row) = t_.row(last);
      basis_[static_cast<std::size_t>(row)] = basis_[static_cast<std::size_t>(last)];
    }
    t_.conservativeResize(last, Eigen::NoChange);
    basis_.resize(static_cast<std::size_t>(last));
    m_ = last;
  }

  int n_ = 0;
  int m_ = 0;
  int cols_ = 0;
  int art_begin_ = 0;
  bool has_artificials_ = false;
  Eigen::MatrixXd t_;
  Eigen::VectorXd zrow_;
  std::vector<int> basis_;
};

}  // namespace

LpSolution solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() != b.size() || (a.rows() > 0 && a.cols() != c.size())) {
    throw DimensionMismatch("constraint system shapes disagree");
  }
  if (!c.allFinite() || !a.allFinite() || !b.allFinite()) {
    throw NonfiniteEntry("linear program contains a nonfinite coefficient");
  }

  LpSolution out;
  const int n = static_cast<int>(c.size());

  if (a.rows() == 0) {
    out.x = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
      if (c[j] > kReducedCostEps) {
        out.status = LpStatus::Unbounded;
        return out;
      }
    }
    out.status = LpStatus::Optimal;
    out.value = 0.0;
    return out;
  }

  Tableau tab(c, a, b);

  if (tab.has_artificials()) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(tab.total_cols());
    phase1.tail(tab.total_cols() - (n + static_cast<int>(a.rows()))).setConstant(-1.0);
    tab.load_objective(phase1);
    const LpStatus s = tab.iterate(true);
    if (s != LpStatus::Optimal) throw LpFailure("phase one terminated without an optimum");
    if (tab.objective_value() < -1e-7) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    tab.eliminate_artificials();
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(tab.total_cols());
  phase2.head(n) = c;
  tab.load_objective(phase2);
  const LpStatus s = tab.iterate(false);
  if (s == LpStatus::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x = tab.primal();
  out.value = c.dot(out.x);
  return out;
}

}  // namespace capsweep
