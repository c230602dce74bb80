#include "capsweep/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "capsweep/errors.hpp"

namespace capsweep {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::MaxIterations:
      return "max_iterations";
    case SolveStatus::Infeasible:
      return "infeasible";
  }
  return "unknown";
}

namespace {

constexpr double kPivotFloor = 1e-10;
constexpr double kBruteConeSlack = 1e-12;
constexpr double kBruteDualSlack = 1e-10;

double scaled_tol(const PotentialField& f, double tol) {
  const double fmax = f.size() > 0 ? f.values().maxCoeff() : 0.0;
  return tol * std::max(fmax, 1.0);
}

double gauss_value(const KernelMatrix& k, const PotentialField& f, const Eigen::VectorXd& nu) {
  return 2.0 * f.values().dot(nu) - nu.dot(k.entries() * nu);
}

// Working support with an incrementally maintained Cholesky factor of the
// kernel restricted to it, kept in insertion order.
class WorkingSet {
 public:
  WorkingSet(const Eigen::MatrixXd& k, int capacity) : k_(k), member_(k.rows(), false) {
    l_ = Eigen::MatrixXd::Zero(capacity, capacity);
    idx_.reserve(static_cast<std::size_t>(capacity));
  }

  int size() const { return static_cast<int>(idx_.size()); }
  const std::vector<int>& indices() const { return idx_; }
  bool contains(int j) const { return member_[static_cast<std::size_t>(j)]; }

  // Extends the factor by site j; fails when the new pivot falls below the
  // relative floor, which signals a numerically singular working system.
  bool append(int j) {
    const int s = size();
    Eigen::VectorXd b(s);
    for (int t = 0; t < s; ++t) b[t] = k_(idx_[static_cast<std::size_t>(t)], j);
    Eigen::VectorXd w =
        s > 0 ? l_.topLeftCorner(s, s).triangularView<Eigen::Lower>().solve(b) : Eigen::VectorXd();
    const double d2 = k_(j, j) - w.squaredNorm();
    if (!(d2 > kPivotFloor * k_(j, j))) return false;
    l_.row(s).head(s) = w.transpose();
    l_(s, s) = std::sqrt(d2);
    idx_.push_back(j);
    member_[static_cast<std::size_t>(j)] = true;
    return true;
  }

  bool remove_at(int pos) {
    member_[static_cast<std::size_t>(idx_[static_cast<std::size_t>(pos)])] = false;
    idx_.erase(idx_.begin() + pos);
    std::vector<int> order = std::move(idx_);
    idx_.clear();
    for (int j : order) {
      if (!append(j)) return false;
    }
    return true;
  }

  // Solves K[S,S] x = rhs through the factor.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    const int s = size();
    Eigen::VectorXd y = l_.topLeftCorner(s, s).triangularView<Eigen::Lower>().solve(rhs);
    return l_.topLeftCorner(s, s).transpose().triangularView<Eigen::Upper>().solve(y);
  }

  // Product K[S,S] x without forming the submatrix.
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const {
    const int s = size();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(s);
    for (int t = 0; t < s; ++t) {
      double acc = 0.0;
      for (int u = 0; u < s; ++u) {
        acc += k_(idx_[static_cast<std::size_t>(t)], idx_[static_cast<std::size_t>(u)]) * x[u];
      }
      out[t] = acc;
    }
    return out;
  }

  Eigen::VectorXd gather(const Eigen::VectorXd& full) const {
    const int s = size();
    Eigen::VectorXd out(s);
    for (int t = 0; t < s; ++t) out[t] = full[idx_[static_cast<std::size_t>(t)]];
    return out;
  }

 private:
  const Eigen::MatrixXd& k_;
  Eigen::MatrixXd l_;
  std::vector<int> idx_;
  std::vector<bool> member_;
};

SolveReport finish_report(const KernelMatrix& k, const PotentialField& f, const IndexSet& allowed,
                          Eigen::VectorXd nu, double tol, double tol_eff, int iterations,
                          bool met_dual) {
  SolveReport rep;
  rep.measure = Measure(nu.cwiseMax(0.0));
  rep.value = gauss_value(k, f, rep.measure.weights());
  const KKTReport kkt = verify_kkt(k, f, rep.measure, allowed, tol);
  rep.max_under_shoot = kkt.max_under_shoot;
  rep.max_support_gap = kkt.max_support_gap;
  rep.tolerance = tol_eff;
  rep.iterations = iterations;
  rep.status = (met_dual && kkt.max_under_shoot <= tol_eff && kkt.max_support_gap <= tol_eff)
                   ? SolveStatus::Converged
                   : SolveStatus::MaxIterations;
  return rep;
}

// Active-set iteration. Returns nothing when a working-set factorization
// collapses; the caller then falls back to projected gradient.
std::optional<SolveReport> run_active_set(const KernelMatrix& k, const PotentialField& f,
                                          const IndexSet& allowed, double tol, double tol_eff,
                                          const IndexSet& seed) {
  const int n = k.size();
  const Eigen::MatrixXd& km = k.entries();
  const int cap = 50 * n;

  WorkingSet ws(km, std::min(allowed.size(), n));
  Eigen::VectorXd nu = Eigen::VectorXd::Zero(n);
  for (int j : seed) {
    if (!allowed.contains(j)) {
      throw PreconditionViolated("initial support site " + std::to_string(j) +
                                 " lies outside the allowed set");
    }
    if (!ws.append(j)) return std::nullopt;
  }

  int iterations = 0;
  while (iterations < cap) {
    ++iterations;

    Eigen::VectorXd zs;
    if (ws.size() > 0) {
      const Eigen::VectorXd fs = ws.gather(f.values());
      zs = ws.solve(fs);
      zs += ws.solve(fs - ws.multiply(zs));
    }

    int drop = -1;
    double zmin = 0.0;
    for (int t = 0; t < ws.size(); ++t) {
      if (zs[t] < zmin) {
        zmin = zs[t];
        drop = t;
      }
    }

    if (drop >= 0) {
      double alpha = 1.0;
      for (int t = 0; t < ws.size(); ++t) {
        if (zs[t] < 0.0) {
          const double cur = nu[ws.indices()[static_cast<std::size_t>(t)]];
          alpha = std::min(alpha, cur / (cur - zs[t]));
        }
      }
      for (int t = 0; t < ws.size(); ++t) {
        const int j = ws.indices()[static_cast<std::size_t>(t)];
        nu[j] = std::max(0.0, nu[j] + alpha * (zs[t] - nu[j]));
      }
      nu[ws.indices()[static_cast<std::size_t>(drop)]] = 0.0;
      if (!ws.remove_at(drop)) return std::nullopt;
      continue;
    }

    nu.setZero();
    for (int t = 0; t < ws.size(); ++t) nu[ws.indices()[static_cast<std::size_t>(t)]] = zs[t];

    const Eigen::VectorXd r = f.values() - km * nu;
    int enter = -1;
    double worst = tol_eff;
    for (int j : allowed) {
      if (ws.contains(j)) continue;
      if (r[j] > worst) {
        worst = r[j];
        enter = j;
      }
    }
    if (enter < 0) {
      return finish_report(k, f, allowed, std::move(nu), tol, tol_eff, iterations, true);
    }
    if (!ws.append(enter)) return std::nullopt;
  }

  return finish_report(k, f, allowed, std::move(nu), tol, tol_eff, iterations, false);
}

SolveReport run_projected_gradient(const KernelMatrix& k, const PotentialField& f,
                                   const IndexSet& allowed, double tol, double tol_eff) {
  const int n = k.size();
  const Eigen::MatrixXd& km = k.entries();
  const int cap = 50 * n;
  const double step = 1.0 / std::max(k.spectral_norm(), std::numeric_limits<double>::min());

  std::vector<bool> ok(static_cast<std::size_t>(n), false);
  for (int j : allowed) ok[static_cast<std::size_t>(j)] = true;

  Eigen::VectorXd nu = Eigen::VectorXd::Zero(n);
  int iterations = 0;
  bool met = false;
  while (iterations < cap) {
    ++iterations;
    const Eigen::VectorXd r = f.values() - km * nu;
    for (int j = 0; j < n; ++j) {
      nu[j] = ok[static_cast<std::size_t>(j)] ? std::max(0.0, nu[j] + step * r[j]) : 0.0;
    }

    const Eigen::VectorXd post = f.values() - km * nu;
    const double support_eps = tol * (nu.size() > 0 ? nu.maxCoeff() : 0.0);
    double under = 0.0;
    double gap = 0.0;
    for (int j : allowed) under = std::max(under, post[j]);
    for (int j = 0; j < n; ++j) {
      if (nu[j] > support_eps) gap = std::max(gap, std::abs(post[j]));
    }
    if (under <= tol_eff && gap <= tol_eff) {
      met = true;
      break;
    }
  }
  return finish_report(k, f, allowed, std::move(nu), tol, tol_eff, iterations, met);
}

}  // namespace

SolveReport gauss_maximize(const KernelMatrix& k, const PotentialField& f, const IndexSet& allowed,
                           double tol, const IndexSet& initial_support) {
  const int n = k.size();
  if (f.size() != n) {
    throw DimensionMismatch("field on " + std::to_string(f.size()) + " sites against kernel on " +
                            std::to_string(n));
  }
  allowed.validate(n);
  initial_support.validate(n);
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw PreconditionViolated("solver tolerance must be positive and finite");
  }
  k.require_psd();

  const double tol_eff = scaled_tol(f, tol);

  bool has_positive = false;
  for (int j : allowed) {
    if (f[j] > 0.0) {
      has_positive = true;
      break;
    }
  }
  if (!has_positive) {
    SolveReport rep;
    rep.measure = Measure::zero(n);
    rep.value = 0.0;
    rep.tolerance = tol_eff;
    rep.iterations = 0;
    rep.status = SolveStatus::Converged;
    return rep;
  }

  auto rep = run_active_set(k, f, allowed, tol, tol_eff, initial_support);
  if (rep) return std::move(*rep);
  return run_projected_gradient(k, f, allowed, tol, tol_eff);
}

SolveReport min_norm_dual(const KernelMatrix& k, const PotentialField& f, double tol) {
  k.require_strictly_pd();
  SolveReport rep = gauss_maximize(k, f, IndexSet::all(k.size()), tol);
  rep.value = energy_norm(k, rep.measure);
  if (rep.status != SolveStatus::Converged) return rep;

  const Eigen::VectorXd slack =
      f.values() - k.entries() * rep.measure.weights();
  const double worst = slack.size() > 0 ? slack.maxCoeff() : 0.0;
  if (worst > scaled_tol(f, tol)) {
    throw InternalError("norm minimizer violates its covering constraint by " +
                        std::to_string(worst));
  }
  return rep;
}

SolveReport brute_force_capacitary(const KernelMatrix& k, const PotentialField& f,
                                   const IndexSet& allowed) {
  const int n = k.size();
  if (f.size() != n) {
    throw DimensionMismatch("field on " + std::to_string(f.size()) + " sites against kernel on " +
                            std::to_string(n));
  }
  allowed.validate(n);
  if (allowed.size() > 14) {
    throw TooLarge("support enumeration over " + std::to_string(allowed.size()) +
                   " sites exceeds the bound of 14");
  }
  k.require_psd();

  const Eigen::MatrixXd& km = k.entries();
  const std::vector<int>& cand = allowed.indices();
  const int m = static_cast<int>(cand.size());

  bool found = false;
  double best_value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best = Eigen::VectorXd::Zero(n);

  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    std::vector<int> s;
    for (int t = 0; t < m; ++t) {
      if (mask & (1UL << t)) s.push_back(cand[static_cast<std::size_t>(t)]);
    }
    const int sz = static_cast<int>(s.size());

    Eigen::VectorXd nu = Eigen::VectorXd::Zero(n);
    if (sz > 0) {
      Eigen::MatrixXd sub(sz, sz);
      Eigen::VectorXd rhs(sz);
      for (int a = 0; a < sz; ++a) {
        rhs[a] = f[s[static_cast<std::size_t>(a)]];
        for (int b = 0; b < sz; ++b) {
          sub(a, b) = km(s[static_cast<std::size_t>(a)], s[static_cast<std::size_t>(b)]);
        }
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
      if (!lu.isInvertible()) continue;
      const Eigen::VectorXd x = lu.solve(rhs);
      for (int a = 0; a < sz; ++a) nu[s[static_cast<std::size_t>(a)]] = x[a];
    }

    if (nu.minCoeff() < -kBruteConeSlack) continue;
    const Eigen::VectorXd pot = km * nu;
    bool covered = true;
    for (int j : allowed) {
      if (pot[j] < f[j] - kBruteDualSlack) {
        covered = false;
        break;
      }
    }
    if (!covered) continue;

    const double value = gauss_value(k, f, nu);
    if (!found || value > best_value) {
      found = true;
      best_value = value;
      best = nu;
    }
  }

  if (!found) {
    throw InternalError("support enumeration found no point satisfying the optimality system");
  }

  SolveReport rep;
  rep.measure = Measure(best.cwiseMax(0.0));
  rep.value = gauss_value(k, f, rep.measure.weights());
  const KKTReport kkt = verify_kkt(k, f, rep.measure, allowed);
  rep.max_under_shoot = kkt.max_under_shoot;
  rep.max_support_gap = kkt.max_support_gap;
  rep.tolerance = kBruteDualSlack;
  rep.iterations = static_cast<int>(1UL << m);
  rep.status = SolveStatus::Converged;
  return rep;
}

KKTReport verify_kkt(const KernelMatrix& k, const PotentialField& f, const Measure& mu,
                     const IndexSet& allowed, double tol) {
  const int n = k.size();
  if (f.size() != n || mu.size() != n) {
    throw DimensionMismatch("operands do not match kernel on " + std::to_string(n) + " sites");
  }
  allowed.validate(n);
  if (!(tol > 0.0)) throw PreconditionViolated("tolerance must be positive");

  KKTReport rep;
  const Eigen::VectorXd pot = k.entries() * mu.weights();
  rep.support_eps = tol * (mu.size() > 0 ? mu.weights().maxCoeff() : 0.0);
  for (int j : allowed) {
    rep.max_under_shoot = std::max(rep.max_under_shoot, f[j] - pot[j]);
  }
  rep.max_under_shoot = std::max(rep.max_under_shoot, 0.0);
  for (int j = 0; j < n; ++j) {
    if (mu[j] > rep.support_eps) {
      rep.max_support_gap = std::max(rep.max_support_gap, std::abs(pot[j] - f[j]));
    }
  }
  rep.complementarity_gap =
      std::abs(f.values().dot(mu.weights()) - mu.weights().dot(pot));
  return rep;
}

}  // namespace capsweep
