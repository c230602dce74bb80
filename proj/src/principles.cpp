#include "capsweep/principles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "capsweep/errors.hpp"
#include "capsweep/gauss.hpp"
#include "capsweep/lp.hpp"

namespace capsweep {

std::string to_string(Principle p) {
  switch (p) {
    case Principle::Energy:
      return "energy";
    case Principle::Maximum:
      return "maximum";
    case Principle::DilatedMaximum:
      return "dilated_maximum";
    case Principle::Domination:
      return "domination";
  }
  return "unknown";
}

std::string to_string(SearchMethod m) {
  return m == SearchMethod::Exhaustive ? "exhaustive" : "randomized";
}

namespace {

constexpr int kEnumerationCap = 12;
constexpr double kMaxPrincipleSlack = 1e-9;

std::vector<int> mask_to_sites(unsigned long mask, const std::vector<int>& sites) {
  std::vector<int> s;
  for (std::size_t t = 0; t < sites.size(); ++t) {
    if (mask & (1UL << t)) s.push_back(sites[t]);
  }
  return s;
}

// Worst potential value at site j over measures carried by S whose potential
// stays at most 1 on S.
double dilation_lp(const KernelMatrix& k, const std::vector<int>& s, int j,
                   Eigen::VectorXd* attaining) {
  const int m = static_cast<int>(s.size());
  const Eigen::MatrixXd& km = k.entries();
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd c(m);
  for (int row = 0; row < m; ++row) {
    for (int col = 0; col < m; ++col) {
      a(row, col) = km(s[static_cast<std::size_t>(row)], s[static_cast<std::size_t>(col)]);
    }
  }
  for (int col = 0; col < m; ++col) c[col] = km(j, s[static_cast<std::size_t>(col)]);
  const LpSolution sol = solve_lp(c, a, Eigen::VectorXd::Ones(m));
  if (sol.status != LpStatus::Optimal) {
    throw LpFailure("dilation program for support " + std::to_string(m) + " sites at target " +
                    std::to_string(j) + " returned no optimum");
  }
  if (attaining) *attaining = sol.x;
  return sol.value;
}

// Certifiable worst violation of the domination implication for measures
// carried by S, observed at site j: maximize (K mu)_j - (K omega)_j over
// mu >= 0 on S and omega >= 0 anywhere with (K mu) <= (K omega) on S and
// total mass at most 1. A positive value is a counterexample.
double domination_lp(const KernelMatrix& k, const std::vector<int>& s, int j, Eigen::VectorXd* mu,
                     Eigen::VectorXd* omega) {
  const int n = k.size();
  const int m = static_cast<int>(s.size());
  const int vars = m + n;
  const Eigen::MatrixXd& km = k.entries();

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + 1, vars);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
  for (int row = 0; row < m; ++row) {
    const int i = s[static_cast<std::size_t>(row)];
    for (int col = 0; col < m; ++col) {
      a(row, col) = km(i, s[static_cast<std::size_t>(col)]);
    }
    for (int col = 0; col < n; ++col) a(row, m + col) = -km(i, col);
  }
  a.row(m).setOnes();
  b[m] = 1.0;

  Eigen::VectorXd c(vars);
  for (int col = 0; col < m; ++col) c[col] = km(j, s[static_cast<std::size_t>(col)]);
  for (int col = 0; col < n; ++col) c[m + col] = -km(j, col);

  const LpSolution sol = solve_lp(c, a, b);
  if (sol.status != LpStatus::Optimal) {
    throw LpFailure("domination program at target " + std::to_string(j) + " returned no optimum");
  }
  if (mu) {
    *mu = Eigen::VectorXd::Zero(n);
    for (int col = 0; col < m; ++col) {
      (*mu)[s[static_cast<std::size_t>(col)]] = std::max(0.0, sol.x[col]);
    }
  }
  if (omega) *omega = sol.x.tail(n).cwiseMax(0.0);
  return sol.value;
}

std::vector<int> random_nonempty_subset(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> s;
  for (int i = 0; i < n; ++i) {
    if (coin(rng)) s.push_back(i);
  }
  if (s.empty()) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    s.push_back(pick(rng));
  }
  return s;
}

}  // namespace

PositiveDefiniteCheck check_positive_definite(const KernelMatrix& k) {
  PositiveDefiniteCheck out;
  out.psd = k.is_psd();
  out.strict = k.is_strictly_pd();
  out.min_eigenvalue = k.min_eigenvalue();
  out.witness = k.min_eigenvector();
  return out;
}

PrincipleReport dilation_constant(const KernelMatrix& k, SearchMethod method, int trials,
                                  std::uint64_t seed) {
  const int n = k.size();
  PrincipleReport rep;
  rep.principle = Principle::DilatedMaximum;
  rep.method = method;
  rep.k = 1.0;

  Eigen::VectorXd best_mu;
  int best_site = -1;

  if (method == SearchMethod::Exhaustive) {
    if (n > kEnumerationCap) {
      throw TooLarge("support enumeration over " + std::to_string(n) +
                     " sites exceeds the bound of " + std::to_string(kEnumerationCap));
    }
    const std::vector<int> sites = IndexSet::all(n).indices();
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
      const std::vector<int> s = mask_to_sites(mask, sites);
      for (int j = 0; j < n; ++j) {
        if (mask & (1UL << j)) continue;
        Eigen::VectorXd x;
        const double v = dilation_lp(k, s, j, &x);
        if (v > rep.k) {
          rep.k = v;
          best_site = j;
          best_mu = Eigen::VectorXd::Zero(n);
          for (std::size_t t = 0; t < s.size(); ++t) best_mu[s[t]] = std::max(0.0, x[t]);
        }
      }
    }
    k.note_dilation_constant(rep.k);
  } else {
    if (trials < 1) throw PreconditionViolated("randomized search needs at least one trial");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> site(0, n - 1);
    for (int t = 0; t < trials; ++t) {
      const std::vector<int> s = random_nonempty_subset(n, rng);
      if (static_cast<int>(s.size()) == n) continue;
      int j = site(rng);
      while (std::binary_search(s.begin(), s.end(), j)) j = site(rng);
      Eigen::VectorXd x;
      const double v = dilation_lp(k, s, j, &x);
      if (v > rep.k) {
        rep.k = v;
        best_site = j;
        best_mu = Eigen::VectorXd::Zero(n);
        for (std::size_t u = 0; u < s.size(); ++u) best_mu[s[u]] = std::max(0.0, x[u]);
      }
    }
  }

  rep.holds = rep.k <= 1.0 + kMaxPrincipleSlack;
  if (!rep.holds && best_site >= 0) {
    PrincipleWitness w;
    w.mu = Measure(best_mu);
    w.site = best_site;
    w.amount = rep.k;
    rep.witness = w;
  }
  return rep;
}

DominationPairCheck check_domination_pair(const KernelMatrix& k, const Measure& mu,
                                          const Measure& omega, double tol) {
  const int n = k.size();
  if (mu.size() != n || omega.size() != n) {
    throw DimensionMismatch("measures do not match kernel on " + std::to_string(n) + " sites");
  }
  if (!(tol > 0.0)) throw PreconditionViolated("tolerance must be positive");

  const Eigen::VectorXd pot_mu = k.entries() * mu.weights();
  const Eigen::VectorXd pot_omega = k.entries() * omega.weights();
  const double eff = tol * std::max(pot_omega.size() > 0 ? pot_omega.maxCoeff() : 0.0, 1.0);

  DominationPairCheck out;
  for (int i = 0; i < n; ++i) {
    if (mu[i] > 0.0 && pot_mu[i] > pot_omega[i] + eff) {
      out.vacuous = true;
      return out;
    }
  }
  for (int i = 0; i < n; ++i) {
    const double excess = pot_mu[i] - pot_omega[i];
    if (excess > eff && (out.site < 0 || excess > out.amount)) {
      out.holds = false;
      out.site = i;
      out.amount = excess;
    }
  }
  return out;
}

PrincipleReport search_domination(const KernelMatrix& k, SearchMethod method, int trials,
                                  double tol, std::uint64_t seed) {
  const int n = k.size();
  if (!(tol > 0.0)) throw PreconditionViolated("tolerance must be positive");
  PrincipleReport rep;
  rep.principle = Principle::Domination;
  rep.method = method;
  rep.holds = true;

  const double lp_slack = 1e-9 * std::max(k.max_entry(), 1.0);

  auto lp_probe = [&](const std::vector<int>& s, int j) -> bool {
    Eigen::VectorXd mu;
    Eigen::VectorXd omega;
    const double v = domination_lp(k, s, j, &mu, &omega);
    if (v <= lp_slack) return false;
    PrincipleWitness w;
    w.mu = Measure(mu);
    w.omega = Measure(omega);
    w.site = j;
    w.amount = v;
    rep.witness = w;
    rep.holds = false;
    return true;
  };

  if (method == SearchMethod::Exhaustive) {
    if (n > kEnumerationCap) {
      throw TooLarge("support enumeration over " + std::to_string(n) +
                     " sites exceeds the bound of " + std::to_string(kEnumerationCap));
    }
    const std::vector<int> sites = IndexSet::all(n).indices();
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
      const std::vector<int> s = mask_to_sites(mask, sites);
      for (int j = 0; j < n; ++j) {
        if (mask & (1UL << j)) continue;
        if (lp_probe(s, j)) {
          k.note_domination(false);
          return rep;
        }
      }
    }
    k.note_domination(true);
    return rep;
  }

  if (trials < 1) throw PreconditionViolated("randomized search needs at least one trial");

  // Exact programs for the smallest supports stay affordable well past the
  // full enumeration cap.
  if (n <= 20) {
    for (int i = 0; i < n; ++i) {
      for (int i2 = i; i2 < n; ++i2) {
        std::vector<int> s;
        s.push_back(i);
        if (i2 != i) s.push_back(i2);
        for (int j = 0; j < n; ++j) {
          if (j == i || j == i2) continue;
          if (lp_probe(s, j)) return rep;
        }
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = unif(rng);
    const Measure omega{Eigen::VectorXd(w)};
    const IndexSet a{random_nonempty_subset(n, rng)};

    const PotentialField pot_omega = potential(k, omega);
    const PotentialField target = restrict_field(pot_omega, a);
    const SolveReport swept = gauss_maximize(k, target, a);
    if (swept.status != SolveStatus::Converged) continue;

    const double eff = tol * std::max(pot_omega.max_value(), 1.0);
    const Eigen::VectorXd pot_mu = k.entries() * swept.measure.weights();
    for (int i = 0; i < n; ++i) {
      const double excess = pot_mu[i] - pot_omega[i];
      if (excess > eff) {
        PrincipleWitness wit;
        wit.mu = swept.measure;
        wit.omega = omega;
        wit.site = i;
        wit.amount = excess;
        rep.witness = wit;
        rep.holds = false;
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace capsweep
