#include <doctest.h>

#include <random>
#include <vector>

#include "capsweep/lp.hpp"
#include "support.hpp"

using namespace capsweep;
using namespace capsweep::testing;

namespace {

/// Reference optimum by enumerating candidate vertices: every choice of n
/// active rows among the inequality rows and the sign bounds.
double best_vertex_value(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                         const Eigen::VectorXd& b) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(b.size());
  Eigen::MatrixXd rows(m + n, n);
  Eigen::VectorXd rhs(m + n);
  rows.topRows(m) = a;
  rhs.head(m) = b;
  rows.bottomRows(n) = -Eigen::MatrixXd::Identity(n, n);
  rhs.tail(n).setZero();

  double best = -1e300;
  std::vector<int> pick(n);
  const int total = m + n;
  std::vector<int> stack;
  stack.push_back(0);
  // Depth-first enumeration of all n-element row subsets.
  while (!stack.empty()) {
    if (static_cast<int>(stack.size()) == n + 1) {
      stack.pop_back();
      if (stack.empty()) break;
      ++stack.back();
      continue;
    }
    if (stack.back() >= total) {
      stack.pop_back();
      if (stack.empty()) break;
      ++stack.back();
      continue;
    }
    if (static_cast<int>(stack.size()) == n) {
      Eigen::MatrixXd sys(n, n);
      Eigen::VectorXd sys_rhs(n);
      for (int i = 0; i < n; ++i) {
        sys.row(i) = rows.row(stack[static_cast<std::size_t>(i)]);
        sys_rhs[i] = rhs[stack[static_cast<std::size_t>(i)]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
      if (lu.isInvertible()) {
        Eigen::VectorXd x = lu.solve(sys_rhs);
        const bool feasible = (a * x - b).maxCoeff() <= 1e-9 && x.minCoeff() >= -1e-9;
        if (feasible) best = std::max(best, c.dot(x));
      }
      ++stack.back();
      continue;
    }
    stack.push_back(stack.back() + 1);
  }
  return best;
}

}  // namespace

TEST_CASE("simplex solves the symmetric two-constraint program") {
  Eigen::VectorXd c = vec({1, 1});
  Eigen::MatrixXd a = dense({{2, 1}, {1, 2}});
  Eigen::VectorXd b = vec({1, 1});
  LpSolution sol = solve_lp(c, a, b);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(2.0 / 3.0));
  CHECK(sol.x[0] == doctest::Approx(1.0 / 3.0));
  CHECK(sol.x[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("unbounded ray is reported") {
  LpSolution sol = solve_lp(vec({1}), Eigen::MatrixXd(0, 1), Eigen::VectorXd(0));
  CHECK(sol.status == LpStatus::Unbounded);

  LpSolution down = solve_lp(vec({-1}), Eigen::MatrixXd(0, 1), Eigen::VectorXd(0));
  REQUIRE(down.status == LpStatus::Optimal);
  CHECK(down.value == 0.0);
  CHECK(down.x[0] == 0.0);
}

TEST_CASE("unbounded direction inside a constrained program") {
  // x1 is capped but x2 never appears in a constraint.
  Eigen::VectorXd c = vec({0, 1});
  Eigen::MatrixXd a = dense({{1, 0}});
  LpSolution sol = solve_lp(c, a, vec({1}));
  CHECK(sol.status == LpStatus::Unbounded);
}

TEST_CASE("conflicting sign and bound constraints are infeasible") {
  LpSolution sol = solve_lp(vec({1}), dense({{1}}), vec({-1}));
  CHECK(sol.status == LpStatus::Infeasible);
}

TEST_CASE("negative right-hand sides route through phase one") {
  // Minimize x subject to x >= 1, written as max -x with -x <= -1.
  LpSolution sol = solve_lp(vec({-1}), dense({{-1}}), vec({-1}));
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(-1.0));
  CHECK(sol.x[0] == doctest::Approx(1.0));
}

TEST_CASE("equality encoded as two opposite inequalities") {
  // x1 + x2 = 1 and maximize x1 + 2 x2.
  Eigen::MatrixXd a = dense({{1, 1}, {-1, -1}});
  Eigen::VectorXd b = vec({1, -1});
  LpSolution sol = solve_lp(vec({1, 2}), a, b);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(2.0));
  CHECK(sol.x[0] == doctest::Approx(0.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
}

TEST_CASE("zero right-hand side pins the origin when profitable rays are blocked") {
  LpSolution sol = solve_lp(vec({1, 1}), dense({{1, 1}}), vec({0}));
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(0.0));
}

TEST_CASE("simplex agrees with vertex enumeration on random boxed programs") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> nd(1, 3);
  std::uniform_int_distribution<int> md(1, 4);

  for (int trial = 0; trial < 120; ++trial) {
    const int n = nd(rng);
    const int m = md(rng);
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = coef(rng);
    Eigen::MatrixXd a(m + n, n);
    Eigen::VectorXd b(m + n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = coef(rng);
      b[i] = coef(rng) + 1.5;
    }
    // Box rows keep the program bounded so the oracle always applies.
    a.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
    b.tail(n).setConstant(10.0);

    LpSolution sol = solve_lp(c, a, b);
    REQUIRE(sol.status == LpStatus::Optimal);
    const double oracle = best_vertex_value(c, a, b);
    CHECK(sol.value == doctest::Approx(oracle).epsilon(1e-9));
    CHECK((a * sol.x - b).maxCoeff() <= 1e-9);
    CHECK(sol.x.minCoeff() >= -1e-12);
    CHECK(sol.value == doctest::Approx(c.dot(sol.x)));
  }
}
