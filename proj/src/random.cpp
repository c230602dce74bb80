#include "capsweep/random.hpp"

#include <algorithm>
#include <vector>

namespace capsweep {
namespace {

Eigen::MatrixXd uniform_matrix(int rows, int cols, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = unif(rng);
  }
  return m;
}

}  // namespace

KernelMatrix random_kernel(int n, Rng& rng) {
  const Eigen::MatrixXd b = uniform_matrix(n, n, rng);
  Eigen::MatrixXd g = b.transpose() * b + 0.1 * Eigen::MatrixXd::Identity(n, n);
  g = 0.5 * (g + g.transpose());
  return KernelMatrix::from_matrix(std::move(g));
}

KernelMatrix random_green_kernel(int n, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = unif(rng);
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  const double shift = 1.05 * w.rowwise().sum().maxCoeff() + 0.05;
  const Eigen::MatrixXd m = shift * Eigen::MatrixXd::Identity(n, n) - w;
  Eigen::MatrixXd g = m.inverse();
  g = 0.5 * (g + g.transpose());
  g = g.cwiseMax(0.0);
  return KernelMatrix::from_matrix(std::move(g));
}

KernelMatrix random_line_kernel(int n, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = 4.0 * unif(rng);
  std::sort(x.begin(), x.end());
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] - x[i - 1] < 1e-6) x[i] = x[i - 1] + 1e-6;
  }
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = std::exp(-std::abs(x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]));
    }
  }
  return KernelMatrix::from_matrix(std::move(g));
}

Measure random_measure(int n, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = unif(rng);
  return Measure(std::move(w));
}

PotentialField random_field(int n, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = unif(rng);
  return PotentialField(std::move(v));
}

IndexSet random_subset(int n, Rng& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> s;
  for (int i = 0; i < n; ++i) {
    if (coin(rng)) s.push_back(i);
  }
  if (s.empty()) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    s.push_back(pick(rng));
  }
  return IndexSet(std::move(s));
}

}  // namespace capsweep
