#pragma once

#include <initializer_list>

#include <Eigen/Dense>

#include "capsweep/kernel.hpp"
#include "capsweep/types.hpp"

namespace capsweep::testing {

inline Eigen::MatrixXd dense(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  const int m = n == 0 ? 0 : static_cast<int>(rows.begin()->size());
  Eigen::MatrixXd g(n, m);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) g(i, j++) = v;
    ++i;
  }
  return g;
}

inline KernelMatrix kernel(std::initializer_list<std::initializer_list<double>> rows) {
  return KernelMatrix::from_matrix(dense(rows));
}

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline Measure measure(std::initializer_list<double> weights) { return Measure(vec(weights)); }

inline PotentialField field(std::initializer_list<double> values) {
  return PotentialField(vec(values));
}

}  // namespace capsweep::testing
