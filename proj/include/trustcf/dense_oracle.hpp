// Copyright 2026 The trustcf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trustcf/errors.hpp"
#include "trustcf/sparse_matrix.hpp"

namespace trustcf {

// Small row-major dense matrix for reference computations.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static DenseMatrix from_sparse(const SparseMatrix& s) {
    DenseMatrix m(s.rows(), s.cols());
    m.data = s.to_dense();
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline constexpr std::size_t kDenseOracleLimit = 200;

// (I - alpha A)^{-1} by LU factorization with partial pivoting. Only meant
// for validating the truncated sum on small graphs.
inline DenseMatrix katz_closed_form_oracle(const DenseMatrix& a, double alpha) {
  if (a.rows != a.cols) throw DimensionError("katz_closed_form_oracle: matrix must be square");
  const std::size_t n = a.rows;
  if (n > kDenseOracleLimit) {
    throw std::invalid_argument("katz_closed_form_oracle: limited to n <= 200");
  }

  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - alpha * a(i, j);
  }

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > std::abs(m(pivot, k))) pivot = i;
    }
    if (std::abs(m(pivot, k)) < 1e-14) {
      throw std::domain_error(
          "katz_closed_form_oracle: I - alpha A is singular (alpha too large for this graph)");
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      std::swap(perm[k], perm[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      m(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }

  // Solve L U x = P e_c for every column c.
  DenseMatrix inv(n, n);
  std::vector<double> x(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = perm[i] == c ? 1.0 : 0.0;
      for (std::size_t j = 0; j < i; ++j) v -= m(i, j) * x[j];
      x[i] = v;
    }
    for (std::size_t i = n; i-- > 0;) {
      double v = x[i];
      for (std::size_t j = i + 1; j < n; ++j) v -= m(i, j) * x[j];
      x[i] = v / m(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = x[i];
  }
  return inv;
}

}  // namespace trustcf
