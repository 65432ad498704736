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
#include <cstdint>
#include <random>
#include <vector>

#include "trustcf/errors.hpp"
#include "trustcf/sparse_matrix.hpp"

namespace trustcf {

struct SpectralOptions {
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  std::uint64_t seed = 42;
  // Iterates on A + shift * I. A positive shift makes the Perron root
  // strictly dominant for non-negative matrices whose spectrum has several
  // eigenvalues of the same modulus (cycles, permutations).
  double shift = 1.0;
};

struct SpectralEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  // False when max_iter was reached first; value is the last estimate.
  bool converged = false;
};

// Dominant eigenvalue of a non-negative square matrix by power iteration from
// a seeded positive start vector. Stops when successive Rayleigh quotients
// differ by less than tol.
inline SpectralEstimate spectral_radius(const SparseMatrix& a,
                                        const SpectralOptions& options = {}) {
  if (!a.square()) throw DimensionError("spectral_radius: matrix must be square");
  if (!(options.tol > 0.0)) throw std::invalid_argument("spectral_radius: tol must be > 0");
  const std::size_t n = a.rows();
  SpectralEstimate est;
  if (n == 0) {
    est.converged = true;
    return est;
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> start(0.5, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = start(rng);

  auto normalize = [](std::vector<double>& v) {
    double norm = 0.0;
    for (double e : v) norm += e * e;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (double& e : v) e /= norm;
    }
    return norm;
  };
  normalize(x);

  double previous = 0.0;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    std::vector<double> y = multiply(a, x);
    double quotient = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += options.shift * x[i];
      quotient += x[i] * y[i];
    }
    est.value = quotient - options.shift;
    est.iterations = it;
    if (normalize(y) == 0.0) {
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    x.swap(y);
    if (it > 1 && std::abs(est.value - previous) < options.tol) {
      est.converged = true;
      return est;
    }
    previous = est.value;
  }
  return est;
}

}  // namespace trustcf
