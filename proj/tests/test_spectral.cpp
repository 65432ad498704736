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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "trustcf/spectral.hpp"
#include "trustcf/trust_graph.hpp"

namespace trustcf {
namespace {

TEST(SpectralRadius, MutualTrustPair) {
  const auto g = build_trust_graph(std::vector<Edge>{{0, 1}, {1, 0}}, 2);
  const auto est = spectral_radius(g.adjacency());
  EXPECT_TRUE(est.converged);
  EXPECT_NEAR(est.value, 1.0, 1e-6);
}

TEST(SpectralRadius, AllOnesFourByFourAgainstDenseEigensolver) {
  std::vector<double> ones(16, 1.0);
  const auto j4 = SparseMatrix::from_dense(4, 4, ones);
  const double oracle = testing::dense_spectral_radius(j4);
  EXPECT_NEAR(oracle, 4.0, 1e-12);
  const auto est = spectral_radius(j4);
  EXPECT_TRUE(est.converged);
  EXPECT_NEAR(est.value, oracle, 1e-6);
}

TEST(SpectralRadius, PermutationAdjacencyHasUnitRadius) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {2u, 3u, 5u, 8u, 13u, 40u}) {
    std::vector<UserId> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    // Derangement made of a single cycle, so no self-loop is dropped.
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < n; ++k) edges.push_back({perm[k], perm[(k + 1) % n]});
    const auto g = build_trust_graph(edges, n);
    ASSERT_EQ(g.edges().size(), n);
    SpectralOptions options;
    options.max_iter = 20000;
    const auto est = spectral_radius(g.adjacency(), options);
    EXPECT_TRUE(est.converged) << n;
    EXPECT_NEAR(est.value, 1.0, 1e-4) << n;
  }
}

TEST(SpectralRadius, RandomGraphsAgainstDenseEigensolver) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = testing::random_graph(30, 0.2, seed);
    SpectralOptions options;
    options.tol = 1e-10;
    options.max_iter = 5000;
    const auto est = spectral_radius(g.adjacency(), options);
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.value, testing::dense_spectral_radius(g.adjacency()), 1e-6);
  }
}

TEST(SpectralRadius, DeterministicGivenSeedAndFlagsNonConvergence) {
  const auto g = testing::random_graph(50, 0.1, 11);
  SpectralOptions options;
  options.seed = 3;
  EXPECT_EQ(spectral_radius(g.adjacency(), options).value,
            spectral_radius(g.adjacency(), options).value);

  options.max_iter = 2;
  options.tol = 1e-15;
  const auto est = spectral_radius(g.adjacency(), options);
  EXPECT_FALSE(est.converged);
  EXPECT_EQ(est.iterations, 2u);
  EXPECT_GT(est.value, 0.0);
}

TEST(SpectralRadius, DegenerateInputs) {
  EXPECT_EQ(spectral_radius(SparseMatrix(0, 0)).value, 0.0);
  const auto zero = spectral_radius(SparseMatrix(5, 5));
  EXPECT_TRUE(zero.converged);
  EXPECT_NEAR(zero.value, 0.0, 1e-12);
  EXPECT_THROW(spectral_radius(SparseMatrix(2, 3)), DimensionError);
  SpectralOptions bad;
  bad.tol = 0.0;
  EXPECT_THROW(spectral_radius(SparseMatrix(2, 2), bad), std::invalid_argument);
}

}  // namespace
}  // namespace trustcf
