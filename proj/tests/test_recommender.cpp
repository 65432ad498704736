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

#include <map>
#include <random>

#include "test_support.hpp"
#include "trustcf/recommender.hpp"

namespace trustcf {
namespace {

std::vector<UserId> ids(const NeighborList& n) {
  std::vector<UserId> out;
  for (const auto& x : n.neighbors) out.push_back(x.user);
  return out;
}

std::vector<ItemId> items(const RankedRecommendations& r) {
  std::vector<ItemId> out;
  for (const auto& x : r.items) out.push_back(x.item);
  return out;
}

SparseMatrix row_matrix(std::size_t n, UserId row, const std::map<UserId, double>& entries) {
  std::vector<SparseMatrix::Triplet> t;
  for (const auto& [c, v] : entries) t.push_back({row, c, v});
  return SparseMatrix::from_triplets(n, n, t);
}

// --- neighbor selection ----------------------------------------------------

TEST(SelectNeighbors, IdentityGivesNoNeighbors) {
  const auto i = SparseMatrix::identity(5);
  for (UserId u = 0; u < 5; ++u) EXPECT_TRUE(select_neighbors(i, u).neighbors.empty());
}

TEST(SelectNeighbors, TiesBrokenByUserId) {
  const auto m = row_matrix(10, 0, {{7, 0.9}, {3, 0.9}, {5, 0.1}, {0, 1.0}});
  const auto n = select_neighbors(m, 0, 2);
  EXPECT_EQ(ids(n), (std::vector<UserId>{3, 7}));
  EXPECT_EQ(n.neighbors[0].similarity, 0.9);
}

TEST(SelectNeighbors, CapsAtK) {
  std::map<UserId, double> row;
  for (UserId v = 1; v <= 100; ++v) row[v] = 0.01 * v;
  const auto n = select_neighbors(row_matrix(101, 0, row), 0);
  ASSERT_EQ(n.neighbors.size(), 60u);
  EXPECT_EQ(n.neighbors.front().user, 100u);
  EXPECT_EQ(n.neighbors.back().user, 41u);
}

TEST(SelectNeighbors, SkipsNonPositiveEntries) {
  const auto n = select_neighbors(row_matrix(4, 1, {{0, -0.5}, {2, 0.2}, {3, 0.4}}), 1);
  EXPECT_EQ(ids(n), (std::vector<UserId>{3, 2}));
  EXPECT_THROW(select_neighbors(SparseMatrix(2, 2), 2), std::out_of_range);
}

TEST(SelectNeighbors, InvariantUnderPositiveScaling) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> sim(0.0, 1.0);
  std::uniform_int_distribution<int> level(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<UserId, double> row;
    for (UserId v = 0; v < 120; ++v) {
      // Coarse values so ties occur.
      if (sim(rng) < 0.6) row[v] = 0.25 * level(rng);
    }
    const auto base = select_neighbors(row_matrix(120, 5, row), 5, 30);
    for (auto& [v, s] : row) s *= 3.7;
    EXPECT_EQ(ids(select_neighbors(row_matrix(120, 5, row), 5, 30)), ids(base));
  }
}

// --- scoring ---------------------------------------------------------------

RatingsTable train_table() {
  // user 1 rated {0, 1}; user 2 rated {0, 2}; user 3 rated {1}; user 0 rated {2}.
  return RatingsTable::build(4, 3, {{1, 0, 5}, {1, 1, 2}, {2, 0, 4}, {2, 2, 3}, {3, 1, 1},
                                    {0, 2, 4}});
}

TEST(ScoreItems, SingleNeighbor) {
  const NeighborList n{0, {{1, 0.5}}};
  const auto s = score_items(n, train_table());
  EXPECT_EQ(s, (std::vector<ItemScore>{{0, 0.5}, {1, 0.5}}));
}

TEST(ScoreItems, ContributionsAdd) {
  const NeighborList n{3, {{1, 0.5}, {2, 0.25}}};
  // Target 3 already rated item 1, so only items 0 and 2 remain.
  EXPECT_EQ(score_items(n, train_table()), (std::vector<ItemScore>{{0, 0.75}, {2, 0.25}}));
}

TEST(ScoreItems, NoRatedItemsGivesEmptyMap) {
  const auto empty = RatingsTable::build(4, 3, {});
  EXPECT_TRUE(score_items(NeighborList{0, {{1, 0.5}}}, empty).empty());
  EXPECT_TRUE(score_items(NeighborList{0, {}}, train_table()).empty());
}

TEST(ScoreItems, MinRatingFilter) {
  ScoreOptions options;
  options.min_rating = 3.0;
  EXPECT_EQ(score_items(NeighborList{3, {{1, 0.5}, {2, 0.25}}}, train_table(), options),
            (std::vector<ItemScore>{{0, 0.75}, {2, 0.25}}));
  EXPECT_EQ(score_items(NeighborList{0, {{1, 0.5}}}, train_table(), options),
            (std::vector<ItemScore>{{0, 0.5}}));
}

TEST(ScoreItems, AdditiveOverDisjointNeighborSets) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Rating> records;
  for (UserId v = 0; v < 30; ++v) {
    for (ItemId i = 0; i < 40; ++i) {
      if (u(rng) < 0.2) records.push_back({v, i, 3.0});
    }
  }
  const auto train = RatingsTable::build(30, 40, records);
  for (int trial = 0; trial < 20; ++trial) {
    NeighborList a{0, {}}, b{0, {}}, both{0, {}};
    for (UserId v = 1; v < 30; ++v) {
      if (u(rng) < 0.3) continue;
      const Neighbor n{v, 0.25 * (1 + static_cast<int>(u(rng) * 4))};
      (v % 2 ? a : b).neighbors.push_back(n);
      both.neighbors.push_back(n);
    }
    std::map<ItemId, double> sum;
    for (const auto& s : score_items(a, train)) sum[s.item] += s.score;
    for (const auto& s : score_items(b, train)) sum[s.item] += s.score;
    const auto joint = score_items(both, train);
    ASSERT_EQ(joint.size(), sum.size());
    for (const auto& s : joint) EXPECT_NEAR(s.score, sum[s.item], 1e-12);
  }
}

// --- top-N -----------------------------------------------------------------

TEST(RecommendTopN, Examples) {
  EXPECT_EQ(items(recommend_top_n(0, {{1, 0.3}, {0, 0.8}}, 10)), (std::vector<ItemId>{0, 1}));
  EXPECT_EQ(items(recommend_top_n(0, {{4, 0.5}, {2, 0.5}}, 1)), (std::vector<ItemId>{2}));
  EXPECT_TRUE(recommend_top_n(0, {}, 10).items.empty());
  EXPECT_THROW(recommend_top_n(0, {}, 0), std::invalid_argument);
}

// --- baselines -------------------------------------------------------------

TEST(MostPopular, RanksByCountThenId) {
  const auto t = RatingsTable::build(4, 3, {{0, 1, 4}, {1, 1, 4}, {2, 1, 4}, {3, 0, 2}});
  const auto r = baseline_most_popular(t);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].item, 1u);
  EXPECT_EQ(r[1].item, 0u);

  const auto even = RatingsTable::build(3, 3, {{0, 2, 4}, {1, 0, 4}, {2, 1, 4}});
  const auto e = baseline_most_popular(even);
  EXPECT_EQ(e[0].item, 0u);
  EXPECT_EQ(e[1].item, 1u);
  EXPECT_EQ(e[2].item, 2u);

  EXPECT_TRUE(baseline_most_popular(RatingsTable::build(2, 2, {})).empty());
}

TEST(MostPopular, SkipsTargetsOwnItems) {
  const auto t = RatingsTable::build(4, 3, {{0, 1, 4}, {1, 1, 4}, {2, 1, 4}, {3, 0, 2}});
  const auto ranking = baseline_most_popular(t);
  EXPECT_EQ(items(most_popular_for(0, ranking, t)), (std::vector<ItemId>{0}));
  EXPECT_EQ(items(most_popular_for(3, ranking, t)), (std::vector<ItemId>{1}));
}

TEST(TrustExplicit, SelectsAllTrustersUpToCapInIdOrder) {
  std::vector<Edge> edges;
  for (UserId v = 1; v <= 3; ++v) edges.push_back({v, 0});
  const auto small = baseline_trust_explicit(build_trust_graph(edges, 4));
  EXPECT_EQ(ids(select_neighbors(small.matrix, 0)), (std::vector<UserId>{1, 2, 3}));

  edges.clear();
  for (UserId v = 1; v <= 100; ++v) edges.push_back({v, 0});
  const auto big = baseline_trust_explicit(build_trust_graph(edges, 101));
  const auto n = select_neighbors(big.matrix, 0, 60);
  ASSERT_EQ(n.neighbors.size(), 60u);
  EXPECT_EQ(n.neighbors.front().user, 1u);
  EXPECT_EQ(n.neighbors.back().user, 60u);
}

TEST(TrustJaccard, Examples) {
  // T_0 = {1, 2}, T_3 = {1, 2}, T_4 = {2, 5}, T_6 = {}.
  const auto g = build_trust_graph(std::vector<Edge>{{0, 1}, {0, 2}, {3, 1}, {3, 2}, {4, 2}, {4, 5}}, 7);
  const auto j = baseline_trust_jaccard(g).matrix;
  EXPECT_EQ(j.at(0, 3), 1.0);
  EXPECT_DOUBLE_EQ(j.at(0, 4), 1.0 / 3.0);
  EXPECT_EQ(j.at(6, 1), 0.0);
  EXPECT_EQ(j.at(1, 6), 0.0);
  EXPECT_TRUE(j.row(6).empty());
  EXPECT_EQ(baseline_trust_jaccard(g).label, "Trust_jac");
}

TEST(TrustJaccard, SymmetricBoundedAndSelfSimilar) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = testing::random_graph(40, 0.08, seed);
    for (JaccardSets sets : {JaccardSets::out, JaccardSets::in}) {
      const auto j = baseline_trust_jaccard(g, sets, {2, {}}).matrix;
      const auto d = degree_vector(g, DegreeMode::combined);
      const auto in = degree_vector(g, DegreeMode::in);
      for (std::size_t a = 0; a < 40; ++a) {
        const std::size_t set_size =
            sets == JaccardSets::out ? d.values[a] - in.values[a] : in.values[a];
        EXPECT_EQ(j.at(a, a), set_size > 0 ? 1.0 : 0.0);
        for (std::size_t b = 0; b < 40; ++b) {
          EXPECT_EQ(j.at(a, b), j.at(b, a));
          EXPECT_GE(j.at(a, b), 0.0);
          EXPECT_LE(j.at(a, b), 1.0);
        }
      }
    }
  }
}

TEST(TrustJaccard, InSetsCompareTrusters) {
  // 1 and 2 are both trusted by exactly {0}.
  const auto g = build_trust_graph(std::vector<Edge>{{0, 1}, {0, 2}}, 3);
  EXPECT_EQ(baseline_trust_jaccard(g, JaccardSets::in).matrix.at(1, 2), 1.0);
  EXPECT_EQ(baseline_trust_jaccard(g, JaccardSets::out).matrix.at(1, 2), 0.0);
}

}  // namespace
}  // namespace trustcf
