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

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trustcf/katz.hpp"
#include "trustcf/ratings.hpp"
#include "trustcf/sparse_matrix.hpp"
#include "trustcf/trust_graph.hpp"

namespace trustcf {

inline constexpr std::size_t kDefaultNeighbors = 60;
inline constexpr std::size_t kDefaultTopN = 10;

struct Neighbor {
  UserId user;
  double similarity;

  bool operator==(const Neighbor&) const = default;
};

// Sorted by similarity descending, then by ascending user id.
struct NeighborList {
  UserId target = 0;
  std::vector<Neighbor> neighbors;
};

struct ItemScore {
  ItemId item;
  double score;

  bool operator==(const ItemScore&) const = default;
};

// Sorted by score descending, then by ascending item id.
struct RankedRecommendations {
  UserId target = 0;
  std::vector<ItemScore> items;
};

// The k most similar users in row `target`, skipping the target itself and
// non-positive entries.
inline NeighborList select_neighbors(const SparseMatrix& sigma, UserId target,
                                     std::size_t k_neighbors = kDefaultNeighbors) {
  if (target >= sigma.rows()) throw std::out_of_range("select_neighbors: target out of range");
  NeighborList out{target, {}};
  const auto row = sigma.row(target);
  out.neighbors.reserve(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row.cols[k] == target || !(row.values[k] > 0.0)) continue;
    out.neighbors.push_back({row.cols[k], row.values[k]});
  }
  const auto before = [](const Neighbor& a, const Neighbor& b) {
    return a.similarity != b.similarity ? a.similarity > b.similarity : a.user < b.user;
  };
  const std::size_t keep = std::min(k_neighbors, out.neighbors.size());
  std::partial_sort(out.neighbors.begin(), out.neighbors.begin() + static_cast<std::ptrdiff_t>(keep),
                    out.neighbors.end(), before);
  out.neighbors.resize(keep);
  return out;
}

struct ScoreOptions {
  // Ignore neighbor ratings below this value. Off by default: every item a
  // neighbor rated counts.
  std::optional<double> min_rating;
};

// score(i) = sum of sim(target, v) over the neighbors v who rated i, for
// items the target has not rated in train. Returned in item order.
inline std::vector<ItemScore> score_items(const NeighborList& neighbors,
                                          const RatingsTable& train,
                                          const ScoreOptions& options = {}) {
  struct Contribution {
    ItemId item;
    std::size_t rank;
    double similarity;
  };
  std::vector<Contribution> contributions;
  for (std::size_t rank = 0; rank < neighbors.neighbors.size(); ++rank) {
    const Neighbor& n = neighbors.neighbors[rank];
    if (n.user >= train.n_users()) continue;
    for (const Rating& r : train.of_user(n.user)) {
      if (options.min_rating && r.rating < *options.min_rating) continue;
      contributions.push_back({r.item, rank, n.similarity});
    }
  }
  // Summation runs in neighbor order for every item.
  std::sort(contributions.begin(), contributions.end(),
            [](const Contribution& a, const Contribution& b) {
              return a.item != b.item ? a.item < b.item : a.rank < b.rank;
            });

  const bool target_known = neighbors.target < train.n_users();
  std::vector<ItemScore> scores;
  for (std::size_t k = 0; k < contributions.size();) {
    const ItemId item = contributions[k].item;
    double sum = 0.0;
    for (; k < contributions.size() && contributions[k].item == item; ++k) {
      sum += contributions[k].similarity;
    }
    if (target_known && train.has(neighbors.target, item)) continue;
    if (sum > 0.0) scores.push_back({item, sum});
  }
  return scores;
}

inline RankedRecommendations recommend_top_n(UserId target, std::vector<ItemScore> scores,
                                             std::size_t n = kDefaultTopN) {
  if (n == 0) throw std::invalid_argument("recommend_top_n: N must be >= 1");
  const auto before = [](const ItemScore& a, const ItemScore& b) {
    return a.score != b.score ? a.score > b.score : a.item < b.item;
  };
  const std::size_t keep = std::min(n, scores.size());
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(keep),
                    scores.end(), before);
  scores.resize(keep);
  return {target, std::move(scores)};
}

// Every item with at least one training rating, by rating count descending
// then item id; the score is the count.
inline std::vector<ItemScore> baseline_most_popular(const RatingsTable& train) {
  std::vector<std::size_t> counts(train.n_items(), 0);
  for (const Rating& r : train.records()) ++counts[r.item];
  std::vector<ItemScore> ranking;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) ranking.push_back({static_cast<ItemId>(i), static_cast<double>(counts[i])});
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const ItemScore& a, const ItemScore& b) { return a.score > b.score; });
  return ranking;
}

// Top-n of the global popularity ranking minus the target's own train items.
inline RankedRecommendations most_popular_for(UserId target, std::span<const ItemScore> ranking,
                                              const RatingsTable& train,
                                              std::size_t n = kDefaultTopN) {
  RankedRecommendations out{target, {}};
  const bool known = target < train.n_users();
  for (const ItemScore& s : ranking) {
    if (out.items.size() == n) break;
    if (known && train.has(target, s.item)) continue;
    out.items.push_back(s);
  }
  return out;
}

inline constexpr std::string_view kTrustExplicitLabel = "Trust_exp";
inline constexpr std::string_view kTrustJaccardLabel = "Trust_jac";
inline constexpr std::string_view kMostPopularLabel = "MP";

// The adjacency matrix itself, binary similarities.
inline SimilarityMatrix baseline_trust_explicit(const TrustGraph& graph) {
  return {graph.adjacency(), std::string(kTrustExplicitLabel), std::nullopt};
}

// out: compare the sets of users each user trusts. in: compare the sets of
// users who trust each user.
enum class JaccardSets { out, in };

inline std::string_view to_string(JaccardSets s) { return s == JaccardSets::out ? "out" : "in"; }

inline JaccardSets parse_jaccard_sets(std::string_view s) {
  if (s == "out") return JaccardSets::out;
  if (s == "in") return JaccardSets::in;
  throw ConfigError("unknown jaccard set mode '" + std::string(s) + "'");
}

// |T_a & T_b| / |T_a | T_b|. Pairs with no common member are not stored,
// which also covers the both-empty case (similarity 0).
inline SimilarityMatrix baseline_trust_jaccard(const TrustGraph& graph,
                                               JaccardSets sets = JaccardSets::out,
                                               const BuildOptions& options = {}) {
  const std::size_t n = graph.n_users();
  if (!options.active_rows.empty() && options.active_rows.size() != n) {
    throw DimensionError("baseline_trust_jaccard: row mask length mismatch");
  }
  // members[u] = T_u; holders[m] = users whose set contains m.
  std::vector<std::vector<UserId>> members(n), holders(n);
  for (const Edge& e : graph.edges()) {
    const UserId owner = sets == JaccardSets::out ? e.truster : e.trustee;
    const UserId member = sets == JaccardSets::out ? e.trustee : e.truster;
    members[owner].push_back(member);
    holders[member].push_back(owner);
  }

  struct Scratch {
    std::vector<std::uint32_t> overlap;
    std::vector<UserId> touched;
  };
  const detail::BlockLayout layout(n, options.threads);
  std::vector<Scratch> scratch(layout.blocks);

  SparseMatrix m = SparseMatrix::build_rows(
      n, n, options.threads, [&](std::size_t a, auto& cols, auto& values) {
        if (!detail::row_active(options.active_rows, a) || members[a].empty()) return;
        Scratch& s = scratch[layout.block_of(a)];
        if (s.overlap.size() != n) s.overlap.assign(n, 0);
        for (UserId member : members[a]) {
          for (UserId b : holders[member]) {
            if (s.overlap[b]++ == 0) s.touched.push_back(b);
          }
        }
        std::sort(s.touched.begin(), s.touched.end());
        const double size_a = static_cast<double>(members[a].size());
        for (UserId b : s.touched) {
          const double common = s.overlap[b];
          cols.push_back(b);
          values.push_back(common / (size_a + static_cast<double>(members[b].size()) - common));
          s.overlap[b] = 0;
        }
        s.touched.clear();
      });
  std::string label(kTrustJaccardLabel);
  if (sets == JaccardSets::in) label += "+in";
  return {std::move(m), std::move(label), std::nullopt};
}

}  // namespace trustcf
