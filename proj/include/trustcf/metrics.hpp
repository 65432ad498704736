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
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

#include "trustcf/trust_graph.hpp"

// Binary-relevance top-k accuracy metrics.
namespace trustcf {

namespace detail {

inline bool contains(std::span<const ItemId> set, ItemId item) {
  return std::find(set.begin(), set.end(), item) != set.end();
}

}  // namespace detail

inline std::size_t hits_at_k(std::span<const ItemId> recommended,
                             std::span<const ItemId> relevant, std::size_t k) {
  const std::size_t depth = std::min(k, recommended.size());
  std::size_t hits = 0;
  for (std::size_t p = 0; p < depth; ++p) hits += detail::contains(relevant, recommended[p]);
  return hits;
}

// DCG@k / IDCG@k with gain 1 for relevant items and discount log2(p + 1)
// for 1-based position p. Zero when nothing is relevant.
inline double ndcg_at_k(std::span<const ItemId> recommended,
                        std::span<const ItemId> relevant, std::size_t k) {
  if (k == 0) throw std::invalid_argument("ndcg_at_k: k must be >= 1");
  if (relevant.empty()) return 0.0;
  double dcg = 0.0;
  const std::size_t depth = std::min(k, recommended.size());
  for (std::size_t p = 0; p < depth; ++p) {
    if (detail::contains(relevant, recommended[p])) dcg += 1.0 / std::log2(static_cast<double>(p) + 2.0);
  }
  double idcg = 0.0;
  const std::size_t ideal = std::min(k, relevant.size());
  for (std::size_t p = 0; p < ideal; ++p) idcg += 1.0 / std::log2(static_cast<double>(p) + 2.0);
  return dcg / idcg;
}

// hits@k / k; the denominator stays k when fewer items were recommended.
inline double precision_at_k(std::span<const ItemId> recommended,
                             std::span<const ItemId> relevant, std::size_t k) {
  if (k == 0) throw std::invalid_argument("precision_at_k: k must be >= 1");
  return static_cast<double>(hits_at_k(recommended, relevant, k)) / static_cast<double>(k);
}

inline double recall_at_k(std::span<const ItemId> recommended,
                          std::span<const ItemId> relevant, std::size_t k) {
  if (k == 0) throw std::invalid_argument("recall_at_k: k must be >= 1");
  if (relevant.empty()) return 0.0;
  return static_cast<double>(hits_at_k(recommended, relevant, k)) /
         static_cast<double>(relevant.size());
}

}  // namespace trustcf
