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
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trustcf/errors.hpp"
#include "trustcf/sparse_matrix.hpp"
#include "trustcf/text_format.hpp"

namespace trustcf {

using UserId = std::uint32_t;
using ItemId = std::uint32_t;
using RawId = std::uint64_t;

struct RawEdge {
  RawId truster;
  RawId trustee;

  bool operator==(const RawEdge&) const = default;
};

// Reads `truster trustee [value]` lines. A value column, when present, must
// be 1: the network is unweighted and carries no distrust.
inline std::vector<RawEdge> parse_trust_edges(std::istream& in,
                                              const LineFormat& format = {}) {
  std::vector<RawEdge> edges;
  detail::for_each_record(in, format, [&](const auto& fields, std::size_t line) {
    if (fields.size() < 2) {
      throw ParseError(line, "expected at least 2 fields, got " +
                                 std::to_string(fields.size()));
    }
    if (fields.size() > 3) {
      throw ParseError(line, "expected at most 3 fields, got " +
                                 std::to_string(fields.size()));
    }
    RawEdge e{detail::parse_id(fields[0], line, "truster id"),
              detail::parse_id(fields[1], line, "trustee id")};
    if (fields.size() == 3 &&
        detail::parse_real(fields[2], line, "trust value") != 1.0) {
      throw ParseError(line, "trust value must be 1, got '" +
                                 std::string(fields[2]) + "'");
    }
    edges.push_back(e);
  });
  return edges;
}

// Bijection between raw dataset ids and dense ids [0, size()). Dense ids
// follow ascending raw id order.
class IdMap {
 public:
  IdMap() = default;

  static IdMap from_raw_ids(std::vector<RawId> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    IdMap m;
    m.raw_ = std::move(raw);
    m.dense_.reserve(m.raw_.size());
    for (std::size_t i = 0; i < m.raw_.size(); ++i) {
      m.dense_.emplace(m.raw_[i], static_cast<std::uint32_t>(i));
    }
    return m;
  }

  std::size_t size() const noexcept { return raw_.size(); }
  bool contains(RawId raw) const { return dense_.contains(raw); }

  std::uint32_t dense(RawId raw) const {
    const auto it = dense_.find(raw);
    if (it == dense_.end()) {
      throw std::out_of_range("unknown raw id " + std::to_string(raw));
    }
    return it->second;
  }

  RawId raw(std::uint32_t dense) const { return raw_.at(dense); }

  // One `dense raw` pair per line.
  void write(std::ostream& out) const {
    for (std::size_t i = 0; i < raw_.size(); ++i) out << i << ' ' << raw_[i] << '\n';
  }

  static IdMap read(std::istream& in) {
    std::vector<RawId> raw;
    detail::for_each_record(in, LineFormat{}, [&](const auto& fields, std::size_t line) {
      if (fields.size() != 2) throw ParseError(line, "expected `dense raw`");
      const auto dense = detail::parse_id(fields[0], line, "dense id");
      if (dense != raw.size()) throw ParseError(line, "dense ids must be contiguous");
      raw.push_back(detail::parse_id(fields[1], line, "raw id"));
    });
    IdMap m = from_raw_ids(raw);
    if (m.raw_ != raw) throw ParseError(0, "id map is not in ascending raw order");
    return m;
  }

  bool operator==(const IdMap& other) const { return raw_ == other.raw_; }

 private:
  std::vector<RawId> raw_;
  std::unordered_map<RawId, std::uint32_t> dense_;
};

// Which side of the adjacency holds the truster. as_paper puts the edge
// "j trusts i" at A[i][j], so row i lists the users who trust i.
enum class Convention { as_paper, transposed };

inline std::string_view to_string(Convention c) {
  return c == Convention::as_paper ? "as-paper" : "transposed";
}

inline Convention parse_convention(std::string_view s) {
  if (s == "as-paper") return Convention::as_paper;
  if (s == "transposed") return Convention::transposed;
  throw ConfigError("unknown convention '" + std::string(s) + "'");
}

struct Edge {
  UserId truster;
  UserId trustee;

  auto operator<=>(const Edge&) const = default;
};

// Directed, unweighted trust network with its adjacency matrix.
class TrustGraph {
 public:
  TrustGraph() = default;

  std::size_t n_users() const noexcept { return n_users_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const SparseMatrix& adjacency() const noexcept { return adjacency_; }
  Convention convention() const noexcept { return convention_; }
  std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }
  std::size_t duplicate_edges() const noexcept { return duplicate_edges_; }

  double density() const noexcept {
    if (n_users_ == 0) return 0.0;
    const double n = static_cast<double>(n_users_);
    return static_cast<double>(edges_.size()) / (n * n);
  }

 private:
  friend TrustGraph build_trust_graph(std::span<const Edge>, std::size_t, Convention);

  std::size_t n_users_ = 0;
  std::vector<Edge> edges_;
  SparseMatrix adjacency_;
  Convention convention_ = Convention::as_paper;
  std::size_t dropped_self_loops_ = 0;
  std::size_t duplicate_edges_ = 0;
};

// Self-loops are dropped and duplicate edges collapse to one; both are
// counted on the returned graph.
inline TrustGraph build_trust_graph(std::span<const Edge> edges,
                                    std::size_t n_users,
                                    Convention convention = Convention::as_paper) {
  TrustGraph g;
  g.n_users_ = n_users;
  g.convention_ = convention;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.truster >= n_users || e.trustee >= n_users) {
      throw DimensionError("edge (" + std::to_string(e.truster) + ", " +
                           std::to_string(e.trustee) + ") outside " +
                           std::to_string(n_users) + " users");
    }
    if (e.truster == e.trustee) {
      ++g.dropped_self_loops_;
      continue;
    }
    g.edges_.push_back(e);
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  const auto last = std::unique(g.edges_.begin(), g.edges_.end());
  g.duplicate_edges_ = static_cast<std::size_t>(g.edges_.end() - last);
  g.edges_.erase(last, g.edges_.end());

  std::vector<SparseMatrix::Triplet> t;
  t.reserve(g.edges_.size());
  for (const Edge& e : g.edges_) {
    if (convention == Convention::as_paper) {
      t.push_back({e.trustee, e.truster, 1.0});
    } else {
      t.push_back({e.truster, e.trustee, 1.0});
    }
  }
  g.adjacency_ = SparseMatrix::from_triplets(n_users, n_users, std::move(t));
  return g;
}

enum class DegreeMode { in, combined };

// in: number of users trusting i. combined: in-degree plus out-degree.
struct DegreeVector {
  DegreeMode mode;
  std::vector<std::uint32_t> values;
};

inline DegreeVector degree_vector(const TrustGraph& graph, DegreeMode mode) {
  DegreeVector d{mode, std::vector<std::uint32_t>(graph.n_users(), 0)};
  for (const Edge& e : graph.edges()) {
    ++d.values[e.trustee];
    if (mode == DegreeMode::combined) ++d.values[e.truster];
  }
  return d;
}

}  // namespace trustcf
