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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trustcf/ratings.hpp"
#include "trustcf/trust_graph.hpp"

namespace trustcf {

struct IngestionStats {
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t ratings = 0;
  std::size_t edges = 0;
  double density = 0.0;
  std::size_t dropped_self_loops = 0;
  std::size_t duplicate_edges = 0;
  std::size_t duplicate_ratings = 0;

  std::string summary_line() const {
    char density_buf[32];
    std::snprintf(density_buf, sizeof density_buf, "%.6g", density);
    return "users=" + std::to_string(users) + " items=" + std::to_string(items) +
           " ratings=" + std::to_string(ratings) + " edges=" + std::to_string(edges) +
           " density=" + density_buf +
           " dropped_self_loops=" + std::to_string(dropped_self_loops) +
           " duplicates=" + std::to_string(duplicate_edges + duplicate_ratings) +
           " duplicate_edges=" + std::to_string(duplicate_edges) +
           " duplicate_ratings=" + std::to_string(duplicate_ratings);
  }
};

// Trust network and ratings over a shared dense user id space.
struct Dataset {
  IdMap users;
  IdMap items;
  TrustGraph graph;
  RatingsTable ratings;
  IngestionStats stats;
};

// Users are the union of ids seen in either input.
inline Dataset assemble_dataset(std::span<const RawEdge> raw_edges,
                                const ParsedRatings& parsed,
                                Convention convention = Convention::as_paper) {
  std::vector<RawId> user_ids;
  std::vector<RawId> item_ids;
  user_ids.reserve(2 * raw_edges.size() + parsed.records.size());
  item_ids.reserve(parsed.records.size());
  for (const RawEdge& e : raw_edges) {
    user_ids.push_back(e.truster);
    user_ids.push_back(e.trustee);
  }
  for (const RawRating& r : parsed.records) {
    user_ids.push_back(r.user);
    item_ids.push_back(r.item);
  }

  Dataset d;
  d.users = IdMap::from_raw_ids(std::move(user_ids));
  d.items = IdMap::from_raw_ids(std::move(item_ids));

  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (const RawEdge& e : raw_edges) {
    edges.push_back({d.users.dense(e.truster), d.users.dense(e.trustee)});
  }
  d.graph = build_trust_graph(edges, d.users.size(), convention);

  std::vector<Rating> records;
  records.reserve(parsed.records.size());
  for (const RawRating& r : parsed.records) {
    records.push_back({d.users.dense(r.user), d.items.dense(r.item), r.rating});
  }
  d.ratings = RatingsTable::build(d.users.size(), d.items.size(), std::move(records));

  d.stats.users = d.users.size();
  d.stats.items = d.items.size();
  d.stats.ratings = d.ratings.size();
  d.stats.edges = d.graph.edges().size();
  d.stats.density = d.graph.density();
  d.stats.dropped_self_loops = d.graph.dropped_self_loops();
  d.stats.duplicate_edges = d.graph.duplicate_edges();
  d.stats.duplicate_ratings = parsed.duplicates + d.ratings.duplicates();
  return d;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

// Loads the trust file and, optionally, the ratings file. Parse errors are
// rethrown as "path:line: reason".
inline Dataset load_dataset(const std::filesystem::path& trust_path,
                            const std::optional<std::filesystem::path>& ratings_path,
                            const LineFormat& format = {},
                            Convention convention = Convention::as_paper) {
  std::vector<RawEdge> edges;
  {
    auto in = open_input(trust_path);
    try {
      edges = parse_trust_edges(in, format);
    } catch (const ParseError& e) {
      throw ParseError(trust_path.string(), e);
    }
  }
  ParsedRatings ratings;
  if (ratings_path) {
    auto in = open_input(*ratings_path);
    try {
      ratings = parse_ratings(in, format);
    } catch (const ParseError& e) {
      throw ParseError(ratings_path->string(), e);
    }
  }
  return assemble_dataset(edges, ratings, convention);
}

}  // namespace trustcf
