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
#include <istream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "trustcf/errors.hpp"
#include "trustcf/text_format.hpp"
#include "trustcf/trust_graph.hpp"

namespace trustcf {

inline constexpr double kMinRating = 1.0;
inline constexpr double kMaxRating = 5.0;

struct RawRating {
  RawId user;
  RawId item;
  double rating;
};

struct ParsedRatings {
  std::vector<RawRating> records;
  // Lines that repeated an earlier (user, item) pair.
  std::size_t duplicates = 0;
};

// Reads `user item rating` lines. A repeated (user, item) pair overwrites the
// earlier rating in place.
inline ParsedRatings parse_ratings(std::istream& in, const LineFormat& format = {}) {
  ParsedRatings out;
  struct PairHash {
    std::size_t operator()(const std::pair<RawId, RawId>& p) const noexcept {
      return std::hash<RawId>{}(p.first * 0x9E3779B97F4A7C15ULL ^ p.second);
    }
  };
  std::unordered_map<std::pair<RawId, RawId>, std::size_t, PairHash> seen;

  detail::for_each_record(in, format, [&](const auto& fields, std::size_t line) {
    if (fields.size() < 3) {
      throw ParseError(line, "expected `user item rating`, got " +
                                 std::to_string(fields.size()) + " fields");
    }
    RawRating r{detail::parse_id(fields[0], line, "user id"),
                detail::parse_id(fields[1], line, "item id"),
                detail::parse_real(fields[2], line, "rating")};
    if (!(r.rating >= kMinRating && r.rating <= kMaxRating)) {
      throw ParseError(line, "rating " + std::string(fields[2]) +
                                 " outside [1, 5]");
    }
    const auto [it, inserted] = seen.try_emplace({r.user, r.item}, out.records.size());
    if (inserted) {
      out.records.push_back(r);
    } else {
      out.records[it->second].rating = r.rating;
      ++out.duplicates;
    }
  });
  return out;
}

struct Rating {
  UserId user;
  ItemId item;
  double rating;

  bool operator==(const Rating&) const = default;
};

// Ratings indexed by dense user id, each user's records sorted by item.
class RatingsTable {
 public:
  RatingsTable() = default;

  // Duplicate (user, item) records resolve to the last one in input order.
  static RatingsTable build(std::size_t n_users, std::size_t n_items,
                            std::vector<Rating> records) {
    for (const Rating& r : records) {
      if (r.user >= n_users || r.item >= n_items) {
        throw DimensionError("rating (" + std::to_string(r.user) + ", " +
                             std::to_string(r.item) + ") outside table shape");
      }
      if (!(r.rating >= kMinRating && r.rating <= kMaxRating)) {
        throw std::invalid_argument("rating outside [1, 5]");
      }
    }
    std::stable_sort(records.begin(), records.end(), [](const Rating& a, const Rating& b) {
      return a.user != b.user ? a.user < b.user : a.item < b.item;
    });
    RatingsTable t;
    t.n_users_ = n_users;
    t.n_items_ = n_items;
    t.offsets_.assign(n_users + 1, 0);
    t.records_.reserve(records.size());
    for (std::size_t k = 0; k < records.size(); ++k) {
      if (k + 1 < records.size() && records[k + 1].user == records[k].user &&
          records[k + 1].item == records[k].item) {
        ++t.duplicates_;
        continue;
      }
      t.records_.push_back(records[k]);
      ++t.offsets_[records[k].user + 1];
    }
    for (std::size_t u = 0; u < n_users; ++u) t.offsets_[u + 1] += t.offsets_[u];
    return t;
  }

  std::size_t n_users() const noexcept { return n_users_; }
  std::size_t n_items() const noexcept { return n_items_; }
  std::size_t size() const noexcept { return records_.size(); }
  std::size_t duplicates() const noexcept { return duplicates_; }
  std::span<const Rating> records() const noexcept { return records_; }

  std::span<const Rating> of_user(UserId u) const {
    return std::span<const Rating>(records_).subspan(offsets_[u], offsets_[u + 1] - offsets_[u]);
  }

  std::size_t count(UserId u) const { return offsets_[u + 1] - offsets_[u]; }

  bool has(UserId u, ItemId item) const {
    const auto r = of_user(u);
    return std::binary_search(r.begin(), r.end(), Rating{u, item, 0.0},
                              [](const Rating& a, const Rating& b) { return a.item < b.item; });
  }

  // Number of distinct users with at least one rating.
  std::size_t active_users() const {
    std::size_t n = 0;
    for (std::size_t u = 0; u < n_users_; ++u) n += count(static_cast<UserId>(u)) > 0;
    return n;
  }

  // Number of distinct items with at least one rating.
  std::size_t active_items() const {
    std::vector<char> seen(n_items_, 0);
    std::size_t n = 0;
    for (const Rating& r : records_) {
      if (!seen[r.item]) {
        seen[r.item] = 1;
        ++n;
      }
    }
    return n;
  }

 private:
  std::size_t n_users_ = 0;
  std::size_t n_items_ = 0;
  std::size_t duplicates_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Rating> records_;
};

}  // namespace trustcf
