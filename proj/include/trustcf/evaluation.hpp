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
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trustcf/katz.hpp"
#include "trustcf/metrics.hpp"
#include "trustcf/parallel.hpp"
#include "trustcf/ratings.hpp"
#include "trustcf/recommender.hpp"
#include "trustcf/trust_graph.hpp"

namespace trustcf {

inline constexpr std::size_t kDefaultColdThreshold = 10;

struct TestUser {
  UserId user;
  std::vector<ItemId> items;
};

// Users with 1..threshold ratings are held out entirely; everyone else's
// ratings form the training table.
struct ColdStartSplit {
  std::size_t threshold = kDefaultColdThreshold;
  RatingsTable train;
  // Sorted by user id.
  std::vector<TestUser> test;

  std::vector<UserId> cold_users() const {
    std::vector<UserId> users;
    users.reserve(test.size());
    for (const TestUser& t : test) users.push_back(t.user);
    return users;
  }
};

inline ColdStartSplit cold_start_split(const RatingsTable& ratings,
                                       std::size_t threshold = kDefaultColdThreshold) {
  if (threshold == 0) throw std::invalid_argument("cold_start_split: threshold must be >= 1");
  ColdStartSplit split;
  split.threshold = threshold;
  std::vector<Rating> train;
  for (std::size_t u = 0; u < ratings.n_users(); ++u) {
    const auto user = static_cast<UserId>(u);
    const auto records = ratings.of_user(user);
    if (records.empty()) continue;
    if (records.size() <= threshold) {
      TestUser t{user, {}};
      for (const Rating& r : records) t.items.push_back(r.item);
      split.test.push_back(std::move(t));
    } else {
      train.insert(train.end(), records.begin(), records.end());
    }
  }
  split.train = RatingsTable::build(ratings.n_users(), ratings.n_items(), std::move(train));
  return split;
}

// A recommendation approach: a Katz configuration or one of the baselines.
struct Method {
  enum class Kind { katz, trust_explicit, trust_jaccard, most_popular };

  Kind kind = Kind::katz;
  KatzConfig katz;
  JaccardSets jaccard_sets = JaccardSets::out;

  static Method katz_similarity(const KatzConfig& config) { return {Kind::katz, config, {}}; }
  static Method trust_explicit() { return {Kind::trust_explicit, {}, {}}; }
  static Method trust_jaccard(JaccardSets sets = JaccardSets::out) {
    return {Kind::trust_jaccard, {}, sets};
  }
  static Method most_popular() { return {Kind::most_popular, {}, {}}; }

  std::string label() const {
    switch (kind) {
      case Kind::katz: return katz.label();
      case Kind::trust_explicit: return std::string(kTrustExplicitLabel);
      case Kind::trust_jaccard:
        return std::string(kTrustJaccardLabel) + (jaccard_sets == JaccardSets::in ? "+in" : "");
      case Kind::most_popular: return std::string(kMostPopularLabel);
    }
    return {};
  }

  // Accepts every label produced by label(). alpha and convention fill in
  // the Katz fields a label does not carry.
  static Method parse(std::string_view label, double alpha = kDefaultAlpha,
                      Convention convention = Convention::as_paper) {
    if (label == kTrustExplicitLabel) return trust_explicit();
    if (label == kTrustJaccardLabel) return trust_jaccard(JaccardSets::out);
    if (label == std::string(kTrustJaccardLabel) + "+in") return trust_jaccard(JaccardSets::in);
    if (label == kMostPopularLabel) return most_popular();
    KatzConfig c = KatzConfig::from_label(label, alpha);
    if (convention == Convention::transposed) c.convention = convention;
    c.validate();
    return katz_similarity(c);
  }
};

inline std::vector<Method> baseline_methods(JaccardSets sets = JaccardSets::out) {
  return {Method::trust_explicit(), Method::trust_jaccard(sets), Method::most_popular()};
}

// Drops later methods whose label repeats an earlier one.
inline std::vector<Method> dedupe_methods(std::span<const Method> methods) {
  std::vector<Method> out;
  std::set<std::string> seen;
  for (const Method& m : methods) {
    if (seen.insert(m.label()).second) out.push_back(m);
  }
  return out;
}

// Every valid combination of k_max {1, 2} x degree norm {none, in, combined}
// x row norm {none, l1, l2, max} x boost {off, on}, where boost needs
// k_max = 2 and a row norm: 12 + 12 + 9 = 33 Katz configurations.
inline std::vector<KatzConfig> sweep_configs(double alpha = kDefaultAlpha,
                                             Convention convention = Convention::as_paper) {
  std::vector<KatzConfig> out;
  for (int k_max : {1, 2}) {
    for (DegreeNorm d : {DegreeNorm::none, DegreeNorm::in, DegreeNorm::combined}) {
      for (RowNorm r : {RowNorm::none, RowNorm::l1, RowNorm::l2, RowNorm::max}) {
        for (bool boost : {false, true}) {
          KatzConfig c;
          c.alpha = alpha;
          c.k_max = k_max;
          c.degree_norm = d;
          c.row_norm = r;
          c.boost = boost;
          c.convention = convention;
          try {
            c.validate();
          } catch (const ConfigError&) {
            continue;
          }
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

// The sweep grid followed by the three baselines.
inline std::vector<Method> sweep_methods(double alpha = kDefaultAlpha,
                                         Convention convention = Convention::as_paper,
                                         JaccardSets sets = JaccardSets::out) {
  std::vector<Method> methods;
  for (const KatzConfig& c : sweep_configs(alpha, convention)) {
    methods.push_back(Method::katz_similarity(c));
  }
  for (const Method& m : baseline_methods(sets)) methods.push_back(m);
  return dedupe_methods(methods);
}

struct ExperimentOptions {
  std::size_t k_neighbors = kDefaultNeighbors;
  std::size_t top_n = kDefaultTopN;
  std::size_t threads = 1;
  ScoreOptions scoring;
};

// The similarity matrix a neighborhood method uses, computed only for the
// rows in `users`.
inline SimilarityMatrix method_similarity(const TrustGraph& graph, const Method& method,
                                          std::span<const UserId> users,
                                          std::size_t threads = 1) {
  std::vector<char> mask(graph.n_users(), 0);
  for (UserId u : users) {
    if (u >= graph.n_users()) throw std::out_of_range("user outside trust graph");
    mask[u] = 1;
  }
  const BuildOptions options{threads, mask};
  switch (method.kind) {
    case Method::Kind::katz: return build_similarity(graph, method.katz, options);
    case Method::Kind::trust_explicit: return baseline_trust_explicit(graph);
    case Method::Kind::trust_jaccard:
      return baseline_trust_jaccard(graph, method.jaccard_sets, options);
    case Method::Kind::most_popular: break;
  }
  throw std::logic_error("method has no similarity matrix");
}

// Top-N lists for each user in `users`, in the same order.
inline std::vector<RankedRecommendations> recommend_for_users(
    const TrustGraph& graph, const RatingsTable& train, std::span<const UserId> users,
    const Method& method, const ExperimentOptions& options = {}) {
  std::vector<RankedRecommendations> out(users.size());
  if (method.kind == Method::Kind::most_popular) {
    const auto ranking = baseline_most_popular(train);
    parallel_for(users.size(), options.threads, [&](std::size_t k) {
      out[k] = most_popular_for(users[k], ranking, train, options.top_n);
    });
    return out;
  }

  const SimilarityMatrix sigma = method_similarity(graph, method, users, options.threads);
  parallel_for(users.size(), options.threads, [&](std::size_t k) {
    const NeighborList neighbors = select_neighbors(sigma.matrix, users[k], options.k_neighbors);
    out[k] = recommend_top_n(users[k], score_items(neighbors, train, options.scoring),
                             options.top_n);
  });
  return out;
}

struct MetricsReport {
  std::string label;
  // Index k - 1 holds the value at cutoff k.
  std::vector<double> ndcg;
  std::vector<double> precision;
  std::vector<double> recall;
  std::size_t users = 0;
  std::size_t empty_lists = 0;
  // Set when the configuration failed; the metric vectors are then empty.
  std::optional<std::string> error;

  std::size_t max_k() const noexcept { return ndcg.size(); }
};

// Averages metrics at k = 1..max_k over test users with a non-empty test
// set, summing in user order. recs[i] must belong to split.test[i].
inline MetricsReport evaluate_recommendations(std::string label, const ColdStartSplit& split,
                                              std::span<const RankedRecommendations> recs,
                                              std::size_t max_k = kDefaultTopN) {
  if (recs.size() != split.test.size()) {
    throw std::invalid_argument("evaluate_recommendations: one list per test user expected");
  }
  MetricsReport report;
  report.label = std::move(label);
  report.ndcg.assign(max_k, 0.0);
  report.precision.assign(max_k, 0.0);
  report.recall.assign(max_k, 0.0);

  std::vector<ItemId> ranked;
  for (std::size_t u = 0; u < split.test.size(); ++u) {
    const TestUser& t = split.test[u];
    if (recs[u].target != t.user) {
      throw std::invalid_argument("evaluate_recommendations: list order does not match test users");
    }
    if (t.items.empty()) continue;
    ranked.clear();
    for (const ItemScore& s : recs[u].items) {
      if (split.train.has(t.user, s.item)) {
        throw std::logic_error("recommended an item from the user's training ratings");
      }
      ranked.push_back(s.item);
    }
    ++report.users;
    if (ranked.empty()) ++report.empty_lists;
    for (std::size_t k = 1; k <= max_k; ++k) {
      report.ndcg[k - 1] += ndcg_at_k(ranked, t.items, k);
      report.precision[k - 1] += precision_at_k(ranked, t.items, k);
      report.recall[k - 1] += recall_at_k(ranked, t.items, k);
    }
  }
  if (report.users > 0) {
    const double n = static_cast<double>(report.users);
    for (std::size_t k = 0; k < max_k; ++k) {
      report.ndcg[k] /= n;
      report.precision[k] /= n;
      report.recall[k] /= n;
    }
  }
  return report;
}

// Runs every method over the cold-start users. A method that throws yields
// a report carrying the error; the remaining methods still run.
inline std::vector<MetricsReport> run_experiment(const TrustGraph& graph, const ColdStartSplit& split,
                                                 std::span<const Method> methods,
                                                 const ExperimentOptions& options = {}) {
  if (split.test.empty()) {
    throw std::invalid_argument(
        "no cold-start users: every user has more than " + std::to_string(split.threshold) +
        " ratings");
  }
  const std::vector<UserId> users = split.cold_users();
  std::vector<MetricsReport> reports;
  for (const Method& method : methods) {
    try {
      const auto recs = recommend_for_users(graph, split.train, users, method, options);
      reports.push_back(evaluate_recommendations(method.label(), split, recs, options.top_n));
    } catch (const std::exception& e) {
      MetricsReport failed;
      failed.label = method.label();
      failed.error = e.what();
      reports.push_back(std::move(failed));
    }
  }
  return reports;
}

namespace detail {

inline std::string fixed(double v, int digits = 8) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

// config,k,ndcg,precision,recall,users,empty_lists
inline void write_metrics_csv(std::ostream& out, std::span<const MetricsReport> reports) {
  out << "config,k,ndcg,precision,recall,users,empty_lists\n";
  for (const MetricsReport& r : reports) {
    if (r.error) continue;
    for (std::size_t k = 1; k <= r.max_k(); ++k) {
      out << r.label << ',' << k << ',' << detail::fixed(r.ndcg[k - 1]) << ','
          << detail::fixed(r.precision[k - 1]) << ',' << detail::fixed(r.recall[k - 1]) << ','
          << r.users << ',' << r.empty_lists << '\n';
    }
  }
}

// config,k,recall,precision: one recall/precision point per cutoff.
inline void write_curves_csv(std::ostream& out, std::span<const MetricsReport> reports) {
  out << "config,k,recall,precision\n";
  for (const MetricsReport& r : reports) {
    if (r.error) continue;
    for (std::size_t k = 1; k <= r.max_k(); ++k) {
      out << r.label << ',' << k << ',' << detail::fixed(r.recall[k - 1]) << ','
          << detail::fixed(r.precision[k - 1]) << '\n';
    }
  }
}

// Fixed-width summary at one cutoff, one row per method.
inline void write_summary_table(std::ostream& out, std::span<const MetricsReport> reports,
                                std::size_t k = kDefaultTopN) {
  char line[160];
  std::snprintf(line, sizeof line, "%-18s %8s %8s %8s %7s %7s\n", "Algorithm", "nDCG", "R", "P",
                "users", "empty");
  out << line;
  for (const MetricsReport& r : reports) {
    if (r.error) {
      out << r.label << "  error: " << *r.error << '\n';
      continue;
    }
    if (k == 0 || k > r.max_k()) continue;
    std::snprintf(line, sizeof line, "%-18s %8.4f %8.4f %8.4f %7zu %7zu\n", r.label.c_str(),
                  r.ndcg[k - 1], r.recall[k - 1], r.precision[k - 1], r.users, r.empty_lists);
    out << line;
  }
}

// user item rank score, ranks starting at 1.
inline void write_recommendations(std::ostream& out, std::span<const RankedRecommendations> recs) {
  for (const RankedRecommendations& r : recs) {
    for (std::size_t p = 0; p < r.items.size(); ++p) {
      out << r.target << ' ' << r.items[p].item << ' ' << (p + 1) << ' '
          << detail::format_real(r.items[p].score) << '\n';
    }
  }
}

}  // namespace trustcf
