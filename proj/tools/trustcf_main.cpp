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

// trustcf command-line driver. Every subcommand reads the same option set;
// options may also come from a flat `key=value` file given with --config, in
// which case flags on the command line win.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trustcf/trustcf.hpp"

namespace fs = std::filesystem;
using namespace trustcf;

namespace {

struct RunConfig {
  std::string trust;
  std::string ratings;
  std::string out;
  double alpha = kDefaultAlpha;
  int k_max = 2;
  std::string degree_norm = "none";
  std::string row_norm = "none";
  bool boost = false;
  std::string boost_diag = "drop";
  std::string boost_source = "normalized";
  std::string convention = "as-paper";
  std::size_t neighbors = kDefaultNeighbors;
  std::size_t top_n = kDefaultTopN;
  std::size_t cold_threshold = kDefaultColdThreshold;
  std::string delimiter;
  std::uint64_t seed = 42;
  std::size_t threads = default_thread_count();
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  std::string jaccard_sets = "out";
  std::optional<double> min_rating;
  std::vector<std::string> configs;
  bool baselines_only = false;
  bool sweep = false;

  LineFormat format() const {
    if (delimiter.empty()) return LineFormat::whitespace();
    if (delimiter == "tab" || delimiter == "\\t") return LineFormat::with_delimiter('\t');
    if (delimiter == "comma") return LineFormat::with_delimiter(',');
    if (delimiter.size() != 1) {
      throw ConfigError("--delimiter must be a single character, `tab` or `comma`");
    }
    return LineFormat::with_delimiter(delimiter[0]);
  }

  KatzConfig katz() const {
    KatzConfig c;
    c.alpha = alpha;
    c.k_max = k_max;
    c.degree_norm = parse_degree_norm(degree_norm);
    c.row_norm = parse_row_norm(row_norm);
    c.boost = boost;
    c.boost_diagonal = parse_boost_diagonal(boost_diag);
    c.boost_source = parse_boost_source(boost_source);
    c.convention = parse_convention(convention);
    c.validate();
    return c;
  }

  ExperimentOptions experiment() const {
    ExperimentOptions o;
    o.k_neighbors = neighbors;
    o.top_n = top_n;
    o.threads = threads;
    o.scoring.min_rating = min_rating;
    return o;
  }

  std::string run_key_values() const {
    std::ostringstream s;
    s << "trust=" << trust << '\n';
    if (!ratings.empty()) s << "ratings=" << ratings << '\n';
    s << "alpha=" << detail::format_real(alpha) << '\n'
      << "convention=" << convention << '\n'
      << "neighbors=" << neighbors << '\n'
      << "topn=" << top_n << '\n'
      << "cold-threshold=" << cold_threshold << '\n'
      << "jaccard-sets=" << jaccard_sets << '\n';
    if (min_rating) s << "min-rating=" << detail::format_real(*min_rating) << '\n';
    return s.str();
  }
};

Dataset load(const RunConfig& rc, bool need_ratings) {
  if (rc.trust.empty()) throw ConfigError("--trust is required");
  if (need_ratings && rc.ratings.empty()) throw ConfigError("--ratings is required");
  std::optional<fs::path> ratings;
  if (!rc.ratings.empty()) ratings = rc.ratings;
  return load_dataset(rc.trust, ratings, rc.format(), parse_convention(rc.convention));
}

fs::path output_dir(const RunConfig& rc) {
  if (rc.out.empty()) throw ConfigError("--out is required");
  fs::create_directories(rc.out);
  return rc.out;
}

std::vector<Method> selected_methods(const RunConfig& rc) {
  const auto convention = parse_convention(rc.convention);
  const auto sets = parse_jaccard_sets(rc.jaccard_sets);
  if (rc.sweep) return sweep_methods(rc.alpha, convention, sets);
  if (rc.baselines_only) return baseline_methods(sets);
  std::vector<Method> methods;
  if (rc.configs.empty()) {
    methods.push_back(Method::katz_similarity(rc.katz()));
    for (const Method& m : baseline_methods(sets)) methods.push_back(m);
  } else {
    for (const std::string& label : rc.configs) {
      Method m = Method::parse(label, rc.alpha, convention);
      if (m.kind == Method::Kind::trust_jaccard && label == kTrustJaccardLabel) {
        m.jaccard_sets = sets;
      }
      methods.push_back(m);
    }
  }
  return dedupe_methods(methods);
}

int cmd_ingest(const RunConfig& rc) {
  const Dataset d = load(rc, false);
  std::cout << d.stats.summary_line() << '\n';
  if (!rc.out.empty()) {
    const fs::path dir = output_dir(rc);
    std::ostringstream users, items;
    d.users.write(users);
    d.items.write(items);
    write_text_file(dir / "users.idmap", users.str());
    write_text_file(dir / "items.idmap", items.str());
    write_text_file(dir / "ingest_summary.txt", d.stats.summary_line() + '\n');
    write_text_file(sidecar_path(dir / "ingest_summary.txt"), rc.run_key_values());
  }
  return 0;
}

int cmd_eigen(const RunConfig& rc) {
  const Dataset d = load(rc, false);
  SpectralOptions opts;
  opts.tol = rc.tol;
  opts.max_iter = rc.max_iter;
  opts.seed = rc.seed;
  const SpectralEstimate est = spectral_radius(d.graph.adjacency(), opts);
  std::printf("lambda=%.10g iterations=%zu converged=%s alpha_bound=%.10g\n", est.value,
              est.iterations, est.converged ? "true" : "false",
              est.value > 0 ? 1.0 / est.value : 0.0);
  if (!est.converged) {
    std::fprintf(stderr, "warning: power iteration stopped at max-iter=%zu before tol=%g\n",
                 rc.max_iter, rc.tol);
  }
  if (est.value > 0 && rc.alpha >= 1.0 / est.value) {
    std::fprintf(stderr, "warning: alpha=%g is not below 1/lambda; the full series diverges\n",
                 rc.alpha);
  }
  return 0;
}

int cmd_similarity(const RunConfig& rc) {
  const KatzConfig config = rc.katz();
  const fs::path dir = output_dir(rc);
  const Dataset d = load(rc, false);
  const SimilarityMatrix sigma = build_similarity(d.graph, config, BuildOptions{rc.threads, {}});
  std::ostringstream body;
  write_triplets(body, sigma.matrix);
  const fs::path file = dir / "similarity.txt";
  write_text_file(file, body.str());
  write_text_file(sidecar_path(file), config.to_key_values() + "trust=" + rc.trust + '\n');
  std::printf("label=%s nnz=%zu density=%.6g offdiag_density=%.6g\n", sigma.label.c_str(),
              sigma.matrix.nnz(), sigma.density(), sigma.matrix.off_diagonal_density());
  return 0;
}

int cmd_recommend(const RunConfig& rc) {
  if (rc.baselines_only || rc.sweep || rc.configs.size() > 1) {
    throw ConfigError("recommend takes one method: the Katz flags or a single --configs label");
  }
  const Method method = rc.configs.empty() ? Method::katz_similarity(rc.katz())
                                           : selected_methods(rc).front();
  const fs::path dir = output_dir(rc);
  const Dataset d = load(rc, true);
  const ColdStartSplit split = cold_start_split(d.ratings, rc.cold_threshold);
  const auto users = split.cold_users();
  const auto recs = recommend_for_users(d.graph, split.train, users, method, rc.experiment());

  std::string body;
  for (const RankedRecommendations& r : recs) {
    for (std::size_t p = 0; p < r.items.size(); ++p) {
      body += std::to_string(d.users.raw(r.target)) + ' ' +
              std::to_string(d.items.raw(r.items[p].item)) + ' ' + std::to_string(p + 1) + ' ' +
              detail::format_real(r.items[p].score) + '\n';
    }
  }
  const fs::path file = dir / "recommendations.txt";
  write_text_file(file, body);
  std::string provenance = "method=" + method.label() + '\n' + rc.run_key_values();
  if (method.kind == Method::Kind::katz) provenance += method.katz.to_key_values();
  write_text_file(sidecar_path(file), provenance);
  std::printf("method=%s cold_users=%zu lists=%zu\n", method.label().c_str(), users.size(),
              recs.size());
  return 0;
}

int cmd_evaluate(const RunConfig& rc) {
  const auto methods = selected_methods(rc);
  const fs::path dir = output_dir(rc);
  const Dataset d = load(rc, true);
  const ColdStartSplit split = cold_start_split(d.ratings, rc.cold_threshold);
  std::fprintf(stderr, "%s cold_users=%zu methods=%zu\n", d.stats.summary_line().c_str(),
               split.test.size(), methods.size());
  const auto reports = run_experiment(d.graph, split, methods, rc.experiment());

  std::ostringstream metrics, curves;
  write_metrics_csv(metrics, reports);
  write_curves_csv(curves, reports);
  std::string provenance = rc.run_key_values() + "methods=";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    provenance += (i ? "," : "") + methods[i].label();
  }
  provenance += '\n';
  write_text_file(dir / "metrics.csv", metrics.str());
  write_text_file(dir / "curves.csv", curves.str());
  write_text_file(sidecar_path(dir / "metrics.csv"), provenance);
  write_text_file(sidecar_path(dir / "curves.csv"), provenance);
  write_summary_table(std::cout, reports, rc.top_n);

  const bool any_failed = std::any_of(reports.begin(), reports.end(),
                                      [](const MetricsReport& r) { return r.error.has_value(); });
  return any_failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trust-network collaborative filtering with truncated Katz similarity"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; command-line flags override it");

  RunConfig rc;
  app.add_option("--trust", rc.trust, "trust edge file: `truster trustee [1]` per line");
  app.add_option("--ratings", rc.ratings, "ratings file: `user item rating` per line");
  app.add_option("--out", rc.out, "output directory");
  app.add_option("--alpha", rc.alpha, "attenuation factor")->capture_default_str();
  app.add_option("--kmax", rc.k_max, "longest path length summed")
      ->check(CLI::Range(1, kMaxPropagation))
      ->capture_default_str();
  app.add_option("--degree-norm", rc.degree_norm)
      ->check(CLI::IsMember({"none", "in", "combined"}))
      ->capture_default_str();
  app.add_option("--row-norm", rc.row_norm)
      ->check(CLI::IsMember({"none", "l1", "l2", "max"}))
      ->capture_default_str();
  app.add_flag("--boost", rc.boost, "rescale propagated similarities, direct trust at 1");
  app.add_option("--boost-diag", rc.boost_diag)
      ->check(CLI::IsMember({"keep", "drop"}))
      ->capture_default_str();
  app.add_option("--boost-source", rc.boost_source)
      ->check(CLI::IsMember({"normalized", "raw"}))
      ->capture_default_str();
  app.add_option("--convention", rc.convention)
      ->check(CLI::IsMember({"as-paper", "transposed"}))
      ->capture_default_str();
  app.add_option("--neighbors", rc.neighbors)->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--topn", rc.top_n)->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--cold-threshold", rc.cold_threshold)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--delimiter", rc.delimiter, "field separator; whitespace when unset");
  app.add_option("--seed", rc.seed, "eigenvalue start-vector seed")->capture_default_str();
  app.add_option("--threads", rc.threads, "worker thread cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol", rc.tol, "eigenvalue convergence tolerance")->capture_default_str();
  app.add_option("--max-iter", rc.max_iter)->capture_default_str();
  app.add_option("--jaccard-sets", rc.jaccard_sets)
      ->check(CLI::IsMember({"out", "in"}))
      ->capture_default_str();
  app.add_option("--min-rating", rc.min_rating, "ignore neighbor ratings below this value");
  auto* configs = app.add_option("--configs", rc.configs, "method labels, comma separated")
                      ->delimiter(',');
  auto* baselines = app.add_flag("--baselines-only", rc.baselines_only);
  auto* sweep = app.add_flag("--sweep", rc.sweep, "every Katz configuration plus baselines");
  configs->excludes(baselines)->excludes(sweep);
  baselines->excludes(sweep);

  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };
  auto* ingest = add("ingest", "parse inputs, print a summary, write id maps");
  auto* eigen = add("eigen", "estimate the spectral radius of the trust adjacency");
  auto* similarity = add("similarity", "build and save one similarity matrix");
  auto* recommend = add("recommend", "top-N lists for cold-start users");
  auto* evaluate = add("evaluate", "metrics for selected methods over cold-start users");
  auto* sweep_cmd = add("sweep", "evaluate every configuration in the grid");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) {
      if (!rc.configs.empty() || rc.baselines_only) {
        throw ConfigError("sweep does not take --configs or --baselines-only");
      }
      rc.sweep = true;
      return cmd_evaluate(rc);
    }
    if (ingest->parsed()) return cmd_ingest(rc);
    if (eigen->parsed()) return cmd_eigen(rc);
    if (similarity->parsed()) return cmd_similarity(rc);
    if (recommend->parsed()) return cmd_recommend(rc);
    if (evaluate->parsed()) return cmd_evaluate(rc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
