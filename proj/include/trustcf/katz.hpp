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
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trustcf/errors.hpp"
#include "trustcf/sparse_matrix.hpp"
#include "trustcf/trust_graph.hpp"

namespace trustcf {

inline constexpr double kDefaultAlpha = 0.008;
inline constexpr int kMaxPropagation = 4;

enum class DegreeNorm { none, in, combined };
enum class RowNorm { none, l1, l2, max };
// Whether the self-similarity on the diagonal takes part in the row scaling
// of propagated similarities during boosting.
enum class BoostDiagonal { drop, keep };
// Whether boosting masks the degree-normalized matrix or the raw Katz sum.
enum class BoostSource { normalized, raw };

inline std::string_view to_string(DegreeNorm d) {
  switch (d) {
    case DegreeNorm::none: return "none";
    case DegreeNorm::in: return "in";
    case DegreeNorm::combined: return "combined";
  }
  return "?";
}

inline std::string_view to_string(RowNorm r) {
  switch (r) {
    case RowNorm::none: return "none";
    case RowNorm::l1: return "l1";
    case RowNorm::l2: return "l2";
    case RowNorm::max: return "max";
  }
  return "?";
}

inline std::string_view to_string(BoostDiagonal b) {
  return b == BoostDiagonal::drop ? "drop" : "keep";
}

inline std::string_view to_string(BoostSource b) {
  return b == BoostSource::normalized ? "normalized" : "raw";
}

inline DegreeNorm parse_degree_norm(std::string_view s) {
  if (s == "none") return DegreeNorm::none;
  if (s == "in") return DegreeNorm::in;
  if (s == "combined") return DegreeNorm::combined;
  throw ConfigError("unknown degree normalization '" + std::string(s) + "'");
}

inline RowNorm parse_row_norm(std::string_view s) {
  if (s == "none") return RowNorm::none;
  if (s == "l1") return RowNorm::l1;
  if (s == "l2") return RowNorm::l2;
  if (s == "max") return RowNorm::max;
  throw ConfigError("unknown row normalization '" + std::string(s) + "'");
}

inline BoostDiagonal parse_boost_diagonal(std::string_view s) {
  if (s == "drop") return BoostDiagonal::drop;
  if (s == "keep") return BoostDiagonal::keep;
  throw ConfigError("unknown boost diagonal mode '" + std::string(s) + "'");
}

inline BoostSource parse_boost_source(std::string_view s) {
  if (s == "normalized") return BoostSource::normalized;
  if (s == "raw") return BoostSource::raw;
  throw ConfigError("unknown boost source '" + std::string(s) + "'");
}

namespace detail {

inline std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace detail

// One similarity construction: propagation depth, normalizations and boost.
struct KatzConfig {
  double alpha = kDefaultAlpha;
  int k_max = 2;
  DegreeNorm degree_norm = DegreeNorm::none;
  RowNorm row_norm = RowNorm::none;
  bool boost = false;
  BoostDiagonal boost_diagonal = BoostDiagonal::drop;
  BoostSource boost_source = BoostSource::normalized;
  Convention convention = Convention::as_paper;

  bool operator==(const KatzConfig&) const = default;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw ConfigError("alpha must lie in (0, 1), got " + detail::format_real(alpha));
    }
    if (k_max < 1 || k_max > kMaxPropagation) {
      throw ConfigError("kmax must lie in [1, " + std::to_string(kMaxPropagation) +
                        "], got " + std::to_string(k_max));
    }
    if (boost && k_max != 2) {
      throw ConfigError("boost is defined on the k_max = 2 similarity; got kmax = " +
                        std::to_string(k_max));
    }
    if (boost && row_norm == RowNorm::none) {
      throw ConfigError("boost requires a row normalization (l1, l2 or max)");
    }
  }

  // Compact name: KS_ + propagation (N: k_max 1, P: k_max 2, P<k> beyond)
  // + degree norm (N/I/C) + row norm (N/M/L1/L2) + boost (B/N). Non-default
  // secondary switches are appended as suffixes.
  std::string label() const {
    std::string s = "KS_";
    if (k_max == 1) s += 'N';
    else if (k_max == 2) s += 'P';
    else s += "P" + std::to_string(k_max);
    s += degree_norm == DegreeNorm::none ? "N" : degree_norm == DegreeNorm::in ? "I" : "C";
    switch (row_norm) {
      case RowNorm::none: s += "N"; break;
      case RowNorm::max: s += "M"; break;
      case RowNorm::l1: s += "L1"; break;
      case RowNorm::l2: s += "L2"; break;
    }
    s += boost ? 'B' : 'N';
    if (boost && boost_diagonal == BoostDiagonal::keep) s += "+diag";
    if (boost && boost_source == BoostSource::raw) s += "+raw";
    if (convention == Convention::transposed) s += "+T";
    return s;
  }

  // Inverse of label(); alpha is not part of the label and is taken from
  // the argument.
  static KatzConfig from_label(std::string_view label, double alpha = kDefaultAlpha) {
    const std::string original(label);
    auto fail = [&] { throw ConfigError("unrecognized configuration label '" + original + "'"); };
    if (!label.starts_with("KS_")) fail();
    label.remove_prefix(3);

    KatzConfig c;
    c.alpha = alpha;
    if (label.empty()) fail();
    if (label.front() == 'N') {
      c.k_max = 1;
      label.remove_prefix(1);
    } else if (label.front() == 'P') {
      label.remove_prefix(1);
      c.k_max = 2;
      if (!label.empty() && label.front() >= '3' && label.front() <= '9') {
        c.k_max = label.front() - '0';
        label.remove_prefix(1);
      }
    } else {
      fail();
    }

    if (label.empty()) fail();
    switch (label.front()) {
      case 'N': c.degree_norm = DegreeNorm::none; break;
      case 'I': c.degree_norm = DegreeNorm::in; break;
      case 'C': c.degree_norm = DegreeNorm::combined; break;
      default: fail();
    }
    label.remove_prefix(1);

    if (label.starts_with("L1")) {
      c.row_norm = RowNorm::l1;
      label.remove_prefix(2);
    } else if (label.starts_with("L2")) {
      c.row_norm = RowNorm::l2;
      label.remove_prefix(2);
    } else if (label.starts_with("M")) {
      c.row_norm = RowNorm::max;
      label.remove_prefix(1);
    } else if (label.starts_with("N")) {
      c.row_norm = RowNorm::none;
      label.remove_prefix(1);
    } else {
      fail();
    }

    if (label.starts_with("B")) c.boost = true;
    else if (!label.starts_with("N")) fail();
    label.remove_prefix(1);

    while (!label.empty()) {
      if (label.starts_with("+diag")) {
        c.boost_diagonal = BoostDiagonal::keep;
        label.remove_prefix(5);
      } else if (label.starts_with("+raw")) {
        c.boost_source = BoostSource::raw;
        label.remove_prefix(4);
      } else if (label.starts_with("+T")) {
        c.convention = Convention::transposed;
        label.remove_prefix(2);
      } else {
        fail();
      }
    }
    return c;
  }

  // key=value lines using the command-line flag names.
  std::string to_key_values() const {
    std::string s;
    s += "label=" + label() + "\n";
    s += "alpha=" + detail::format_real(alpha) + "\n";
    s += "kmax=" + std::to_string(k_max) + "\n";
    s += "degree-norm=" + std::string(to_string(degree_norm)) + "\n";
    s += "row-norm=" + std::string(to_string(row_norm)) + "\n";
    s += std::string("boost=") + (boost ? "true" : "false") + "\n";
    s += "boost-diag=" + std::string(to_string(boost_diagonal)) + "\n";
    s += "boost-source=" + std::string(to_string(boost_source)) + "\n";
    s += "convention=" + std::string(to_string(convention)) + "\n";
    return s;
  }
};

// A user-by-user similarity matrix together with what produced it.
struct SimilarityMatrix {
  SparseMatrix matrix;
  std::string label;
  // Set for Katz-derived matrices; absent for the trust baselines.
  std::optional<KatzConfig> config;

  double density() const { return matrix.density(); }
};

struct BuildOptions {
  std::size_t threads = 1;
  // When non-empty, only rows with a non-zero flag are computed; the others
  // are left empty. Every stage is row-local, so computed rows equal the
  // corresponding rows of the full matrix.
  std::span<const char> active_rows = {};
};

namespace detail {

inline bool row_active(std::span<const char> mask, std::size_t i) {
  return mask.empty() || mask[i] != 0;
}

}  // namespace detail

// Sum_{k=0}^{k_max} (alpha A)^k. Each term is obtained from the previous one
// by right-multiplying with alpha A, which keeps every output row dependent
// only on the same row of the previous term.
inline SimilarityMatrix katz_truncated(const SparseMatrix& a, double alpha, int k_max,
                                       const BuildOptions& options = {}) {
  if (!a.square()) throw DimensionError("katz_truncated: adjacency must be square");
  if (k_max < 0) throw std::invalid_argument("katz_truncated: k_max must be >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("katz_truncated: alpha must be > 0");
  const std::size_t n = a.rows();
  if (!options.active_rows.empty() && options.active_rows.size() != n) {
    throw DimensionError("katz_truncated: row mask length mismatch");
  }

  SparseMatrix term = SparseMatrix::build_rows(
      n, n, options.threads, [&](std::size_t i, auto& cols, auto& values) {
        if (!detail::row_active(options.active_rows, i)) return;
        cols.push_back(static_cast<SparseMatrix::Index>(i));
        values.push_back(1.0);
      });
  SparseMatrix sigma = term;
  if (k_max > 0) {
    const SparseMatrix step = scaled(a, alpha, options.threads);
    for (int k = 1; k <= k_max; ++k) {
      term = multiply(term, step, options.threads);
      sigma = add(sigma, term, options.threads);
    }
  }

  KatzConfig provenance;
  provenance.alpha = alpha;
  provenance.k_max = k_max;
  SimilarityMatrix out{std::move(sigma), {}, provenance};
  out.label = provenance.label();
  return out;
}

// sigma_ij / (d_i d_j). A zero degree is treated as 1, leaving the entry's
// scale untouched in that row or column instead of annihilating it.
inline SimilarityMatrix degree_normalize(const SimilarityMatrix& sigma,
                                         const DegreeVector& degrees,
                                         std::size_t threads = 1) {
  const SparseMatrix& m = sigma.matrix;
  if (degrees.values.size() != m.rows() || m.rows() != m.cols()) {
    throw DimensionError("degree_normalize: degree vector does not match matrix");
  }
  auto factor = [&](std::size_t i) {
    const auto d = degrees.values[i];
    return d == 0 ? 1.0 : static_cast<double>(d);
  };
  SimilarityMatrix out = sigma;
  out.matrix = SparseMatrix::build_rows(
      m.rows(), m.cols(), threads, [&](std::size_t i, auto& cols, auto& values) {
        const auto r = m.row(i);
        const double di = factor(i);
        for (std::size_t k = 0; k < r.size(); ++k) {
          cols.push_back(r.cols[k]);
          values.push_back(r.values[k] / (di * factor(r.cols[k])));
        }
      });
  if (out.config) {
    out.config->degree_norm =
        degrees.mode == DegreeMode::in ? DegreeNorm::in : DegreeNorm::combined;
    out.label = out.config->label();
  }
  return out;
}

namespace detail {

inline double row_scale(std::span<const double> values, RowNorm norm) {
  double s = 0.0;
  switch (norm) {
    case RowNorm::none:
      return 1.0;
    case RowNorm::l1:
      for (double v : values) s += std::abs(v);
      return s;
    case RowNorm::l2:
      for (double v : values) s += v * v;
      return std::sqrt(s);
    case RowNorm::max:
      for (double v : values) s = std::max(s, std::abs(v));
      return s;
  }
  return 1.0;
}

}  // namespace detail

// Divides every non-empty row by its l1 sum, l2 length or largest entry.
inline SimilarityMatrix row_normalize(const SimilarityMatrix& sigma, RowNorm norm,
                                      std::size_t threads = 1) {
  const SparseMatrix& m = sigma.matrix;
  SimilarityMatrix out = sigma;
  out.matrix = SparseMatrix::build_rows(
      m.rows(), m.cols(), threads, [&](std::size_t i, auto& cols, auto& values) {
        const auto r = m.row(i);
        const double scale = detail::row_scale(r.values, norm);
        for (std::size_t k = 0; k < r.size(); ++k) {
          cols.push_back(r.cols[k]);
          values.push_back(scale > 0.0 ? r.values[k] / scale : r.values[k]);
        }
      });
  if (out.config) {
    out.config->row_norm = norm;
    out.label = out.config->label();
  }
  return out;
}

// A + rownorm(sigma3 masked to the positions where A is zero). Direct trust
// pairs come out at exactly 1; propagated pairs are rescaled per row so they
// are comparable with direct ones.
inline SimilarityMatrix boost_propagated(const SparseMatrix& a, const SimilarityMatrix& sigma3,
                                         RowNorm norm,
                                         BoostDiagonal diagonal = BoostDiagonal::drop,
                                         const BuildOptions& options = {}) {
  const SparseMatrix& s = sigma3.matrix;
  if (a.rows() != s.rows() || a.cols() != s.cols() || !a.square()) {
    throw DimensionError("boost_propagated: adjacency and similarity shapes differ");
  }
  if (!sigma3.config || sigma3.config->k_max != 2) {
    throw ConfigError("boost_propagated: input must be the k_max = 2 Katz similarity");
  }
  if (norm == RowNorm::none) {
    throw ConfigError("boost_propagated: a row normalization is required");
  }
  if (!options.active_rows.empty() && options.active_rows.size() != a.rows()) {
    throw DimensionError("boost_propagated: row mask length mismatch");
  }

  SimilarityMatrix out;
  out.config = sigma3.config;
  out.config->row_norm = norm;
  out.config->boost = true;
  out.config->boost_diagonal = diagonal;
  out.label = out.config->label();
  out.matrix = SparseMatrix::build_rows(
      a.rows(), a.cols(), options.threads, [&](std::size_t i, auto& cols, auto& values) {
        if (!detail::row_active(options.active_rows, i)) return;
        const auto ra = a.row(i);
        const auto rs = s.row(i);

        // Masked row of sigma3: drop every column present in A's row.
        std::vector<SparseMatrix::Index> hat_cols;
        std::vector<double> hat_values;
        std::size_t p = 0;
        for (std::size_t k = 0; k < rs.size(); ++k) {
          const auto c = rs.cols[k];
          while (p < ra.size() && ra.cols[p] < c) ++p;
          if (p < ra.size() && ra.cols[p] == c) continue;
          if (c == i && diagonal == BoostDiagonal::drop) continue;
          hat_cols.push_back(c);
          hat_values.push_back(rs.values[k]);
        }
        const double scale = detail::row_scale(hat_values, norm);

        // Merge A's row (values 1) with the scaled masked row; the two
        // column sets are disjoint.
        std::size_t q = 0;
        for (std::size_t k = 0; k < ra.size(); ++k) {
          while (q < hat_cols.size() && hat_cols[q] < ra.cols[k]) {
            cols.push_back(hat_cols[q]);
            values.push_back(scale > 0.0 ? hat_values[q] / scale : hat_values[q]);
            ++q;
          }
          cols.push_back(ra.cols[k]);
          values.push_back(ra.values[k]);
        }
        for (; q < hat_cols.size(); ++q) {
          cols.push_back(hat_cols[q]);
          values.push_back(scale > 0.0 ? hat_values[q] / scale : hat_values[q]);
        }
      });
  return out;
}

// Full construction: Katz sum, then degree normalization, then row
// normalization, then boost, each stage only if the config asks for it.
// With boost on, the row norm is applied to the masked matrix inside the
// boost step.
inline SimilarityMatrix build_similarity(const TrustGraph& graph, const KatzConfig& config,
                                         const BuildOptions& options = {}) {
  config.validate();
  if (graph.convention() != config.convention) {
    throw ConfigError("graph was built with the " + std::string(to_string(graph.convention())) +
                      " convention but the configuration asks for " +
                      std::string(to_string(config.convention)));
  }
  const SparseMatrix& a = graph.adjacency();
  SimilarityMatrix sigma = katz_truncated(a, config.alpha, config.k_max, options);
  sigma.config->convention = config.convention;

  const bool normalize_degrees =
      config.degree_norm != DegreeNorm::none &&
      !(config.boost && config.boost_source == BoostSource::raw);
  if (normalize_degrees) {
    const DegreeVector degrees = degree_vector(
        graph, config.degree_norm == DegreeNorm::in ? DegreeMode::in : DegreeMode::combined);
    sigma = degree_normalize(sigma, degrees, options.threads);
  }

  if (config.boost) {
    sigma = boost_propagated(a, sigma, config.row_norm, config.boost_diagonal, options);
  } else if (config.row_norm != RowNorm::none) {
    sigma = row_normalize(sigma, config.row_norm, options.threads);
  }
  sigma.config = config;
  sigma.label = config.label();
  return sigma;
}

}  // namespace trustcf
