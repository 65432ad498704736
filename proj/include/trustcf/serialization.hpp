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

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "trustcf/errors.hpp"
#include "trustcf/katz.hpp"
#include "trustcf/sparse_matrix.hpp"
#include "trustcf/text_format.hpp"

namespace trustcf {

// Header `n_rows n_cols nnz`, then one `row col value` line per entry in
// (row, col) order. Values carry 17 significant digits so they read back
// bit-exact.
inline void write_triplets(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  std::string line;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      line.clear();
      line += std::to_string(i);
      line += ' ';
      line += std::to_string(r.cols[k]);
      line += ' ';
      line += detail::format_real(r.values[k]);
      line += '\n';
      out << line;
    }
  }
}

inline SparseMatrix read_triplets(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++number;
      if (!detail::skippable(line)) return true;
    }
    return false;
  };
  if (!next()) throw ParseError(number, "missing `n_rows n_cols nnz` header");
  const auto header = detail::split_fields(line, LineFormat{});
  if (header.size() != 3) throw ParseError(number, "expected `n_rows n_cols nnz`");
  const auto rows = detail::parse_id(header[0], number, "row count");
  const auto cols = detail::parse_id(header[1], number, "column count");
  const auto nnz = detail::parse_id(header[2], number, "entry count");

  std::vector<SparseMatrix::Triplet> t;
  t.reserve(nnz);
  while (next()) {
    const auto f = detail::split_fields(line, LineFormat{});
    if (f.size() != 3) throw ParseError(number, "expected `row col value`");
    const auto r = detail::parse_id(f[0], number, "row");
    const auto c = detail::parse_id(f[1], number, "column");
    if (r >= rows || c >= cols) throw ParseError(number, "entry outside declared shape");
    const double v = detail::parse_real(f[2], number, "value");
    if (!t.empty() && (t.back().row > r || (t.back().row == r && t.back().col >= c))) {
      throw ParseError(number, "entries must be strictly sorted by (row, col)");
    }
    if (v == 0.0) throw ParseError(number, "explicit zero entry");
    t.push_back({static_cast<SparseMatrix::Index>(r), static_cast<SparseMatrix::Index>(c), v});
  }
  if (t.size() != nnz) {
    throw ParseError(number, "header declares " + std::to_string(nnz) + " entries, found " +
                                 std::to_string(t.size()));
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

// Sidecar path for an output file: `<file>.config`.
inline std::filesystem::path sidecar_path(const std::filesystem::path& file) {
  return std::filesystem::path(file.string() + ".config");
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace trustcf
