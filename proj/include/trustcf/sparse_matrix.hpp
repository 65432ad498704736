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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trustcf/errors.hpp"
#include "trustcf/parallel.hpp"

namespace trustcf {

namespace detail {

// Partition of [0, rows) into contiguous blocks shared by build_rows and
// callers that keep per-block scratch state.
struct BlockLayout {
  std::size_t blocks;
  std::size_t block;

  BlockLayout(std::size_t rows, std::size_t threads) {
    if (threads == 0) threads = default_thread_count();
    blocks = std::max<std::size_t>(1, std::min(threads, rows));
    block = rows == 0 ? 1 : (rows + blocks - 1) / blocks;
  }

  std::size_t block_of(std::size_t row) const noexcept { return row / block; }
};

}  // namespace detail

// Row-compressed real matrix. Column indices are strictly increasing within
// each row and no stored value is exactly zero; every operation in this
// header returns matrices that keep both properties.
class SparseMatrix {
 public:
  using Index = std::uint32_t;

  struct Triplet {
    Index row;
    Index col;
    double value;
  };

  struct RowView {
    std::span<const Index> cols;
    std::span<const double> values;

    std::size_t size() const noexcept { return cols.size(); }
    bool empty() const noexcept { return cols.empty(); }
  };

  SparseMatrix() = default;

  SparseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), offsets_(rows + 1, 0) {}

  static SparseMatrix identity(std::size_t n, double value = 1.0) {
    SparseMatrix m(n, n);
    if (value == 0.0) return m;
    m.indices_.resize(n);
    m.values_.assign(n, value);
    for (std::size_t i = 0; i < n; ++i) {
      m.indices_[i] = static_cast<Index>(i);
      m.offsets_[i + 1] = i + 1;
    }
    return m;
  }

  // Duplicate coordinates are summed; entries that end up zero are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
      if (t.row >= rows || t.col >= cols) {
        throw DimensionError("triplet (" + std::to_string(t.row) + ", " +
                             std::to_string(t.col) + ") outside " +
                             std::to_string(rows) + "x" + std::to_string(cols));
      }
    }
    std::stable_sort(triplets.begin(), triplets.end(),
                     [](const Triplet& a, const Triplet& b) {
                       return a.row != b.row ? a.row < b.row : a.col < b.col;
                     });
    SparseMatrix m(rows, cols);
    m.indices_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      while (k < triplets.size() && triplets[k].row == r) {
        const Index c = triplets[k].col;
        double v = 0.0;
        for (; k < triplets.size() && triplets[k].row == r &&
               triplets[k].col == c;
             ++k) {
          v += triplets[k].value;
        }
        if (v != 0.0) {
          m.indices_.push_back(c);
          m.values_.push_back(v);
        }
      }
      m.offsets_[r + 1] = m.indices_.size();
    }
    return m;
  }

  // Row-major dense input; zeros are not stored.
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols,
                                 std::span<const double> dense) {
    if (dense.size() != rows * cols) {
      throw DimensionError("dense buffer size does not match shape");
    }
    SparseMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const double v = dense[r * cols + c];
        if (v != 0.0) {
          m.indices_.push_back(static_cast<Index>(c));
          m.values_.push_back(v);
        }
      }
      m.offsets_[r + 1] = m.indices_.size();
    }
    return m;
  }

  // Builds a matrix row by row. fill(i, cols, values) appends the entries of
  // row i in increasing column order; zeros it appends are discarded. Rows
  // are produced in parallel blocks and concatenated in row order, so the
  // result does not depend on the thread count.
  template <typename Fill>
  static SparseMatrix build_rows(std::size_t rows, std::size_t cols,
                                 std::size_t threads, Fill&& fill) {
    const detail::BlockLayout layout(rows, threads);
    const std::size_t blocks = layout.blocks;
    const std::size_t block = layout.block;

    struct Chunk {
      std::vector<std::size_t> counts;
      std::vector<Index> indices;
      std::vector<double> values;
    };
    std::vector<Chunk> chunks(blocks);

    parallel_for(blocks, threads, [&](std::size_t b) {
      const std::size_t begin = b * block;
      const std::size_t end = std::min(rows, begin + block);
      Chunk& chunk = chunks[b];
      std::vector<Index> row_cols;
      std::vector<double> row_values;
      for (std::size_t i = begin; i < end; ++i) {
        row_cols.clear();
        row_values.clear();
        fill(i, row_cols, row_values);
        if (row_cols.size() != row_values.size()) {
          throw std::logic_error("row fill produced mismatched buffers");
        }
        std::size_t kept = 0;
        for (std::size_t k = 0; k < row_cols.size(); ++k) {
          if (row_values[k] == 0.0) continue;
          if (row_cols[k] >= cols ||
              (kept > 0 && chunk.indices.back() >= row_cols[k])) {
            throw std::logic_error("row fill produced unsorted or "
                                   "out-of-range columns");
          }
          chunk.indices.push_back(row_cols[k]);
          chunk.values.push_back(row_values[k]);
          ++kept;
        }
        chunk.counts.push_back(kept);
      }
    });

    SparseMatrix m(rows, cols);
    std::size_t total = 0;
    for (const auto& c : chunks) total += c.indices.size();
    m.indices_.reserve(total);
    m.values_.reserve(total);
    std::size_t r = 0;
    for (auto& c : chunks) {
      for (std::size_t count : c.counts) {
        m.offsets_[r + 1] = m.offsets_[r] + count;
        ++r;
      }
      m.indices_.insert(m.indices_.end(), c.indices.begin(), c.indices.end());
      m.values_.insert(m.values_.end(), c.values.begin(), c.values.end());
      c = Chunk{};
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  bool square() const noexcept { return rows_ == cols_; }

  RowView row(std::size_t i) const {
    const std::size_t b = offsets_[i];
    const std::size_t e = offsets_[i + 1];
    return {std::span<const Index>(indices_).subspan(b, e - b),
            std::span<const double>(values_).subspan(b, e - b)};
  }

  double at(std::size_t i, std::size_t j) const {
    const RowView r = row(i);
    const auto it = std::lower_bound(r.cols.begin(), r.cols.end(),
                                     static_cast<Index>(j));
    if (it == r.cols.end() || *it != j) return 0.0;
    return r.values[static_cast<std::size_t>(it - r.cols.begin())];
  }

  // Stored entries over rows * cols.
  double density() const noexcept {
    if (rows_ == 0 || cols_ == 0) return 0.0;
    return static_cast<double>(nnz()) /
           (static_cast<double>(rows_) * static_cast<double>(cols_));
  }

  // Like density() but ignoring entries on the main diagonal.
  double off_diagonal_density() const {
    if (rows_ == 0 || cols_ == 0) return 0.0;
    std::size_t off = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (Index c : row(i).cols) off += (c != i);
    }
    return static_cast<double>(off) /
           (static_cast<double>(rows_) * static_cast<double>(cols_));
  }

  std::vector<double> to_dense() const {
    std::vector<double> d(rows_ * cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const RowView r = row(i);
      for (std::size_t k = 0; k < r.size(); ++k) d[i * cols_ + r.cols[k]] = r.values[k];
    }
    return d;
  }

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const Index> indices() const noexcept { return indices_; }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const SparseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> indices_;
  std::vector<double> values_;
};

inline SparseMatrix transpose(const SparseMatrix& a) {
  std::vector<SparseMatrix::Triplet> t;
  t.reserve(a.nnz());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      t.push_back({r.cols[k], static_cast<SparseMatrix::Index>(i), r.values[k]});
    }
  }
  return SparseMatrix::from_triplets(a.cols(), a.rows(), std::move(t));
}

inline SparseMatrix scaled(const SparseMatrix& a, double factor,
                           std::size_t threads = 1) {
  return SparseMatrix::build_rows(
      a.rows(), a.cols(), threads,
      [&](std::size_t i, auto& cols, auto& values) {
        const auto r = a.row(i);
        for (std::size_t k = 0; k < r.size(); ++k) {
          cols.push_back(r.cols[k]);
          values.push_back(r.values[k] * factor);
        }
      });
}

// Entrywise a + b. Entries that cancel to zero are dropped.
inline SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b,
                        std::size_t threads = 1) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("add: shape mismatch");
  }
  return SparseMatrix::build_rows(
      a.rows(), a.cols(), threads,
      [&](std::size_t i, auto& cols, auto& values) {
        const auto ra = a.row(i);
        const auto rb = b.row(i);
        std::size_t p = 0, q = 0;
        while (p < ra.size() || q < rb.size()) {
          if (q == rb.size() || (p < ra.size() && ra.cols[p] < rb.cols[q])) {
            cols.push_back(ra.cols[p]);
            values.push_back(ra.values[p++]);
          } else if (p == ra.size() || rb.cols[q] < ra.cols[p]) {
            cols.push_back(rb.cols[q]);
            values.push_back(rb.values[q++]);
          } else {
            cols.push_back(ra.cols[p]);
            values.push_back(ra.values[p++] + rb.values[q++]);
          }
        }
      });
}

// Sparse product a * b (row-by-row Gustavson accumulation). When
// active_rows is non-empty, only rows i with active_rows[i] != 0 are
// computed and all other output rows are left empty.
inline SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b,
                             std::size_t threads = 1,
                             std::span<const char> active_rows = {}) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimension mismatch");
  if (!active_rows.empty() && active_rows.size() != a.rows()) {
    throw DimensionError("multiply: row mask length mismatch");
  }

  struct Scratch {
    std::vector<double> acc;
    std::vector<char> seen;
    std::vector<SparseMatrix::Index> touched;
  };
  // build_rows calls fill sequentially inside a block, so one scratch per
  // block is enough.
  const detail::BlockLayout layout(a.rows(), threads);
  std::vector<Scratch> scratch(layout.blocks);

  return SparseMatrix::build_rows(
      a.rows(), b.cols(), threads,
      [&](std::size_t i, auto& cols, auto& values) {
        if (!active_rows.empty() && !active_rows[i]) return;
        Scratch& s = scratch[layout.block_of(i)];
        if (s.acc.size() != b.cols()) {
          s.acc.assign(b.cols(), 0.0);
          s.seen.assign(b.cols(), 0);
        }
        const auto ra = a.row(i);
        for (std::size_t p = 0; p < ra.size(); ++p) {
          const auto rb = b.row(ra.cols[p]);
          const double av = ra.values[p];
          for (std::size_t q = 0; q < rb.size(); ++q) {
            const auto c = rb.cols[q];
            if (!s.seen[c]) {
              s.seen[c] = 1;
              s.touched.push_back(c);
            }
            s.acc[c] += av * rb.values[q];
          }
        }
        std::sort(s.touched.begin(), s.touched.end());
        for (auto c : s.touched) {
          cols.push_back(c);
          values.push_back(s.acc[c]);
          s.acc[c] = 0.0;
          s.seen[c] = 0;
        }
        s.touched.clear();
      });
}

inline std::vector<double> multiply(const SparseMatrix& a,
                                    std::span<const double> x) {
  if (x.size() != a.cols()) throw DimensionError("multiply: vector length mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) sum += r.values[k] * x[r.cols[k]];
    y[i] = sum;
  }
  return y;
}

}  // namespace trustcf
