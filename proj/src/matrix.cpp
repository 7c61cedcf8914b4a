// Copyright 2026 The eqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eqlab/matrix.hpp"

#include <algorithm>
#include <string>

namespace eqlab {

FieldMatrix FieldMatrix::from_rows(
    std::initializer_list<std::initializer_list<std::uint32_t>> rows) {
  std::vector<FieldVector> v;
  for (const auto& r : rows) {
    FieldVector row;
    for (std::uint32_t x : r) row.emplace_back(x);
    v.push_back(std::move(row));
  }
  return from_rows(v);
}

FieldMatrix FieldMatrix::from_rows(const std::vector<FieldVector>& rows) {
  if (rows.empty()) return {};
  FieldMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged row list");
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

FieldMatrix FieldMatrix::identity(std::size_t n) {
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement{1};
  return m;
}

FieldVector FieldMatrix::column(std::size_t c) const {
  FieldVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void FieldMatrix::reset(std::size_t rows, std::size_t cols) {
  rows_ = rows;
  cols_ = cols;
  data_.assign(rows * cols, FieldElement{});
}

FieldMatrix FieldMatrix::submatrix(std::span<const std::size_t> row_set,
                                   std::span<const std::size_t> col_set) const {
  FieldMatrix out(row_set.size(), col_set.size());
  for (std::size_t i = 0; i < row_set.size(); ++i) {
    for (std::size_t j = 0; j < col_set.size(); ++j) {
      if (row_set[i] >= rows_ || col_set[j] >= cols_) {
        throw Error(ErrorCode::kDimensionMismatch, "submatrix index out of range");
      }
      out(i, j) = (*this)(row_set[i], col_set[j]);
    }
  }
  return out;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> row_set) const {
  FieldMatrix out(row_set.size(), cols_);
  for (std::size_t i = 0; i < row_set.size(); ++i) {
    if (row_set[i] >= rows_) {
      throw Error(ErrorCode::kDimensionMismatch, "row index out of range");
    }
    auto src = row(row_set[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

FieldMatrix FieldMatrix::transposed() const {
  FieldMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

void row_reduce(const Field& f, FieldMatrix& m, std::size_t pivot_cols,
                std::vector<std::size_t>& pivots) {
  pivots.clear();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < pivot_cols && lead < rows; ++c) {
    std::size_t pr = lead;
    while (pr < rows && m(pr, c).is_zero()) ++pr;
    if (pr == rows) continue;
    if (pr != lead) {
      auto a = m.row(pr);
      auto b = m.row(lead);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(lead);
    const FieldElement scale = f.inv(prow[c]);
    for (std::size_t j = c; j < cols; ++j) prow[j] = f.mul(prow[j], scale);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead) continue;
      auto row = m.row(r);
      const FieldElement factor = row[c];
      if (factor.is_zero()) continue;
      for (std::size_t j = c; j < cols; ++j) {
        row[j] = f.sub(row[j], f.mul(factor, prow[j]));
      }
    }
    pivots.push_back(c);
    ++lead;
  }
}

std::vector<std::size_t> row_reduce(const Field& f, FieldMatrix& m,
                                    std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  row_reduce(f, m, pivot_cols, pivots);
  return pivots;
}

namespace {

// Nullspace basis from an RREF over the first n columns: one vector per free
// column, with -R[r][free] at each pivot coordinate.
std::vector<FieldVector> nullspace_from_rref(const Field& f,
                                             const FieldMatrix& rref,
                                             const std::vector<std::size_t>& pivots,
                                             std::size_t n) {
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<FieldVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    FieldVector v(n);
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[pivots[r]] = f.neg(rref(r, free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

SolveOutcome solve(const Field& f, const FieldMatrix& a,
                   std::span<const FieldElement> b) {
  if (a.rows() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "system has " + std::to_string(a.rows()) + " rows but rhs has " +
                    std::to_string(b.size()));
  }
  const std::size_t n = a.cols();
  FieldMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto src = a.row(r);
    std::copy(src.begin(), src.end(), aug.row(r).begin());
    aug(r, n) = b[r];
  }
  const auto pivots = row_reduce(f, aug, n);

  SolveOutcome out;
  out.rank = pivots.size();
  out.consistent = true;
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
    if (!aug(r, n).is_zero()) {
      out.consistent = false;
      break;
    }
  }
  out.nullspace_basis = nullspace_from_rref(f, aug, pivots, n);
  if (out.consistent) {
    FieldVector x(n);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, n);
    out.particular = std::move(x);
  }
  for (std::size_t c = 0; c < n; ++c) {
    const bool free = std::any_of(out.nullspace_basis.begin(),
                                  out.nullspace_basis.end(),
                                  [c](const FieldVector& v) { return !v[c].is_zero(); });
    if (!free) out.pinned_coordinates.push_back(c);
  }
  return out;
}

std::size_t rank(const Field& f, const FieldMatrix& a) {
  FieldMatrix m = a;
  std::vector<std::size_t> pivots;
  row_reduce(f, m, m.cols(), pivots);
  return pivots.size();
}

std::vector<FieldVector> nullspace(const Field& f, const FieldMatrix& a) {
  FieldMatrix m = a;
  const auto pivots = row_reduce(f, m, m.cols());
  return nullspace_from_rref(f, m, pivots, a.cols());
}

FieldVector multiply(const Field& f, const FieldMatrix& a,
                     std::span<const FieldElement> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix-vector size mismatch");
  }
  FieldVector y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    FieldElement acc;
    auto row = a.row(r);
    for (std::size_t c = 0; c < x.size(); ++c) acc = f.add(acc, f.mul(row[c], x[c]));
    y[r] = acc;
  }
  return y;
}

bool submatrix_nonsingular(const Field& f, const FieldMatrix& a,
                           std::span<const std::size_t> row_set,
                           std::span<const std::size_t> col_set) {
  if (row_set.size() != col_set.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "submatrix is not square");
  }
  return rank(f, a.submatrix(row_set, col_set)) == row_set.size();
}

}  // namespace eqlab
