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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "eqlab/field.hpp"

namespace eqlab {

/// Dense row-major matrix over GF(p).
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Builds from raw integers; entries must already be reduced mod p.
  static FieldMatrix from_rows(
      std::initializer_list<std::initializer_list<std::uint32_t>> rows);
  static FieldMatrix from_rows(const std::vector<FieldVector>& rows);
  static FieldMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  FieldElement& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  FieldElement operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<FieldElement> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const FieldElement> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  FieldVector column(std::size_t c) const;

  /// Reshapes to rows x cols and zero-fills, reusing capacity.
  void reset(std::size_t rows, std::size_t cols);

  FieldMatrix submatrix(std::span<const std::size_t> row_set,
                        std::span<const std::size_t> col_set) const;
  FieldMatrix select_rows(std::span<const std::size_t> row_set) const;
  FieldMatrix transposed() const;

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

struct SolveOutcome {
  bool consistent = false;
  std::optional<FieldVector> particular;
  std::vector<FieldVector> nullspace_basis;
  /// Columns whose value is the same in every solution, ascending.
  std::vector<std::size_t> pinned_coordinates;
  std::size_t rank = 0;
};

/// Reduces m to reduced row echelon form in place, pivoting only on the first
/// `pivot_cols` columns (trailing columns ride along, e.g. an augmented rhs).
/// Pivot choice is the first nonzero entry in column order. Returns the pivot
/// column of each leading row; rows past the returned size are zero within
/// the pivot range.
std::vector<std::size_t> row_reduce(const Field& f, FieldMatrix& m,
                                    std::size_t pivot_cols);

/// Allocation-free variant for hot loops: `pivots` is cleared and refilled.
void row_reduce(const Field& f, FieldMatrix& m, std::size_t pivot_cols,
                std::vector<std::size_t>& pivots);

SolveOutcome solve(const Field& f, const FieldMatrix& a,
                   std::span<const FieldElement> b);

std::size_t rank(const Field& f, const FieldMatrix& a);

/// Basis of {x : a x = 0}; size cols - rank.
std::vector<FieldVector> nullspace(const Field& f, const FieldMatrix& a);

FieldVector multiply(const Field& f, const FieldMatrix& a,
                     std::span<const FieldElement> x);

bool submatrix_nonsingular(const Field& f, const FieldMatrix& a,
                           std::span<const std::size_t> row_set,
                           std::span<const std::size_t> col_set);

}  // namespace eqlab
