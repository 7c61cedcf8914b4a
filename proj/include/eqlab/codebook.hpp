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

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "eqlab/field.hpp"
#include "eqlab/matrix.hpp"

namespace eqlab {

enum class CodeKind { kRandom, kSystematic, kReedSolomon };

std::string_view to_string(CodeKind kind);
CodeKind code_kind_from_string(std::string_view s);

/// N x K generator: encoder n emits y_n = sum_k G(n, k) * x_{n,k}.
struct GeneratorMatrix {
  std::size_t n = 0;
  std::size_t k = 0;
  FieldMatrix g;
  CodeKind kind = CodeKind::kRandom;
  std::optional<FieldVector> rs_points;

  friend bool operator==(const GeneratorMatrix&, const GeneratorMatrix&) = default;
};

/// Checks the structural invariants for the tagged kind (nonzero rows,
/// identity prefix, Vandermonde shape). Throws kBadDimensions or
/// kDuplicatePoints.
void validate(const Field& f, const GeneratorMatrix& gm);

GeneratorMatrix gen_random_linear(const Field& f, std::size_t n, std::size_t k,
                                  std::uint64_t seed);

GeneratorMatrix gen_systematic(const Field& f, std::size_t n, std::size_t k,
                               std::uint64_t seed);

/// Vandermonde rows (1, l, l^2, ..., l^{K-1}). With no points, N distinct
/// evaluation points are sampled without replacement using `seed`.
GeneratorMatrix gen_reed_solomon(const Field& f, std::size_t n, std::size_t k,
                                 std::optional<std::span<const FieldElement>> points,
                                 std::uint64_t seed = 0);

/// Exhaustive MDS check over all C(N, K) row subsets. OpenMP-parallel.
bool is_mds(const Field& f, const GeneratorMatrix& gm);

/// Serial reference for is_mds, stops at the first singular minor.
bool is_mds_serial(const Field& f, const GeneratorMatrix& gm);

inline constexpr unsigned kMdsRetries = 16;

struct CodeDraw {
  GeneratorMatrix code;
  std::uint64_t seed_used = 0;
  unsigned redraws = 0;
};

/// Generates a code of the requested kind and re-draws with seed+1, seed+2,
/// ... (at most kMdsRetries times) until it is MDS.
CodeDraw generate_mds_code(const Field& f, CodeKind kind, std::size_t n,
                           std::size_t k, std::uint64_t seed);

struct SupportProfile {
  /// Rows with exactly one nonzero entry.
  std::set<std::size_t> univariate_rows;
  /// zero_pattern[c] = rows r with G(r, c) == 0.
  std::vector<std::set<std::size_t>> zero_pattern;
};

SupportProfile support_profile(const GeneratorMatrix& gm);

struct ConverseSelection {
  std::vector<std::size_t> rows;     // t* - 1 encoders, ascending
  std::vector<std::size_t> columns;  // beta source nodes, ascending
};

/// Picks t* - 1 encoder rows containing at most K-1 univariate rows and beta
/// source columns such that at most h-1 of the picked rows vanish on all of
/// those columns. Greedy per column subset (nonzero rows first, univariate
/// rows last), then an exhaustive fallback. `row_order`, when given, is the
/// preference order used by the greedy pass.
ConverseSelection select_converse_rows_and_columns(
    const GeneratorMatrix& gm, std::size_t beta, std::size_t v,
    std::span<const std::size_t> row_order = {});

}  // namespace eqlab
