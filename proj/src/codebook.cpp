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

#include "eqlab/codebook.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "eqlab/config.hpp"
#include "eqlab/util.hpp"

namespace eqlab {

std::string_view to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::kRandom: return "random";
    case CodeKind::kSystematic: return "systematic";
    case CodeKind::kReedSolomon: return "reed_solomon";
  }
  return "random";
}

CodeKind code_kind_from_string(std::string_view s) {
  if (s == "random") return CodeKind::kRandom;
  if (s == "systematic") return CodeKind::kSystematic;
  if (s == "reed_solomon") return CodeKind::kReedSolomon;
  throw Error(ErrorCode::kParseError, "unknown code kind '" + std::string(s) + "'");
}

namespace {

void check_dims(std::size_t n, std::size_t k) {
  if (k < 1 || n < k) {
    throw Error(ErrorCode::kBadDimensions,
                "need N >= K >= 1, got N=" + std::to_string(n) +
                    " K=" + std::to_string(k));
  }
}

bool row_is_zero(std::span<const FieldElement> row) {
  return std::all_of(row.begin(), row.end(),
                     [](FieldElement e) { return e.is_zero(); });
}

void fill_random_row(const Field& f, std::span<FieldElement> row, Rng& rng) {
  do {
    for (auto& e : row) e = f.uniform(rng);
  } while (row_is_zero(row));
}

}  // namespace

void validate(const Field& f, const GeneratorMatrix& gm) {
  check_dims(gm.n, gm.k);
  if (gm.g.rows() != gm.n || gm.g.cols() != gm.k) {
    throw Error(ErrorCode::kBadDimensions, "G shape does not match N x K");
  }
  for (std::size_t r = 0; r < gm.n; ++r) {
    if (row_is_zero(gm.g.row(r))) {
      throw Error(ErrorCode::kBadDimensions, "row " + std::to_string(r) + " is zero");
    }
  }
  if (gm.kind == CodeKind::kSystematic) {
    for (std::size_t r = 0; r < gm.k; ++r) {
      for (std::size_t c = 0; c < gm.k; ++c) {
        if (gm.g(r, c).value != (r == c ? 1u : 0u)) {
          throw Error(ErrorCode::kBadDimensions,
                      "systematic code lacks identity prefix at row " +
                          std::to_string(r));
        }
      }
    }
  }
  if (gm.kind == CodeKind::kReedSolomon) {
    if (!gm.rs_points || gm.rs_points->size() != gm.n) {
      throw Error(ErrorCode::kBadDimensions, "reed_solomon code needs N points");
    }
    std::unordered_set<std::uint32_t> seen;
    for (std::size_t r = 0; r < gm.n; ++r) {
      const FieldElement lambda = (*gm.rs_points)[r];
      if (!seen.insert(lambda.value).second) {
        throw Error(ErrorCode::kDuplicatePoints, "repeated evaluation point");
      }
      for (std::size_t c = 0; c < gm.k; ++c) {
        if (gm.g(r, c) != f.pow(lambda, c)) {
          throw Error(ErrorCode::kBadDimensions, "row is not a Vandermonde row");
        }
      }
    }
  }
}

GeneratorMatrix gen_random_linear(const Field& f, std::size_t n, std::size_t k,
                                  std::uint64_t seed) {
  check_dims(n, k);
  Rng rng(seed);
  GeneratorMatrix gm{n, k, FieldMatrix(n, k), CodeKind::kRandom, std::nullopt};
  for (std::size_t r = 0; r < n; ++r) fill_random_row(f, gm.g.row(r), rng);
  return gm;
}

GeneratorMatrix gen_systematic(const Field& f, std::size_t n, std::size_t k,
                               std::uint64_t seed) {
  check_dims(n, k);
  Rng rng(seed);
  GeneratorMatrix gm{n, k, FieldMatrix(n, k), CodeKind::kSystematic, std::nullopt};
  for (std::size_t r = 0; r < k; ++r) gm.g(r, r) = f.one();
  for (std::size_t r = k; r < n; ++r) fill_random_row(f, gm.g.row(r), rng);
  return gm;
}

GeneratorMatrix gen_reed_solomon(const Field& f, std::size_t n, std::size_t k,
                                 std::optional<std::span<const FieldElement>> points,
                                 std::uint64_t seed) {
  check_dims(n, k);
  FieldVector lambdas;
  if (points) {
    if (points->size() != n) {
      throw Error(ErrorCode::kBadDimensions, "need exactly N evaluation points");
    }
    lambdas.assign(points->begin(), points->end());
    std::unordered_set<std::uint32_t> seen;
    for (FieldElement l : lambdas) {
      if (l.value >= f.modulus()) {
        throw Error(ErrorCode::kBadDimensions, "evaluation point not reduced");
      }
      if (!seen.insert(l.value).second) {
        throw Error(ErrorCode::kDuplicatePoints,
                    "evaluation point " + std::to_string(l.value) + " repeats");
      }
    }
  } else {
    if (n > f.modulus()) {
      throw Error(ErrorCode::kBadDimensions, "N exceeds the field size");
    }
    Rng rng(seed);
    std::unordered_set<std::uint32_t> seen;
    while (lambdas.size() < n) {
      FieldElement l = f.uniform(rng);
      if (seen.insert(l.value).second) lambdas.push_back(l);
    }
  }
  GeneratorMatrix gm{n, k, FieldMatrix(n, k), CodeKind::kReedSolomon, lambdas};
  for (std::size_t r = 0; r < n; ++r) {
    FieldElement power = f.one();
    for (std::size_t c = 0; c < k; ++c) {
      gm.g(r, c) = power;
      power = f.mul(power, lambdas[r]);
    }
  }
  return gm;
}

bool is_mds_serial(const Field& f, const GeneratorMatrix& gm) {
  if (gm.n < gm.k) return false;
  std::vector<std::size_t> all_cols(gm.k);
  std::iota(all_cols.begin(), all_cols.end(), std::size_t{0});
  bool ok = true;
  for_each_combination(gm.n, gm.k, [&](const std::vector<std::size_t>& rows) {
    ok = submatrix_nonsingular(f, gm.g, rows, all_cols);
    return ok;
  });
  return ok;
}

bool is_mds(const Field& f, const GeneratorMatrix& gm) {
  if (gm.n < gm.k) return false;
  const auto subsets = combinations(gm.n, gm.k);
  const std::int64_t count = static_cast<std::int64_t>(subsets.size());
  bool ok = true;
#pragma omp parallel
  {
    FieldMatrix scratch;
    std::vector<std::size_t> pivots;
#pragma omp for schedule(static) reduction(&& : ok)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto& rows = subsets[static_cast<std::size_t>(i)];
      scratch.reset(gm.k, gm.k);
      for (std::size_t r = 0; r < gm.k; ++r) {
        auto src = gm.g.row(rows[r]);
        std::copy(src.begin(), src.end(), scratch.row(r).begin());
      }
      row_reduce(f, scratch, gm.k, pivots);
      ok = ok && pivots.size() == gm.k;
    }
  }
  return ok;
}

CodeDraw generate_mds_code(const Field& f, CodeKind kind, std::size_t n,
                           std::size_t k, std::uint64_t seed) {
  for (unsigned attempt = 0; attempt <= kMdsRetries; ++attempt) {
    const std::uint64_t s = seed + attempt;
    GeneratorMatrix gm;
    switch (kind) {
      case CodeKind::kRandom: gm = gen_random_linear(f, n, k, s); break;
      case CodeKind::kSystematic: gm = gen_systematic(f, n, k, s); break;
      case CodeKind::kReedSolomon: gm = gen_reed_solomon(f, n, k, std::nullopt, s); break;
    }
    if (is_mds(f, gm)) return {std::move(gm), s, attempt};
  }
  throw Error(ErrorCode::kMdsRetriesExhausted,
              "no MDS " + std::string(to_string(kind)) + " code after " +
                  std::to_string(kMdsRetries) + " redraws");
}

SupportProfile support_profile(const GeneratorMatrix& gm) {
  SupportProfile sp;
  sp.zero_pattern.resize(gm.k);
  for (std::size_t r = 0; r < gm.n; ++r) {
    std::size_t nonzero = 0;
    for (std::size_t c = 0; c < gm.k; ++c) {
      if (gm.g(r, c).is_zero()) {
        sp.zero_pattern[c].insert(r);
      } else {
        ++nonzero;
      }
    }
    if (nonzero == 1) sp.univariate_rows.insert(r);
  }
  return sp;
}

namespace {

struct SelectionCriteria {
  std::size_t target;          // rows to pick
  std::size_t max_univariate;  // K - 1
  std::size_t max_zero;        // h - 1
};

bool vanishes_on(const GeneratorMatrix& gm, std::size_t row,
                 const std::vector<std::size_t>& cols) {
  return std::all_of(cols.begin(), cols.end(),
                     [&](std::size_t c) { return gm.g(row, c).is_zero(); });
}

std::optional<std::vector<std::size_t>> greedy_rows(
    const GeneratorMatrix& gm, const SupportProfile& sp,
    const std::vector<std::size_t>& cols, const std::vector<std::size_t>& order,
    const SelectionCriteria& crit) {
  std::vector<std::size_t> buckets[4];
  for (std::size_t r : order) {
    const bool zero = vanishes_on(gm, r, cols);
    const bool univariate = sp.univariate_rows.contains(r);
    buckets[(zero ? 2 : 0) + (univariate ? 1 : 0)].push_back(r);
  }
  std::vector<std::size_t> picked;
  std::size_t univ = 0, zeros = 0;
  for (int b = 0; b < 4 && picked.size() < crit.target; ++b) {
    for (std::size_t r : buckets[b]) {
      if (picked.size() == crit.target) break;
      const bool univariate = (b & 1) != 0;
      if (univariate && univ == crit.max_univariate) continue;
      picked.push_back(r);
      univ += univariate;
      zeros += (b >= 2);
    }
  }
  if (picked.size() != crit.target || zeros > crit.max_zero) return std::nullopt;
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

ConverseSelection select_converse_rows_and_columns(
    const GeneratorMatrix& gm, std::size_t beta, std::size_t v,
    std::span<const std::size_t> row_order) {
  if (beta < 1 || beta >= gm.k || gm.n < gm.k || v < 1) {
    throw Error(ErrorCode::kBadDimensions, "selection needs 1 <= beta < K <= N");
  }
  const std::size_t t_star = linear_threshold(gm.n, gm.k, beta, v);
  const SelectionCriteria crit{t_star - 1, gm.k - 1, gm.k - beta - 1};
  const SupportProfile sp = support_profile(gm);

  std::vector<std::size_t> order(row_order.begin(), row_order.end());
  if (order.empty()) {
    order.resize(gm.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  } else if (order.size() != gm.n) {
    throw Error(ErrorCode::kBadDimensions, "row_order must be a permutation of [N]");
  }

  const auto column_sets = combinations(gm.k, beta);
  for (const auto& cols : column_sets) {
    if (auto rows = greedy_rows(gm, sp, cols, order, crit)) {
      return {std::move(*rows), cols};
    }
  }
  // Exhaustive fallback; C(N, t*-1) * C(K, beta) is small at desk scale.
  std::optional<ConverseSelection> found;
  for (const auto& cols : column_sets) {
    for_each_combination(gm.n, crit.target, [&](const std::vector<std::size_t>& rows) {
      std::size_t univ = 0, zeros = 0;
      for (std::size_t r : rows) {
        univ += sp.univariate_rows.contains(r);
        zeros += vanishes_on(gm, r, cols);
      }
      if (univ <= crit.max_univariate && zeros <= crit.max_zero) {
        found = ConverseSelection{rows, cols};
        return false;
      }
      return true;
    });
    if (found) return *found;
  }
  throw Error(ErrorCode::kSelectionImpossible,
              "no " + std::to_string(crit.target) + "-row / " +
                  std::to_string(beta) +
                  "-column selection meets the zero-row bound; the code cannot be MDS");
}

}  // namespace eqlab
