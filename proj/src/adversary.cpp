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

#include "eqlab/adversary.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "eqlab/util.hpp"

namespace eqlab {

DiffBasis diff_basis(std::size_t v) {
  if (v < 1) throw Error(ErrorCode::kBadDimensions, "v must be at least 1");
  DiffBasis db;
  db.v = v;
  // Layout: (0,0),(1,1),...,(v-1,v-1), then (0,1),(1,2),...,(v-2,v-1).
  for (std::size_t i = 0; i < v; ++i) db.basis.emplace_back(i, i);
  for (std::size_t i = 0; i + 1 < v; ++i) db.basis.emplace_back(i, i + 1);
  auto diag = [](std::size_t i) { return i; };
  auto super = [v](std::size_t i) { return v + i; };  // (i, i+1)

  db.decomposition.assign(v * v, std::vector<int>(db.basis.size(), 0));
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      auto& coeff = db.decomposition[i * v + j];
      if (j == i) {
        coeff[diag(i)] = 1;
      } else if (j == i + 1) {
        coeff[super(i)] = 1;
      } else if (j > i) {
        // a_i - b_j = sum_{m=i}^{j-1} (a_m - b_{m+1}) - sum_{m=i+1}^{j-1} (a_m - b_m)
        for (std::size_t m = i; m < j; ++m) coeff[super(m)] += 1;
        for (std::size_t m = i + 1; m < j; ++m) coeff[diag(m)] -= 1;
      } else {
        // a_i - b_j = sum_{m=j}^{i} (a_m - b_m) - sum_{m=j}^{i-1} (a_m - b_{m+1})
        for (std::size_t m = j; m <= i; ++m) coeff[diag(m)] += 1;
        for (std::size_t m = j; m < i; ++m) coeff[super(m)] -= 1;
      }
    }
  }
  return db;
}

namespace {

[[noreturn]] void precondition(int property, const std::string& what) {
  throw Error(ErrorCode::kPreconditionViolated,
              "property " + std::to_string(property) + ": " + what);
}

std::size_t rank_of_rows(const Field& f, const FieldMatrix& e,
                         const std::vector<std::size_t>& rows) {
  return rank(f, e.select_rows(rows));
}

void check_partition_preconditions(const Field& f, const FieldMatrix& e, std::size_t h,
                            std::size_t beta) {
  if (rank(f, e) != beta) precondition(1, "E is not of full column rank");
  std::size_t zero_rows = 0;
  for (std::size_t r = 0; r < e.rows(); ++r) {
    auto row = e.row(r);
    zero_rows += std::all_of(row.begin(), row.end(), [](FieldElement x) { return x.is_zero(); });
  }
  if (zero_rows + 1 > h) {
    precondition(2, std::to_string(zero_rows) + " zero rows, at most " +
                        std::to_string(h - 1) + " allowed");
  }
  bool ok = true;
  for_each_combination(e.rows(), h + beta, [&](const std::vector<std::size_t>& rows) {
    ok = rank_of_rows(f, e, rows) == beta;
    return ok;
  });
  if (!ok) precondition(3, "some (h+beta)-row submatrix is rank deficient");
}

// Greedily collects `want` rows, in order, that keep the running set
// independent.
std::vector<std::size_t> independent_prefix(const Field& f, const FieldMatrix& e,
                                            const std::vector<std::size_t>& candidates,
                                            std::size_t want) {
  std::vector<std::size_t> picked;
  for (std::size_t r : candidates) {
    if (picked.size() == want) break;
    picked.push_back(r);
    if (rank_of_rows(f, e, picked) != picked.size()) picked.pop_back();
  }
  return picked;
}

}  // namespace

std::vector<std::size_t> converse_group_sizes(std::size_t rows, std::size_t h,
                                              std::size_t beta) {
  std::vector<std::size_t> sizes;
  const std::size_t first = h + beta - 1;
  if (rows < first) {
    throw Error(ErrorCode::kBadDimensions,
                "need at least h+beta-1 = " + std::to_string(first) + " rows");
  }
  sizes.push_back(first);
  for (std::size_t left = rows - first; left > 0;) {
    const std::size_t s = std::min(beta, left);
    sizes.push_back(s);
    left -= s;
  }
  return sizes;
}

RowPartition partition_full_rank_sized(const Field& f, const FieldMatrix& e,
                                       std::size_t h, std::size_t beta,
                                       const std::vector<std::size_t>& sizes) {
  if (h < 1 || beta < 1 || e.cols() != beta || sizes.empty() ||
      sizes[0] != h + beta - 1 ||
      std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) != e.rows()) {
    throw Error(ErrorCode::kBadDimensions, "block sizes do not match E");
  }
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] == 0 || sizes[i] > beta || (sizes[i] < beta && i + 1 != sizes.size())) {
      throw Error(ErrorCode::kBadDimensions, "only the last block may be short");
    }
  }
  check_partition_preconditions(f, e, h, beta);

  std::vector<std::size_t> remaining(e.rows());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  RowPartition out;
  out.blocks.resize(sizes.size());
  for (std::size_t b = 1; b < sizes.size(); ++b) {
    const std::size_t window = std::min(h + beta, remaining.size());
    std::vector<std::size_t> head(remaining.begin(),
                                  remaining.begin() + static_cast<std::ptrdiff_t>(window));
    auto picked = independent_prefix(f, e, head, sizes[b]);
    if (picked.size() != sizes[b]) precondition(3, "no independent rows in window");
    for (std::size_t r : picked) std::erase(remaining, r);
    out.blocks[b] = std::move(picked);
  }
  out.blocks[0] = remaining;

  if (rank_of_rows(f, e, out.blocks[0]) < beta) {
    // The leftover has rank beta-1. Swap one of its nonzero rows r* outside an
    // independent (beta-1)-subset with a row r^ of R_2 such that r* is not in
    // the span of the other rows of R_2.
    if (out.blocks.size() < 2 || out.blocks[1].size() != beta) {
      precondition(1, "leftover block is rank deficient and no full block to exchange with");
    }
    auto& r1 = out.blocks[0];
    auto& r2 = out.blocks[1];
    const auto basis = independent_prefix(f, e, r1, beta);
    std::optional<std::size_t> r_star;
    for (std::size_t r : r1) {
      auto row = e.row(r);
      const bool nonzero = std::any_of(row.begin(), row.end(), [](FieldElement x) { return !x.is_zero(); });
      if (nonzero && std::find(basis.begin(), basis.end(), r) == basis.end()) {
        r_star = r;
        break;
      }
    }
    if (!r_star) precondition(2, "leftover block has no spare nonzero row");
    bool swapped = false;
    for (std::size_t& r_hat : r2) {
      std::vector<std::size_t> rest;
      for (std::size_t r : r2) {
        if (r != r_hat) rest.push_back(r);
      }
      rest.push_back(*r_star);
      if (rank_of_rows(f, e, rest) == beta) {
        std::replace(r1.begin(), r1.end(), *r_star, r_hat);
        r_hat = *r_star;
        swapped = true;
        break;
      }
    }
    if (!swapped) precondition(3, "no exchange partner in R_2");
    std::sort(r1.begin(), r1.end());
    std::sort(r2.begin(), r2.end());
    out.exchange_repaired = true;
  }
  for (std::size_t b = 0; b < out.blocks.size(); ++b) {
    const std::size_t want = std::min(out.blocks[b].size(), beta);
    if (rank_of_rows(f, e, out.blocks[b]) != want) {
      precondition(3, "block " + std::to_string(b) + " is rank deficient after repair");
    }
  }
  return out;
}

RowPartition partition_full_rank(const Field& f, const FieldMatrix& e,
                                 std::size_t h, std::size_t beta, std::size_t v) {
  if (v < 1 || e.rows() != h + 2 * beta * v - beta - 1) {
    throw Error(ErrorCode::kBadDimensions,
                "E must have h + 2*beta*v - beta - 1 rows");
  }
  return partition_full_rank_sized(f, e, h, beta, converse_group_sizes(e.rows(), h, beta));
}

namespace {

struct AttackCore {
  ConverseSelection selection;
  ConverseConfiguration config;
  FieldVector null_vector;  // [w_0; w_1; ...; delta]
};

AttackCore build_attack_core(const Field& f, const GeneratorMatrix& gm,
                             const SystemConfig& cfg,
                             std::span<const std::size_t> row_order) {
  const std::size_t h = cfg.honest_count();
  const std::size_t beta = cfg.beta;
  AttackCore core;
  core.selection = select_converse_rows_and_columns(gm, beta, cfg.v, row_order);
  const auto& rows = core.selection.rows;
  const auto& adv = core.selection.columns;

  const FieldMatrix e = gm.g.submatrix(rows, adv);
  const auto sizes = converse_group_sizes(rows.size(), h, beta);
  const RowPartition part = partition_full_rank_sized(f, e, h, beta, sizes);

  core.config.group_sizes = sizes;
  for (std::size_t g = 0; g < part.blocks.size(); ++g) {
    std::vector<std::size_t> encoders;
    for (std::size_t r : part.blocks[g]) encoders.push_back(rows[r]);
    core.config.groups.push_back(std::move(encoders));
    core.config.versions.emplace_back(g % 2 == 0 ? g / 2 : g / 2 + 1, g / 2);
  }

  std::vector<std::size_t> honest;
  for (std::size_t k = 0; k < cfg.k; ++k) {
    if (std::find(adv.begin(), adv.end(), k) == adv.end()) honest.push_back(k);
  }
  const std::size_t groups = core.config.groups.size();
  const std::size_t w_cols = groups * beta;
  FieldMatrix b(rows.size(), w_cols + h);
  std::size_t r = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t n : core.config.groups[g]) {
      for (std::size_t j = 0; j < beta; ++j) b(r, g * beta + j) = gm.g(n, adv[j]);
      for (std::size_t i = 0; i < h; ++i) b(r, w_cols + i) = gm.g(n, honest[i]);
      ++r;
    }
  }
  for (const auto& nv : nullspace(f, b)) {
    const bool moves_honest = std::any_of(nv.begin() + static_cast<std::ptrdiff_t>(w_cols), nv.end(),
                                          [](FieldElement x) { return !x.is_zero(); });
    if (moves_honest) {
      core.null_vector = nv;
      return core;
    }
  }
  throw Error(ErrorCode::kNullspaceDeltaZero,
              "every nullspace vector of B leaves the honest messages fixed");
}

}  // namespace

AttackInstance converse_attack(const Field& f, const GeneratorMatrix& gm,
                               const SystemConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (gm.n != cfg.n || gm.k != cfg.k) {
    throw Error(ErrorCode::kDimensionMismatch, "code shape does not match config");
  }
  constexpr unsigned kSelectionAttempts = 8;
  std::optional<AttackCore> core;
  std::string last_error;
  for (unsigned attempt = 0; attempt <= kSelectionAttempts && !core; ++attempt) {
    std::vector<std::size_t> order;
    if (attempt > 0) {
      Rng shuffle_rng(derive_seed(seed, attempt));
      order.resize(cfg.n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), shuffle_rng);
    }
    try {
      core = build_attack_core(f, gm, cfg, order);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kPreconditionViolated &&
          err.code() != ErrorCode::kNullspaceDeltaZero) {
        throw;
      }
      last_error = err.what();
    }
  }
  if (!core) {
    throw Error(ErrorCode::kAttackConstructionFailed,
                "no selection yielded an attack; last error: " + last_error);
  }

  const std::size_t beta = cfg.beta;
  const auto& adv = core->selection.columns;
  const std::size_t groups = core->config.groups.size();
  const std::size_t w_cols = groups * beta;

  AttackInstance attack;
  attack.adversaries = adv;
  attack.config = core->config;
  for (const auto& g : attack.config.groups) {
    attack.nodes.insert(attack.nodes.end(), g.begin(), g.end());
  }
  attack.w = FieldMatrix(groups, beta);
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t j = 0; j < beta; ++j) attack.w(g, j) = core->null_vector[g * beta + j];
  }
  attack.delta.assign(core->null_vector.begin() + static_cast<std::ptrdiff_t>(w_cols),
                      core->null_vector.end());

  Rng rng(seed);
  const std::size_t versions = (groups + 2) / 2;
  attack.setup1 = SourceBehavior(cfg.k, cfg.n, adv);
  attack.setup2 = SourceBehavior(cfg.k, cfg.n, adv);
  for (std::size_t k = 0, i = 0; k < cfg.k; ++k) {
    if (std::find(adv.begin(), adv.end(), k) != adv.end()) continue;
    const FieldElement x = f.uniform(rng);
    const FieldElement z = f.add(x, attack.delta[i++]);
    for (std::size_t n = 0; n < cfg.n; ++n) {
      attack.setup1.at(k, n) = x;
      attack.setup2.at(k, n) = z;
    }
  }
  for (std::size_t j = 0; j < beta; ++j) {
    // Walk the version chain: z^(i) = x^(i) + w_{2i}, x^(i+1) = z^(i) - w_{2i+1}.
    FieldVector xs(versions), zs(versions);
    xs[0] = f.uniform(rng);
    for (std::size_t g = 0; g < groups; ++g) {
      const auto [xv, zv] = attack.config.versions[g];
      if (g % 2 == 0) {
        zs[zv] = f.add(xs[xv], attack.w(g, j));
      } else {
        xs[xv] = f.sub(zs[zv], attack.w(g, j));
      }
    }
    const std::size_t k = adv[j];
    for (std::size_t n = 0; n < cfg.n; ++n) {
      attack.setup1.at(k, n) = xs[0];
      attack.setup2.at(k, n) = zs[0];
    }
    for (std::size_t g = 0; g < groups; ++g) {
      const auto [xv, zv] = attack.config.versions[g];
      for (std::size_t n : attack.config.groups[g]) {
        attack.setup1.at(k, n) = xs[xv];
        attack.setup2.at(k, n) = zs[zv];
      }
    }
  }
  if (!verify_attack(f, gm, cfg, attack)) {
    throw Error(ErrorCode::kAttackConstructionFailed,
                "constructed setups failed re-verification");
  }
  return attack;
}

bool verify_attack(const Field& f, const GeneratorMatrix& gm, const SystemConfig& cfg,
                   const AttackInstance& attack) {
  try {
    attack.setup1.validate(cfg);
    attack.setup2.validate(cfg);
    if (attack.setup1.adversary_set() != attack.adversaries ||
        attack.setup2.adversary_set() != attack.adversaries) {
      return false;
    }
    if (encode_transcript(f, gm, attack.setup1, attack.nodes) !=
        encode_transcript(f, gm, attack.setup2, attack.nodes)) {
      return false;
    }
  } catch (const Error&) {
    return false;
  }
  if (std::all_of(attack.delta.begin(), attack.delta.end(),
                  [](FieldElement d) { return d.is_zero(); })) {
    return false;
  }
  std::size_t i = 0;
  for (std::size_t k = 0; k < cfg.k; ++k) {
    if (attack.setup1.is_adversary(k)) continue;
    if (i >= attack.delta.size()) return false;
    const FieldElement shift =
        f.sub(attack.setup2.honest_message(k), attack.setup1.honest_message(k));
    if (shift != attack.delta[i++]) return false;
  }
  return i == attack.delta.size();
}

std::vector<std::size_t> unused_encoders(const AttackInstance& attack, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < n; ++e) {
    if (std::find(attack.nodes.begin(), attack.nodes.end(), e) == attack.nodes.end()) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace eqlab
