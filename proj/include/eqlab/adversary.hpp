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
#include <utility>
#include <vector>

#include "eqlab/codebook.hpp"
#include "eqlab/config.hpp"
#include "eqlab/matrix.hpp"
#include "eqlab/system.hpp"

namespace eqlab {

/// Spanning set for the v^2 differences c(i,j) = a_i - b_j between two
/// v-element sets. The basis holds the 2v-1 pairs (i,i) and (i,i+1);
/// every other pair is a telescoping +/-1 combination of them. Indices are
/// zero-based.
struct DiffBasis {
  std::size_t v = 0;
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  /// decomposition[i * v + j][b] is the coefficient of basis[b] in c(i,j).
  std::vector<std::vector<int>> decomposition;

  const std::vector<int>& coefficients(std::size_t i, std::size_t j) const {
    return decomposition[i * v + j];
  }
};

DiffBasis diff_basis(std::size_t v);

/// Row blocks R_1..R_g of an E matrix, each holding E-row indices.
struct RowPartition {
  std::vector<std::vector<std::size_t>> blocks;
  bool exchange_repaired = false;
};

/// Splits the t-1 = h + 2*beta*v - beta - 1 rows of E (t-1 x beta) into
/// R_1 of size h+beta-1 and 2v-2 blocks of size beta, each of full rank.
/// Blocks R_2.. are peeled greedily from the first h+beta remaining rows; the
/// leftover R_1 is fixed by a single row exchange with R_2 when it is rank
/// deficient. Throws kPreconditionViolated naming the failed property when E
/// is not full rank, has more than h-1 zero rows, or has a rank-deficient
/// (h+beta)-row submatrix.
RowPartition partition_full_rank(const Field& f, const FieldMatrix& e,
                                 std::size_t h, std::size_t beta, std::size_t v);

/// Same procedure for an explicit list of block sizes (sizes[0] is R_1). The
/// last block may be shorter than beta; it is then required to have full row
/// rank. Used when only N-1 < t*-1 encoders exist.
RowPartition partition_full_rank_sized(const Field& f, const FieldMatrix& e,
                                       std::size_t h, std::size_t beta,
                                       const std::vector<std::size_t>& sizes);

/// Group layout of the attack on t*-1 encoders. Group g (zero-based) receives
/// version x^(x_version) in setup 1 and z^(z_version) in setup 2:
/// g = 2i -> (i, i), g = 2i+1 -> (i+1, i).
struct ConverseConfiguration {
  std::vector<std::size_t> group_sizes;
  std::vector<std::vector<std::size_t>> groups;  // encoder ids
  std::vector<std::pair<std::size_t, std::size_t>> versions;
};

/// Block sizes for t-1 rows: h+beta-1, then beta per block, last one partial.
std::vector<std::size_t> converse_group_sizes(std::size_t rows, std::size_t h,
                                              std::size_t beta);

/// Two complete source behaviors that produce the same coded symbols on
/// `nodes` while disagreeing on at least one honest message. Encoders outside
/// `nodes` receive the first version of each adversarial message.
struct AttackInstance {
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> adversaries;
  SourceBehavior setup1;
  SourceBehavior setup2;
  FieldVector delta;  // per honest source, ascending source order
  FieldMatrix w;      // groups x beta; w(g, j) = z - x for adversary j in group g
  ConverseConfiguration config;
};

AttackInstance converse_attack(const Field& f, const GeneratorMatrix& gm,
                               const SystemConfig& cfg, std::uint64_t seed);

/// Independent re-check: equal transcripts on `nodes`, delta nonzero and
/// equal to the honest-message shift, and every row within the model bounds.
bool verify_attack(const Field& f, const GeneratorMatrix& gm,
                   const SystemConfig& cfg, const AttackInstance& attack);

/// Encoders in [N] not used by the attack, ascending.
std::vector<std::size_t> unused_encoders(const AttackInstance& attack, std::size_t n);

}  // namespace eqlab
