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
#include <vector>

#include "eqlab/codebook.hpp"
#include "eqlab/config.hpp"
#include "eqlab/partitions.hpp"
#include "eqlab/system.hpp"

namespace eqlab {

// Exhaustive feasibility decoding. For every presumed adversary set of size
// beta and every way each presumed adversary could have split the observed
// encoders into at most v version groups, the decoder forms the linear system
//
//   y_n = sum_{k honest} G(n,k) x_k + sum_{k adversary} G(n,k) x_k^(block(n))
//
// and keeps the presumed-honest values of every consistent one. Scenarios are
// ordered by (adversary set in lexicographic order, then the tuple of
// per-adversary partitions in restricted-growth-string order); "first" below
// always means first in that order.

enum class DecodeMode {
  kFast,    // first feasible scenario that pins a coordinate writes it
  kStrict,  // additionally checks every feasible scenario for disagreement
};

inline constexpr std::uint64_t kDefaultScenarioBudget = 100'000'000;

struct DecodeOptions {
  DecodeMode mode = DecodeMode::kFast;
  std::uint64_t budget = kDefaultScenarioBudget;
  /// Keep one explicit solution per feasible scenario (tests and debugging).
  bool collect_solutions = false;
};

struct PresumedScenario {
  std::vector<std::size_t> presumed_adversaries;  // ascending, size beta
  std::vector<SetPartition> partitions;           // one per presumed adversary

  friend bool operator==(const PresumedScenario&, const PresumedScenario&) = default;
};

/// One concrete solution of a feasible scenario.
struct FeasibleSolution {
  PresumedScenario scenario;
  /// Entry k is set iff k is presumed honest.
  std::vector<std::optional<FieldElement>> honest_values;
  /// adversary_versions[j][b]: value of block b for presumed adversary j.
  std::vector<FieldVector> adversary_versions;
};

/// Two feasible solutions that disagree on a coordinate presumed honest in
/// both. They may come from the same scenario when its system leaves that
/// coordinate free.
struct Ambiguity {
  std::size_t coordinate = 0;
  FeasibleSolution first;
  FeasibleSolution second;
};

struct DecodeResult {
  std::vector<std::optional<FieldElement>> estimates;  // nullopt is "bottom"
  std::uint64_t feasible_count = 0;
  std::uint64_t scenarios_solved = 0;
  /// Strict mode only: coordinates with more than one feasible value.
  std::vector<std::size_t> ambiguous_coordinates;
  /// Strict mode only: witness for the smallest ambiguous coordinate.
  std::optional<Ambiguity> ambiguity;
  /// Populated when DecodeOptions::collect_solutions is set.
  std::vector<FeasibleSolution> solutions;
};

/// C(K, beta) * (sum_{j<=v} S(t, j))^beta, saturating.
std::uint64_t scenario_count(std::size_t k, std::size_t beta, std::size_t v,
                             std::size_t t);

/// OpenMP-parallel decoder. Output is identical to decode_serial for any
/// thread count.
DecodeResult decode(const Field& f, const GeneratorMatrix& gm,
                    const Transcript& transcript, const SystemConfig& cfg,
                    const DecodeOptions& options = {});

/// Single-threaded reference with plain nested loops.
DecodeResult decode_serial(const Field& f, const GeneratorMatrix& gm,
                           const Transcript& transcript, const SystemConfig& cfg,
                           const DecodeOptions& options = {});

/// Rebuilds the per-encoder assignments a solution implies on the transcript's
/// nodes; encoders outside the transcript receive the first version.
SourceBehavior reconstruct_behavior(const FeasibleSolution& solution,
                                    const Transcript& transcript,
                                    const SystemConfig& cfg);

enum class EstimateStatus { kCorrect, kBottom, kWrong, kAdversarial };

struct TruthReport {
  std::vector<EstimateStatus> status;          // per source
  std::vector<std::size_t> failures;           // honest sources wrong or bottom
  std::vector<std::size_t> wrong;              // honest sources decoded wrongly
  std::vector<std::size_t> undetermined;       // honest sources left at bottom
  std::vector<std::size_t> honest_ambiguous;   // strict-mode ambiguity on honest sources

  bool ok() const { return failures.empty() && honest_ambiguous.empty(); }
};

/// Grades a decode against the ground truth carried by `behavior`. Estimates
/// for adversarial sources are never graded.
TruthReport verify_against_truth(const DecodeResult& result,
                                 const SourceBehavior& behavior);

// ---------------------------------------------------------------------------
// Enumeration oracle. Each feasible scenario's solution set, projected onto
// the presumed-honest coordinates, is an affine subspace; ProjectedSpace is
// its canonical form (reduced offset plus RREF direction rows).

struct ProjectedSpace {
  std::vector<std::size_t> presumed_adversaries;
  FieldVector offset;
  std::vector<FieldVector> directions;

  friend auto operator<=>(const ProjectedSpace&, const ProjectedSpace&) = default;
};

enum class PartitionEnumeration {
  kUnlabeled,  // restricted growth strings, at most v blocks (what decode uses)
  kLabeled,    // all v^t maps from encoders to version labels, empty labels dropped
};

std::set<ProjectedSpace> feasible_projections(const Field& f, const GeneratorMatrix& gm,
                                              const Transcript& transcript,
                                              const SystemConfig& cfg,
                                              PartitionEnumeration enumeration);

}  // namespace eqlab
