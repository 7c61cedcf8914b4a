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
#include <string>
#include <string_view>
#include <vector>

#include "eqlab/codebook.hpp"
#include "eqlab/config.hpp"
#include "eqlab/decoder.hpp"

namespace eqlab {

struct GridCell {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t beta = 0;
  std::size_t v = 1;

  SystemConfig config(std::uint32_t prime) const { return {n, k, beta, v, prime}; }
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

enum class TRange { kRelative, kAbsolute };
enum class ExperimentKind { kAchievability, kConverse };

std::string_view to_string(ExperimentKind kind);

struct ExperimentSpec {
  std::vector<GridCell> cells;
  /// t values, either offsets from t* or absolute encoder counts.
  TRange t_range = TRange::kRelative;
  std::vector<long> t_values{-1, 0};
  std::vector<CodeKind> kinds{CodeKind::kRandom};
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultScenarioBudget;
  std::uint32_t prime = kDefaultPrime;
  bool achievability = true;
  bool converse = true;
  /// Achievability trials with index % strict_every == 0 also run strict mode.
  std::size_t strict_every = 10;
  /// When false, wall_ms is written as 0.
  bool record_wall_time = false;

  void validate() const;
  /// t values for a cell, resolved and filtered to 1 <= t <= N, ascending.
  std::vector<std::size_t> resolve_t(const GridCell& cell) const;

  /// (K, beta, v) in {(3,1,2), (4,1,2), (3,1,3), (4,2,2)} with N = t* + 2,
  /// random codes, t in {t*-1, t*}.
  static ExperimentSpec default_sweep();
};

struct CellResult {
  GridCell cell;
  CodeKind kind = CodeKind::kRandom;
  std::size_t t = 0;
  ExperimentKind experiment = ExperimentKind::kAchievability;
  std::size_t trials = 0;
  std::size_t honest_correct = 0;
  std::size_t ambiguous = 0;
  std::size_t undetermined = 0;
  std::size_t failures = 0;
  std::uint64_t scenario_solves = 0;
  std::uint64_t wall_ms = 0;
  std::uint64_t row_seed = 0;
  std::string note;

  friend bool operator==(const CellResult&, const CellResult&) = default;
};

/// Random-adversary trials on random t-subsets; fast decode every trial,
/// strict decode every `strict_every`-th trial.
std::vector<CellResult> run_achievability(const ExperimentSpec& spec);

/// Constructed attacks: at t = t*-1 strict-decodes the attack transcript, at
/// t = t* strict-decodes it extended by one unused encoder. Other t values
/// are skipped.
std::vector<CellResult> run_converse(const ExperimentSpec& spec);

/// Both experiments, in grid order (cell, kind, experiment, t).
std::vector<CellResult> run_sweep(const ExperimentSpec& spec);

enum class OutputFormat { kCsv, kJson };
OutputFormat output_format_from_string(std::string_view s);

std::string results_csv(const std::vector<CellResult>& results);
std::string results_json(const std::vector<CellResult>& results);
std::vector<CellResult> results_from_json(std::string_view text);

/// Writes results to `path`; throws kIoFailure when it cannot.
void emit_results(const std::vector<CellResult>& results, OutputFormat format,
                  const std::string& path);

}  // namespace eqlab
