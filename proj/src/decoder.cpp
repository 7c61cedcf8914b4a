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

#include "eqlab/decoder.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include <omp.h>

#include "eqlab/util.hpp"

namespace eqlab {

std::uint64_t scenario_count(std::size_t k, std::size_t beta, std::size_t v,
                             std::size_t t) {
  const std::uint64_t sets = binomial(k, beta);
  const std::uint64_t parts = partition_count(t, v);
  unsigned __int128 total = sets;
  for (std::size_t i = 0; i < beta; ++i) {
    total *= parts;
    if (total > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

namespace {

void check_inputs(const GeneratorMatrix& gm, const Transcript& transcript,
                  const SystemConfig& cfg) {
  cfg.validate();
  if (gm.n != cfg.n || gm.k != cfg.k) {
    throw Error(ErrorCode::kDimensionMismatch, "code shape does not match config");
  }
  if (cfg.k > 64) {
    throw Error(ErrorCode::kBadDimensions, "decoder supports at most 64 sources");
  }
  if (transcript.nodes.empty() || transcript.nodes.size() != transcript.values.size()) {
    throw Error(ErrorCode::kTranscriptMismatch,
                "transcript has " + std::to_string(transcript.nodes.size()) +
                    " nodes and " + std::to_string(transcript.values.size()) + " values");
  }
  std::unordered_set<std::size_t> seen;
  for (std::size_t n : transcript.nodes) {
    if (n >= gm.n || !seen.insert(n).second) {
      throw Error(ErrorCode::kTranscriptMismatch,
                  "transcript node " + std::to_string(n) + " is out of range or repeated");
    }
  }
}

struct ScenarioSpace {
  std::vector<std::vector<std::size_t>> adversary_sets;
  std::vector<SetPartition> partitions;
  std::size_t beta = 0;
  std::uint64_t per_set = 1;  // partitions.size()^beta
  std::uint64_t total = 0;

  ScenarioSpace(const SystemConfig& cfg, std::size_t t, std::uint64_t budget)
      : beta(cfg.beta) {
    total = scenario_count(cfg.k, cfg.beta, cfg.v, t);
    if (total > budget) {
      throw Error(ErrorCode::kBudgetExceeded,
                  std::to_string(total) + " scenarios exceed the budget of " +
                      std::to_string(budget));
    }
    adversary_sets = combinations(cfg.k, cfg.beta);
    partitions = enumerate_partitions(t, cfg.v);
    for (std::size_t i = 0; i < beta; ++i) per_set *= partitions.size();
  }

  // Inverse of the scenario order: adversary set major, first adversary's
  // partition most significant.
  void decode_order(std::uint64_t order, std::size_t& adv_idx,
                    std::vector<std::size_t>& part_idx) const {
    adv_idx = static_cast<std::size_t>(order / per_set);
    std::uint64_t rem = order % per_set;
    part_idx.resize(beta);
    for (std::size_t j = beta; j-- > 0;) {
      part_idx[j] = static_cast<std::size_t>(rem % partitions.size());
      rem /= partitions.size();
    }
  }

  PresumedScenario scenario(std::uint64_t order) const {
    std::size_t a;
    std::vector<std::size_t> idx;
    decode_order(order, a, idx);
    PresumedScenario s{adversary_sets[a], {}};
    for (std::size_t i : idx) s.partitions.push_back(partitions[i]);
    return s;
  }
};

struct ScenarioRecord {
  std::uint64_t order = 0;
  std::uint64_t presumed_honest_mask = 0;
  std::uint64_t pinned_mask = 0;  // subset of presumed_honest_mask
  FieldVector values;             // particular solution, per source
};

// Builds and reduces the linear system of a single scenario. Variables are the
// presumed-honest sources in ascending order followed by one variable per
// nonempty block of each presumed adversary. Scratch space is reused across
// calls.
class ScenarioSolver {
 public:
  ScenarioSolver(const Field& f, const GeneratorMatrix& gm, const Transcript& tr)
      : f_(f), gm_(gm), tr_(tr) {}

  bool evaluate(const std::vector<std::size_t>& adversaries,
                const std::vector<const SetPartition*>& parts, ScenarioRecord& out) {
    const std::size_t vars = build(adversaries, parts);
    const std::size_t t = tr_.nodes.size();
    row_reduce(f_, m_, vars, pivots_);
    for (std::size_t r = pivots_.size(); r < t; ++r) {
      if (!m_(r, vars).is_zero()) return false;
    }
    // A pivot variable is pinned iff its row has no entry in a free column.
    free_cols_.clear();
    for (std::size_t c = 0, p = 0; c < vars; ++c) {
      if (p < pivots_.size() && pivots_[p] == c) {
        ++p;
      } else {
        free_cols_.push_back(c);
      }
    }
    out.values.assign(gm_.k, FieldElement{});
    out.presumed_honest_mask = 0;
    out.pinned_mask = 0;
    for (std::size_t source : honest_) out.presumed_honest_mask |= 1ull << source;
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      const std::size_t c = pivots_[r];
      if (c >= honest_.size()) break;
      out.values[honest_[c]] = m_(r, vars);
      const bool pinned = std::all_of(free_cols_.begin(), free_cols_.end(),
                                      [&](std::size_t fc) { return m_(r, fc).is_zero(); });
      if (pinned) out.pinned_mask |= 1ull << honest_[c];
    }
    return true;
  }

  /// Full solve through the generic routine; used off the hot path.
  SolveOutcome solve_full(const std::vector<std::size_t>& adversaries,
                          const std::vector<const SetPartition*>& parts) {
    const std::size_t vars = build(adversaries, parts);
    FieldMatrix a(m_.rows(), vars);
    FieldVector b(m_.rows());
    for (std::size_t r = 0; r < m_.rows(); ++r) {
      for (std::size_t c = 0; c < vars; ++c) a(r, c) = m_(r, c);
      b[r] = m_(r, vars);
    }
    return solve(f_, a, b);
  }

  /// Column of source k's variable, valid after build (k presumed honest).
  std::size_t honest_column(std::size_t source) const {
    return static_cast<std::size_t>(
        std::find(honest_.begin(), honest_.end(), source) - honest_.begin());
  }

  FeasibleSolution to_solution(const PresumedScenario& scenario,
                               const FieldVector& vars) const {
    FeasibleSolution s{scenario, std::vector<std::optional<FieldElement>>(gm_.k), {}};
    for (std::size_t i = 0; i < honest_.size(); ++i) s.honest_values[honest_[i]] = vars[i];
    std::size_t offset = honest_.size();
    for (const auto& p : scenario.partitions) {
      s.adversary_versions.emplace_back(vars.begin() + static_cast<std::ptrdiff_t>(offset),
                                        vars.begin() + static_cast<std::ptrdiff_t>(offset + p.block_count));
      offset += p.block_count;
    }
    return s;
  }

 private:
  std::size_t build(const std::vector<std::size_t>& adversaries,
                    const std::vector<const SetPartition*>& parts) {
    honest_.clear();
    for (std::size_t k = 0, a = 0; k < gm_.k; ++k) {
      if (a < adversaries.size() && adversaries[a] == k) {
        ++a;
      } else {
        honest_.push_back(k);
      }
    }
    std::size_t vars = honest_.size();
    for (const SetPartition* p : parts) vars += p->block_count;
    const std::size_t t = tr_.nodes.size();
    m_.reset(t, vars + 1);
    for (std::size_t i = 0; i < t; ++i) {
      const std::size_t node = tr_.nodes[i];
      auto row = m_.row(i);
      for (std::size_t c = 0; c < honest_.size(); ++c) row[c] = gm_.g(node, honest_[c]);
      std::size_t offset = honest_.size();
      for (std::size_t j = 0; j < adversaries.size(); ++j) {
        row[offset + parts[j]->labels[i]] = gm_.g(node, adversaries[j]);
        offset += parts[j]->block_count;
      }
      row[vars] = tr_.values[i];
    }
    return vars;
  }

  const Field& f_;
  const GeneratorMatrix& gm_;
  const Transcript& tr_;
  FieldMatrix m_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_cols_;
  std::vector<std::size_t> honest_;
};

std::vector<const SetPartition*> partition_refs(const ScenarioSpace& space,
                                                const std::vector<std::size_t>& idx) {
  std::vector<const SetPartition*> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(&space.partitions[i]);
  return out;
}

FeasibleSolution explicit_solution(ScenarioSolver& solver, const ScenarioSpace& space,
                                   std::uint64_t order, const FieldVector* vars_override,
                                   SolveOutcome* outcome_out = nullptr) {
  std::size_t a;
  std::vector<std::size_t> idx;
  space.decode_order(order, a, idx);
  SolveOutcome out = solver.solve_full(space.adversary_sets[a], partition_refs(space, idx));
  const FieldVector vars = vars_override ? *vars_override : *out.particular;
  if (outcome_out) *outcome_out = out;
  return solver.to_solution(space.scenario(order), vars);
}

// Second solution of a scenario whose value at `source` is free: particular
// plus a nullspace vector that moves that coordinate.
std::pair<FeasibleSolution, FeasibleSolution> free_witness(
    const Field& f, ScenarioSolver& solver, const ScenarioSpace& space,
    std::uint64_t order, std::size_t source) {
  SolveOutcome out;
  FeasibleSolution first = explicit_solution(solver, space, order, nullptr, &out);
  const std::size_t col = solver.honest_column(source);
  FieldVector shifted = *out.particular;
  for (const auto& nv : out.nullspace_basis) {
    if (!nv[col].is_zero()) {
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = f.add(shifted[i], nv[i]);
      break;
    }
  }
  FeasibleSolution second = explicit_solution(solver, space, order, &shifted);
  return {std::move(first), std::move(second)};
}

// Applies the write-once rule and, in strict mode, the cross-scenario
// agreement check to records sorted by scenario order.
DecodeResult finalize(const Field& f, const GeneratorMatrix& gm, const Transcript& tr,
                      const ScenarioSpace& space, std::vector<ScenarioRecord>& records,
                      const DecodeOptions& options) {
  std::sort(records.begin(), records.end(),
            [](const ScenarioRecord& a, const ScenarioRecord& b) { return a.order < b.order; });
  DecodeResult result;
  result.estimates.assign(gm.k, std::nullopt);
  result.feasible_count = records.size();
  result.scenarios_solved = space.total;
  for (const auto& rec : records) {
    for (std::size_t k = 0; k < gm.k; ++k) {
      if ((rec.pinned_mask >> k & 1) && !result.estimates[k]) {
        result.estimates[k] = rec.values[k];
      }
    }
  }
  ScenarioSolver solver(f, gm, tr);
  if (options.mode == DecodeMode::kStrict) {
    for (std::size_t k = 0; k < gm.k; ++k) {
      const ScenarioRecord* anchor = nullptr;
      for (const auto& rec : records) {
        if (!(rec.presumed_honest_mask >> k & 1)) continue;
        const bool pinned = rec.pinned_mask >> k & 1;
        if (!anchor) {
          if (pinned) {
            anchor = &rec;
            continue;
          }
          result.ambiguous_coordinates.push_back(k);
          if (!result.ambiguity) {
            auto [a, b] = free_witness(f, solver, space, rec.order, k);
            result.ambiguity = Ambiguity{k, std::move(a), std::move(b)};
          }
          break;
        }
        if (!pinned || rec.values[k] != anchor->values[k]) {
          result.ambiguous_coordinates.push_back(k);
          if (!result.ambiguity) {
            FeasibleSolution a = explicit_solution(solver, space, anchor->order, nullptr);
            FeasibleSolution b;
            if (pinned) {
              b = explicit_solution(solver, space, rec.order, nullptr);
            } else {
              // Pick whichever of two solutions of `rec` differs from the anchor.
              auto [p, q] = free_witness(f, solver, space, rec.order, k);
              b = (*p.honest_values[k] != anchor->values[k]) ? std::move(p) : std::move(q);
            }
            result.ambiguity = Ambiguity{k, std::move(a), std::move(b)};
          }
          break;
        }
      }
    }
  }
  if (options.collect_solutions) {
    for (const auto& rec : records) {
      result.solutions.push_back(explicit_solution(solver, space, rec.order, nullptr));
    }
  }
  return result;
}

}  // namespace

DecodeResult decode(const Field& f, const GeneratorMatrix& gm,
                    const Transcript& transcript, const SystemConfig& cfg,
                    const DecodeOptions& options) {
  check_inputs(gm, transcript, cfg);
  const ScenarioSpace space(cfg, transcript.nodes.size(), options.budget);
  const std::int64_t total = static_cast<std::int64_t>(space.total);

  std::vector<std::vector<ScenarioRecord>> per_thread(
      static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
    ScenarioSolver solver(f, gm, transcript);
    ScenarioRecord rec;
    std::size_t adv_idx = 0;
    std::vector<std::size_t> part_idx;
    std::vector<const SetPartition*> parts(cfg.beta);
#pragma omp for schedule(dynamic, 512)
    for (std::int64_t order = 0; order < total; ++order) {
      space.decode_order(static_cast<std::uint64_t>(order), adv_idx, part_idx);
      for (std::size_t j = 0; j < cfg.beta; ++j) parts[j] = &space.partitions[part_idx[j]];
      if (solver.evaluate(space.adversary_sets[adv_idx], parts, rec)) {
        rec.order = static_cast<std::uint64_t>(order);
        local.push_back(rec);
      }
    }
  }
  std::vector<ScenarioRecord> records;
  for (auto& v : per_thread) {
    records.insert(records.end(), std::make_move_iterator(v.begin()),
                   std::make_move_iterator(v.end()));
  }
  return finalize(f, gm, transcript, space, records, options);
}

DecodeResult decode_serial(const Field& f, const GeneratorMatrix& gm,
                           const Transcript& transcript, const SystemConfig& cfg,
                           const DecodeOptions& options) {
  check_inputs(gm, transcript, cfg);
  const ScenarioSpace space(cfg, transcript.nodes.size(), options.budget);
  ScenarioSolver solver(f, gm, transcript);
  std::vector<ScenarioRecord> records;
  std::uint64_t order = 0;
  std::vector<std::size_t> digits(cfg.beta, 0);
  const std::size_t radix = space.partitions.size();
  for (const auto& adversaries : space.adversary_sets) {
    // Odometer over the beta-tuple of partitions, last digit fastest.
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      ScenarioRecord rec;
      if (solver.evaluate(adversaries, partition_refs(space, digits), rec)) {
        rec.order = order;
        records.push_back(std::move(rec));
      }
      ++order;
      std::size_t j = cfg.beta;
      while (j > 0 && ++digits[j - 1] == radix) digits[--j] = 0;
      if (j == 0) break;
    }
  }
  return finalize(f, gm, transcript, space, records, options);
}

SourceBehavior reconstruct_behavior(const FeasibleSolution& solution,
                                    const Transcript& transcript,
                                    const SystemConfig& cfg) {
  SourceBehavior b(cfg.k, cfg.n, solution.scenario.presumed_adversaries);
  for (std::size_t k = 0; k < cfg.k; ++k) {
    if (solution.honest_values[k]) {
      for (std::size_t n = 0; n < cfg.n; ++n) b.at(k, n) = *solution.honest_values[k];
    }
  }
  for (std::size_t j = 0; j < solution.scenario.presumed_adversaries.size(); ++j) {
    const std::size_t k = solution.scenario.presumed_adversaries[j];
    const auto& labels = solution.scenario.partitions[j].labels;
    const auto& versions = solution.adversary_versions[j];
    for (std::size_t n = 0; n < cfg.n; ++n) b.at(k, n) = versions[0];
    for (std::size_t i = 0; i < transcript.nodes.size(); ++i) {
      b.at(k, transcript.nodes[i]) = versions[labels[i]];
    }
  }
  return b;
}

TruthReport verify_against_truth(const DecodeResult& result,
                                 const SourceBehavior& behavior) {
  TruthReport report;
  report.status.resize(behavior.sources());
  for (std::size_t k = 0; k < behavior.sources(); ++k) {
    if (behavior.is_adversary(k)) {
      report.status[k] = EstimateStatus::kAdversarial;
      continue;
    }
    const auto& est = result.estimates.at(k);
    if (!est) {
      report.status[k] = EstimateStatus::kBottom;
      report.undetermined.push_back(k);
      report.failures.push_back(k);
    } else if (*est != behavior.honest_message(k)) {
      report.status[k] = EstimateStatus::kWrong;
      report.wrong.push_back(k);
      report.failures.push_back(k);
    } else {
      report.status[k] = EstimateStatus::kCorrect;
    }
  }
  for (std::size_t k : result.ambiguous_coordinates) {
    if (!behavior.is_adversary(k)) report.honest_ambiguous.push_back(k);
  }
  return report;
}

namespace {

ProjectedSpace project(const Field& f, const SolveOutcome& out,
                       const std::vector<std::size_t>& adversaries, std::size_t h) {
  ProjectedSpace ps;
  ps.presumed_adversaries = adversaries;
  ps.offset.assign(out.particular->begin(),
                   out.particular->begin() + static_cast<std::ptrdiff_t>(h));
  if (!out.nullspace_basis.empty() && h > 0) {
    FieldMatrix dirs(out.nullspace_basis.size(), h);
    for (std::size_t i = 0; i < out.nullspace_basis.size(); ++i) {
      for (std::size_t c = 0; c < h; ++c) dirs(i, c) = out.nullspace_basis[i][c];
    }
    const auto pivots = row_reduce(f, dirs, h);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      FieldVector row(dirs.row(r).begin(), dirs.row(r).end());
      const FieldElement coeff = ps.offset[pivots[r]];
      for (std::size_t c = 0; c < h; ++c) {
        ps.offset[c] = f.sub(ps.offset[c], f.mul(coeff, row[c]));
      }
      ps.directions.push_back(std::move(row));
    }
  }
  return ps;
}

// Turns a labeling with possibly empty or out-of-order labels into the
// partition it induces.
SetPartition canonicalize(const std::vector<std::uint8_t>& labels) {
  std::vector<int> remap(256, -1);
  SetPartition p;
  p.labels.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (remap[labels[i]] < 0) remap[labels[i]] = static_cast<int>(p.block_count++);
    p.labels[i] = static_cast<std::uint8_t>(remap[labels[i]]);
  }
  return p;
}

}  // namespace

std::set<ProjectedSpace> feasible_projections(const Field& f, const GeneratorMatrix& gm,
                                              const Transcript& transcript,
                                              const SystemConfig& cfg,
                                              PartitionEnumeration enumeration) {
  check_inputs(gm, transcript, cfg);
  const std::size_t t = transcript.nodes.size();
  std::vector<SetPartition> options;
  if (enumeration == PartitionEnumeration::kUnlabeled) {
    options = enumerate_partitions(t, cfg.v);
  } else {
    // Every function from the t encoders to v labels, v^t of them.
    std::vector<std::uint8_t> labels(t, 0);
    while (true) {
      options.push_back(canonicalize(labels));
      std::size_t i = t;
      while (i > 0 && ++labels[i - 1] == cfg.v) labels[--i] = 0;
      if (i == 0) break;
    }
  }
  std::set<ProjectedSpace> out;
  ScenarioSolver solver(f, gm, transcript);
  std::vector<std::size_t> digits(cfg.beta, 0);
  std::vector<const SetPartition*> parts(cfg.beta);
  for (const auto& adversaries : combinations(cfg.k, cfg.beta)) {
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      for (std::size_t j = 0; j < cfg.beta; ++j) parts[j] = &options[digits[j]];
      SolveOutcome sol = solver.solve_full(adversaries, parts);
      if (sol.consistent) out.insert(project(f, sol, adversaries, cfg.honest_count()));
      std::size_t j = cfg.beta;
      while (j > 0 && ++digits[j - 1] == options.size()) digits[--j] = 0;
      if (j == 0) break;
    }
  }
  return out;
}

}  // namespace eqlab
