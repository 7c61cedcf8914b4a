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

#include "eqlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "eqlab/adversary.hpp"
#include "eqlab/serialize.hpp"
#include "eqlab/util.hpp"

namespace eqlab {

std::string_view to_string(ExperimentKind kind) {
  return kind == ExperimentKind::kAchievability ? "achievability" : "converse";
}

void ExperimentSpec::validate() const {
  if (cells.empty()) throw Error(ErrorCode::kInvalidConfig, "spec has no grid cells");
  if (kinds.empty()) throw Error(ErrorCode::kInvalidConfig, "spec has no code kinds");
  if (t_values.empty()) throw Error(ErrorCode::kInvalidConfig, "spec has no t values");
  if (trials == 0) throw Error(ErrorCode::kInvalidConfig, "trials must be positive");
  if (strict_every == 0) throw Error(ErrorCode::kInvalidConfig, "strict_every must be positive");
  for (const auto& c : cells) c.config(prime).validate();
  (void)Field::create(prime);
}

std::vector<std::size_t> ExperimentSpec::resolve_t(const GridCell& cell) const {
  const long t_star = static_cast<long>(linear_threshold(cell.n, cell.k, cell.beta, cell.v));
  std::set<std::size_t> out;
  for (long t : t_values) {
    const long resolved = t_range == TRange::kRelative ? t_star + t : t;
    if (resolved >= 1 && resolved <= static_cast<long>(cell.n)) {
      out.insert(static_cast<std::size_t>(resolved));
    }
  }
  return {out.begin(), out.end()};
}

ExperimentSpec ExperimentSpec::default_sweep() {
  ExperimentSpec s;
  for (auto [k, beta, v] : {std::array<std::size_t, 3>{3, 1, 2}, {4, 1, 2}, {3, 1, 3}, {4, 2, 2}}) {
    s.cells.push_back({linear_threshold(1000, k, beta, v) + 2, k, beta, v});
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

struct RowContext {
  const ExperimentSpec& spec;
  Field field;
  SystemConfig cfg;
  CodeKind kind;
  std::uint64_t code_seed;
};

CellResult empty_row(const RowContext& ctx, const GridCell& cell, std::size_t t,
                     ExperimentKind experiment, std::uint64_t row_seed) {
  CellResult r;
  r.cell = cell;
  r.kind = ctx.kind;
  r.t = t;
  r.experiment = experiment;
  r.trials = ctx.spec.trials;
  r.row_seed = row_seed;
  return r;
}

void tally(CellResult& row, const TruthReport& report) {
  if (!report.honest_ambiguous.empty()) {
    ++row.ambiguous;
  } else if (!report.wrong.empty()) {
    ++row.failures;
  } else if (!report.undetermined.empty()) {
    ++row.undetermined;
  } else {
    ++row.honest_correct;
  }
}

CellResult achievability_row(const RowContext& ctx, const GeneratorMatrix& code,
                             const GridCell& cell, std::size_t t, std::uint64_t row_seed) {
  CellResult row = empty_row(ctx, cell, t, ExperimentKind::kAchievability, row_seed);
  const auto start = Clock::now();
  try {
    for (std::size_t trial = 0; trial < ctx.spec.trials; ++trial) {
      Rng rng(derive_seed(row_seed, trial));
      const auto adversaries = random_subset(cell.k, cell.beta, rng);
      FieldVector messages(cell.k);
      for (auto& m : messages) m = ctx.field.uniform(rng);
      const std::uint64_t behavior_seed = rng();
      const auto nodes = random_subset(cell.n, t, rng);
      const SourceBehavior behavior = behavior_random_adversarial(
          ctx.field, ctx.cfg, messages, adversaries, behavior_seed);
      const Transcript transcript = encode_transcript(ctx.field, code, behavior, nodes);
      DecodeOptions opts;
      opts.budget = ctx.spec.budget;
      opts.mode = trial % ctx.spec.strict_every == 0 ? DecodeMode::kStrict : DecodeMode::kFast;
      const DecodeResult result = decode(ctx.field, code, transcript, ctx.cfg, opts);
      row.scenario_solves += result.scenarios_solved;
      tally(row, verify_against_truth(result, behavior));
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kBudgetExceeded) throw;
    row.honest_correct = row.ambiguous = row.undetermined = 0;
    row.failures = row.trials;
    row.scenario_solves = 0;
    row.note = std::string(to_string(err.code()));
  }
  if (ctx.spec.record_wall_time) {
    row.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
  }
  return row;
}

CellResult converse_row(const RowContext& ctx, const GeneratorMatrix& code,
                        const GridCell& cell, std::size_t t, std::uint64_t row_seed) {
  CellResult row = empty_row(ctx, cell, t, ExperimentKind::kConverse, row_seed);
  const std::size_t t_star = ctx.cfg.t_star();
  const bool extended = t == t_star;
  const auto start = Clock::now();
  try {
    for (std::size_t trial = 0; trial < ctx.spec.trials; ++trial) {
      const std::uint64_t trial_seed = derive_seed(row_seed, trial);
      AttackInstance attack;
      try {
        attack = converse_attack(ctx.field, code, ctx.cfg, trial_seed);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::kBudgetExceeded) throw;
        ++row.failures;
        if (row.note.empty()) row.note = std::string(to_string(err.code()));
        continue;
      }
      if (!verify_attack(ctx.field, code, ctx.cfg, attack)) {
        ++row.failures;
        continue;
      }
      std::vector<std::size_t> nodes = attack.nodes;
      if (extended) {
        const auto spare = unused_encoders(attack, cell.n);
        Rng rng(trial_seed ^ 0x5eedull);
        std::uniform_int_distribution<std::size_t> pick(0, spare.size() - 1);
        nodes.push_back(spare[pick(rng)]);
      }
      const Transcript transcript = encode_transcript(ctx.field, code, attack.setup1, nodes);
      DecodeOptions opts;
      opts.budget = ctx.spec.budget;
      opts.mode = DecodeMode::kStrict;
      const DecodeResult result = decode(ctx.field, code, transcript, ctx.cfg, opts);
      row.scenario_solves += result.scenarios_solved;
      tally(row, verify_against_truth(result, attack.setup1));
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kBudgetExceeded) throw;
    row.honest_correct = row.ambiguous = row.undetermined = 0;
    row.failures = row.trials;
    row.scenario_solves = 0;
    row.note = std::string(to_string(err.code()));
  }
  if (ctx.spec.record_wall_time) {
    row.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
  }
  return row;
}

// Grid driver shared by the three entry points. Seeds depend only on grid
// position.
std::vector<CellResult> run_grid(const ExperimentSpec& spec, bool achievability,
                                 bool converse) {
  spec.validate();
  const Field field = Field::create(spec.prime);
  std::vector<CellResult> out;
  for (std::size_t ci = 0; ci < spec.cells.size(); ++ci) {
    const GridCell& cell = spec.cells[ci];
    const SystemConfig cfg = cell.config(spec.prime);
    const auto ts = spec.resolve_t(cell);
    for (std::size_t ki = 0; ki < spec.kinds.size(); ++ki) {
      const std::uint64_t cell_key = (ci << 8) | ki;
      RowContext ctx{spec, field, cfg, spec.kinds[ki], derive_seed(spec.seed, cell_key)};
      const CodeDraw draw = generate_mds_code(field, ctx.kind, cell.n, cell.k, ctx.code_seed);
      for (int e = 0; e < 2; ++e) {
        const auto experiment = e == 0 ? ExperimentKind::kAchievability : ExperimentKind::kConverse;
        if (experiment == ExperimentKind::kAchievability && !achievability) continue;
        if (experiment == ExperimentKind::kConverse && !converse) continue;
        for (std::size_t t : ts) {
          const std::uint64_t row_seed =
              derive_seed(spec.seed, (cell_key << 24) | (std::uint64_t(e) << 16) | t);
          if (experiment == ExperimentKind::kAchievability) {
            out.push_back(achievability_row(ctx, draw.code, cell, t, row_seed));
          } else if (t + 1 == cfg.t_star() || t == cfg.t_star()) {
            out.push_back(converse_row(ctx, draw.code, cell, t, row_seed));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<CellResult> run_achievability(const ExperimentSpec& spec) {
  return run_grid(spec, true, false);
}

std::vector<CellResult> run_converse(const ExperimentSpec& spec) {
  return run_grid(spec, false, true);
}

std::vector<CellResult> run_sweep(const ExperimentSpec& spec) {
  return run_grid(spec, spec.achievability, spec.converse);
}

OutputFormat output_format_from_string(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw Error(ErrorCode::kParseError, "unknown format '" + std::string(s) + "'");
}

std::string results_csv(const std::vector<CellResult>& results) {
  std::ostringstream os;
  os << "N,K,beta,v,kind,t,trials,honest_correct,ambiguous,undetermined,failures,"
        "wall_ms,experiment,scenario_solves\n";
  for (const auto& r : results) {
    os << r.cell.n << ',' << r.cell.k << ',' << r.cell.beta << ',' << r.cell.v << ','
       << to_string(r.kind) << ',' << r.t << ',' << r.trials << ',' << r.honest_correct
       << ',' << r.ambiguous << ',' << r.undetermined << ',' << r.failures << ','
       << r.wall_ms << ',' << to_string(r.experiment) << ',' << r.scenario_solves << '\n';
  }
  return os.str();
}

std::string results_json(const std::vector<CellResult>& results) {
  json arr = json::array();
  for (const auto& r : results) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<CellResult> results_from_json(std::string_view text) {
  std::vector<CellResult> out;
  try {
    for (const auto& j : json::parse(text)) out.push_back(cell_result_from_json(j));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return out;
}

void emit_results(const std::vector<CellResult>& results, OutputFormat format,
                  const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::kIoFailure, "cannot open '" + path + "' for writing");
  os << (format == OutputFormat::kCsv ? results_csv(results) : results_json(results));
  os.flush();
  if (!os) throw Error(ErrorCode::kIoFailure, "write to '" + path + "' failed");
}

}  // namespace eqlab
