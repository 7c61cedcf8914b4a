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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqlab/adversary.hpp"
#include "eqlab/experiments.hpp"
#include "eqlab/serialize.hpp"
#include "test_support.hpp"

namespace eqlab {
namespace {

namespace fs = std::filesystem;

const Field kF = Field::create(kDefaultPrime);
constexpr const char* kHeader =
    "N,K,beta,v,kind,t,trials,honest_correct,ambiguous,undetermined,failures,wall_ms,"
    "experiment,scenario_solves\n";

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.cells = {{7, 3, 1, 2}, {5, 3, 1, 1}};
  s.trials = 6;
  s.strict_every = 2;
  s.seed = 99;
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() /
                       ("eqlab_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  fs::create_directories(dir);
  return dir;
}

TEST(Results, EmptyCsvIsHeaderOnly) { EXPECT_EQ(results_csv({}), kHeader); }

TEST(Results, OneCellIsTwoLines) {
  CellResult r;
  r.cell = {9, 3, 1, 2};
  r.t = 5;
  r.trials = 4;
  r.honest_correct = 4;
  EXPECT_EQ(results_csv({r}),
            std::string(kHeader) + "9,3,1,2,random,5,4,4,0,0,0,0,achievability,0\n");
}

TEST(Results, JsonRoundTrip) {
  const auto results = run_sweep(small_spec());
  EXPECT_EQ(results_from_json(results_json(results)), results);
}

TEST(Results, EmitWritesFileAndReportsIoFailure) {
  const auto dir = scratch_dir();
  const auto results = run_sweep(small_spec());
  emit_results(results, OutputFormat::kCsv, (dir / "r.csv").string());
  EXPECT_EQ(slurp(dir / "r.csv"), results_csv(results));
  emit_results(results, OutputFormat::kJson, (dir / "r.json").string());
  EXPECT_EQ(results_from_json(slurp(dir / "r.json")), results);
  try {
    emit_results(results, OutputFormat::kCsv, (dir / "missing" / "x.csv").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoFailure);
  }
  fs::remove_all(dir);
}

TEST(Sweep, RowsAddUpAndFollowGridOrder) {
  const auto spec = small_spec();
  const auto results = run_sweep(spec);
  // Per cell: achievability at t*-1, t*; converse at t*-1, t*.
  ASSERT_EQ(results.size(), 8u);
  for (const auto& r : results) {
    EXPECT_EQ(r.honest_correct + r.ambiguous + r.undetermined + r.failures, r.trials);
    const std::uint64_t per_trial =
        scenario_count(r.cell.k, r.cell.beta, r.cell.v, r.t);
    EXPECT_EQ(r.scenario_solves, per_trial * r.trials);
    const std::size_t t_star = r.cell.config(spec.prime).t_star();
    if (r.t == t_star) {
      EXPECT_EQ(r.honest_correct, r.trials) << results_csv({r});
    }
    if (r.experiment == ExperimentKind::kConverse && r.t + 1 == t_star) {
      EXPECT_EQ(r.ambiguous, r.trials) << results_csv({r});
    }
  }
  EXPECT_EQ(results[0].experiment, ExperimentKind::kAchievability);
  EXPECT_LT(results[0].t, results[1].t);
  EXPECT_EQ(results[2].experiment, ExperimentKind::kConverse);
  EXPECT_EQ(results[4].cell, spec.cells[1]);
}

TEST(Sweep, SeparateRunsMatchCombinedSweep) {
  const auto spec = small_spec();
  const auto all = run_sweep(spec);
  const auto ach = run_achievability(spec);
  const auto conv = run_converse(spec);
  std::vector<CellResult> merged;
  for (std::size_t c = 0; c < 2; ++c) {
    merged.push_back(ach[2 * c]);
    merged.push_back(ach[2 * c + 1]);
    merged.push_back(conv[2 * c]);
    merged.push_back(conv[2 * c + 1]);
  }
  EXPECT_EQ(merged, all);
}

TEST(Sweep, DeterministicBytes) {
  const auto spec = small_spec();
  EXPECT_EQ(results_csv(run_sweep(spec)), results_csv(run_sweep(spec)));
  auto other = spec;
  other.seed = 100;
  EXPECT_NE(run_sweep(other)[0].row_seed, run_sweep(spec)[0].row_seed);
}

TEST(Sweep, BudgetExceededIsRecordedNotFatal) {
  ExperimentSpec s;
  s.cells = {{10, 4, 2, 2}};
  s.trials = 2;
  s.budget = 1000;
  s.converse = false;
  const auto results = run_sweep(s);
  ASSERT_EQ(results.size(), 2u);
  for (const auto& r : results) {
    EXPECT_EQ(r.failures, r.trials);
    EXPECT_EQ(r.note, "BudgetExceeded");
  }
}

TEST(Sweep, AbsoluteTRangeAndSecondRegime) {
  ExperimentSpec s;
  s.cells = {{4, 3, 1, 2}};
  s.kinds = {CodeKind::kSystematic};
  s.t_range = TRange::kAbsolute;
  s.t_values = {3, 4, 9};
  s.trials = 10;
  const auto results = run_sweep(s);
  ASSERT_EQ(results.size(), 4u);
  EXPECT_EQ(results[1].t, 4u);
  EXPECT_EQ(results[1].honest_correct, 10u);
  EXPECT_EQ(results[2].t, 3u);
  EXPECT_EQ(results[2].ambiguous, 10u);
}

TEST(Spec, ValidationAndDefaults) {
  const auto d = ExperimentSpec::default_sweep();
  ASSERT_EQ(d.cells.size(), 4u);
  for (const auto& c : d.cells) {
    EXPECT_EQ(c.n, c.k + 2 * c.beta * (c.v - 1) + 2);
  }
  EXPECT_NO_THROW(d.validate());
  auto bad = d;
  bad.cells.push_back({3, 3, 3, 2});
  EXPECT_THROW(bad.validate(), Error);
  bad = d;
  bad.prime = 101;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Serialize, SpecRoundTrip) {
  auto s = small_spec();
  s.kinds = {CodeKind::kReedSolomon, CodeKind::kSystematic};
  s.t_range = TRange::kAbsolute;
  s.t_values = {4, 5};
  const auto back = experiment_spec_from_json(json::parse(to_json(s).dump()));
  EXPECT_EQ(to_json(back), to_json(s));
  EXPECT_EQ(back.cells, s.cells);
  EXPECT_EQ(back.kinds, s.kinds);
}

TEST(Serialize, CodeBehaviorTranscriptAttackRoundTrip) {
  const SystemConfig cfg{9, 3, 1, 2};
  for (auto kind : {CodeKind::kRandom, CodeKind::kSystematic, CodeKind::kReedSolomon}) {
    const auto gm = generate_mds_code(kF, kind, 9, 3, 5).code;
    Field f = Field::create(65537);
    EXPECT_EQ(code_from_json(json::parse(to_json(gm, kF).dump()), f), gm);
    EXPECT_EQ(f, kF);
    const auto attack = converse_attack(kF, gm, cfg, 4);
    const auto back = attack_from_json(json::parse(to_json(attack).dump()), kF);
    EXPECT_EQ(back.nodes, attack.nodes);
    EXPECT_EQ(back.adversaries, attack.adversaries);
    EXPECT_EQ(back.setup1, attack.setup1);
    EXPECT_EQ(back.setup2, attack.setup2);
    EXPECT_EQ(back.delta, attack.delta);
    EXPECT_EQ(back.w, attack.w);
    EXPECT_EQ(back.config.groups, attack.config.groups);
    EXPECT_EQ(back.config.versions, attack.config.versions);
    EXPECT_TRUE(verify_attack(kF, gm, cfg, back));
    const auto t = encode_transcript(kF, gm, attack.setup1, attack.nodes);
    EXPECT_EQ(transcript_from_json(json::parse(to_json(t).dump()), kF), t);
  }
}

TEST(Serialize, RejectsMalformedInput) {
  EXPECT_THROW(transcript_from_json(json::parse(R"({"node_set":[0,1],"values":[1]})"), kF), Error);
  EXPECT_THROW(transcript_from_json(json::parse(R"({"node_set":[0],"values":[2147483647]})"), kF),
               Error);
  Field f = kF;
  EXPECT_THROW(code_from_json(json::parse(R"({"p":2147483647,"N":2,"K":2,"kind":"random",
                                             "rows":[[1,0],[0,0]]})"), f),
               Error);
  EXPECT_THROW(code_from_json(json::parse(R"({"p":101,"N":1,"K":1,"kind":"random",
                                             "rows":[[1]]})"), f),
               Error);
  EXPECT_THROW(experiment_spec_from_json(json::parse(R"({"cells":[]})")), Error);
  EXPECT_THROW(results_from_json("not json"), Error);
}

TEST(Serialize, DecodeResultShape) {
  const SystemConfig cfg{9, 3, 1, 2};
  const auto gm = generate_mds_code(kF, CodeKind::kRandom, 9, 3, 5).code;
  const auto attack = converse_attack(kF, gm, cfg, 4);
  DecodeOptions strict;
  strict.mode = DecodeMode::kStrict;
  const auto r = decode(kF, gm, encode_transcript(kF, gm, attack.setup1, attack.nodes), cfg, strict);
  const json j = to_json(r);
  EXPECT_EQ(j.at("estimates").size(), 3u);
  EXPECT_TRUE(j.contains("feasible_count"));
  EXPECT_TRUE(j.contains("ambiguity"));
  EXPECT_EQ(j.at("ambiguity").at("coordinate").get<std::size_t>(), r.ambiguity->coordinate);
}

// ---------------------------------------------------------------------------
// Command-line driver.

int run(const std::string& args) {
  const std::string cmd = std::string(EQLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, GenCodeAttackDecodeRoundTrip) {
  const auto dir = scratch_dir();
  const auto code = (dir / "code.json").string();
  const auto attack = (dir / "attack.json").string();
  ASSERT_EQ(run("gen-code -N 9 -K 3 --kind reed_solomon --seed 3 --out " + code), 0);
  Field f = kF;
  const auto gm = code_from_json(json::parse(slurp(code)), f);
  EXPECT_EQ(gm, generate_mds_code(kF, CodeKind::kReedSolomon, 9, 3, 3).code);

  ASSERT_EQ(run("attack --code " + code + " --beta 1 --v 2 --seed 8 --out " + attack), 0);
  const auto a = attack_from_json(json::parse(slurp(attack)), kF);
  const SystemConfig cfg{9, 3, 1, 2};
  EXPECT_TRUE(verify_attack(kF, gm, cfg, a));

  const auto transcript = (dir / "t.json").string();
  {
    std::ofstream os(transcript);
    os << to_json(encode_transcript(kF, gm, a.setup1, a.nodes)).dump();
  }
  const auto out = (dir / "d.json").string();
  ASSERT_EQ(run("decode --code " + code + " --transcript " + transcript +
                " --beta 1 --v 2 --mode strict --out " + out),
            0);
  const json d = json::parse(slurp(out));
  EXPECT_TRUE(d.contains("ambiguity"));
  EXPECT_FALSE(d.at("ambiguous_coordinates").empty());

  ASSERT_EQ(run("decode --code " + code + " --transcript " + transcript +
                " --beta 1 --v 2 --budget 5 --out " + out),
            2);
  fs::remove_all(dir);
}

TEST(Cli, SweepFromSpecFileIsReproducible) {
  const auto dir = scratch_dir();
  const auto spec = (dir / "spec.json").string();
  {
    std::ofstream os(spec);
    os << to_json(small_spec()).dump(2);
  }
  const auto a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  ASSERT_EQ(run("sweep --spec " + spec + " --out " + a), 0);
  ASSERT_EQ(run("sweep --spec " + spec + " --out " + b), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), results_csv(run_sweep(small_spec())));

  const auto j = (dir / "a.json").string();
  ASSERT_EQ(run("sweep --spec " + spec + " --format json --out " + j), 0);
  EXPECT_EQ(results_from_json(slurp(j)), run_sweep(small_spec()));
  fs::remove_all(dir);
}

TEST(Cli, ErrorsExitNonZero) {
  EXPECT_NE(run(""), 0);
  EXPECT_EQ(run("gen-code -N 2 -K 3"), 2);
  EXPECT_EQ(run("gen-code -N 5 -K 3 --prime 101"), 2);
  EXPECT_EQ(run("attack --code /nonexistent.json --beta 1 --v 2"), 2);
  EXPECT_NE(run("sweep --format xml"), 0);
}

}  // namespace
}  // namespace eqlab
