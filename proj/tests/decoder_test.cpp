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
#include <omp.h>

#include <map>

#include "eqlab/codebook.hpp"
#include "eqlab/decoder.hpp"
#include "eqlab/error.hpp"
#include "test_support.hpp"

namespace eqlab {
namespace {

const Field kF = Field::create(kDefaultPrime);

struct Instance {
  SystemConfig cfg;
  GeneratorMatrix code;
  SourceBehavior behavior;
  Transcript transcript;
};

Instance random_instance(const SystemConfig& cfg, std::size_t t, std::uint64_t seed,
                         CodeKind kind = CodeKind::kRandom) {
  Rng rng(seed);
  Instance in{cfg, generate_mds_code(kF, kind, cfg.n, cfg.k, rng()).code, {}, {}};
  const auto adv = random_subset(cfg.k, cfg.beta, rng);
  in.behavior = behavior_random_adversarial(kF, cfg, testing::random_vector(kF, cfg.k, rng),
                                            adv, rng());
  in.transcript = encode_transcript(kF, in.code, in.behavior, random_subset(cfg.n, t, rng));
  return in;
}

void expect_same(const DecodeResult& a, const DecodeResult& b) {
  EXPECT_EQ(a.estimates, b.estimates);
  EXPECT_EQ(a.feasible_count, b.feasible_count);
  EXPECT_EQ(a.scenarios_solved, b.scenarios_solved);
  EXPECT_EQ(a.ambiguous_coordinates, b.ambiguous_coordinates);
  ASSERT_EQ(a.ambiguity.has_value(), b.ambiguity.has_value());
  if (a.ambiguity) {
    EXPECT_EQ(a.ambiguity->coordinate, b.ambiguity->coordinate);
    EXPECT_EQ(a.ambiguity->first.scenario, b.ambiguity->first.scenario);
    EXPECT_EQ(a.ambiguity->second.scenario, b.ambiguity->second.scenario);
    EXPECT_EQ(a.ambiguity->first.honest_values, b.ambiguity->first.honest_values);
    EXPECT_EQ(a.ambiguity->second.honest_values, b.ambiguity->second.honest_values);
  }
  ASSERT_EQ(a.solutions.size(), b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i) {
    EXPECT_EQ(a.solutions[i].scenario, b.solutions[i].scenario);
    EXPECT_EQ(a.solutions[i].honest_values, b.solutions[i].honest_values);
    EXPECT_EQ(a.solutions[i].adversary_versions, b.solutions[i].adversary_versions);
  }
}

TEST(ScenarioCount, Examples) {
  EXPECT_EQ(scenario_count(3, 1, 2, 5), 3u * 16u);
  EXPECT_EQ(scenario_count(4, 2, 2, 8), 6u * 128u * 128u);
  EXPECT_EQ(scenario_count(3, 1, 1, 7), 3u);
  EXPECT_EQ(scenario_count(3, 1, 3, 4), 3u * 14u);
}

TEST(Decode, HonestBehaviorAtKRecoversAllMessages) {
  const SystemConfig cfg{6, 3, 1, 2};
  const auto gm = generate_mds_code(kF, CodeKind::kRandom, 6, 3, 4).code;
  const auto msgs = testing::fv({7, 8, 9});
  const std::vector<std::size_t> nodes{1, 3, 5};
  const auto t = encode_transcript(kF, gm, behavior_honest(cfg, msgs), nodes);
  const auto r = decode(kF, gm, t, cfg);
  for (std::size_t k = 0; k < 3; ++k) {
    ASSERT_TRUE(r.estimates[k].has_value());
    EXPECT_EQ(*r.estimates[k], msgs[k]);
  }
}

TEST(Decode, AtThresholdRecoversHonestMessages) {
  for (auto [n, k, beta, v] : {std::array<std::size_t, 4>{9, 3, 1, 2}, {10, 4, 1, 2},
                               {11, 3, 1, 3}, {9, 3, 2, 2}, {5, 3, 1, 1}}) {
    const SystemConfig cfg{n, k, beta, v};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto in = random_instance(cfg, cfg.t_star(), seed * 31 + n);
      DecodeOptions opts;
      opts.mode = DecodeMode::kStrict;
      const auto r = decode(kF, in.code, in.transcript, cfg, opts);
      const auto report = verify_against_truth(r, in.behavior);
      EXPECT_TRUE(report.ok()) << n << k << beta << v << " seed " << seed;
      EXPECT_TRUE(report.honest_ambiguous.empty());
    }
  }
}

TEST(Decode, ParallelMatchesSerialAcrossThreadCounts) {
  const int saved = omp_get_max_threads();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SystemConfig cfg = seed % 2 ? SystemConfig{8, 3, 1, 2} : SystemConfig{8, 4, 2, 2};
    const std::size_t t = 3 + seed % 4;
    const auto in = random_instance(cfg, t, seed);
    for (auto mode : {DecodeMode::kFast, DecodeMode::kStrict}) {
      DecodeOptions opts;
      opts.mode = mode;
      opts.collect_solutions = seed % 3 == 0;
      const auto serial = decode_serial(kF, in.code, in.transcript, cfg, opts);
      for (int threads : {1, 3, 8}) {
        omp_set_num_threads(threads);
        expect_same(decode(kF, in.code, in.transcript, cfg, opts), serial);
      }
    }
  }
  omp_set_num_threads(saved);
}

TEST(Decode, SolvesEveryScenario) {
  const SystemConfig cfg{9, 3, 1, 2};
  const auto in = random_instance(cfg, 5, 2);
  const auto r = decode(kF, in.code, in.transcript, cfg);
  EXPECT_EQ(r.scenarios_solved, scenario_count(3, 1, 2, 5));
  EXPECT_GE(r.feasible_count, 1u);
}

TEST(Decode, SoundnessEveryFeasibleSolutionReencodes) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SystemConfig cfg = seed % 2 ? SystemConfig{7, 3, 1, 3} : SystemConfig{8, 4, 2, 2};
    const auto in = random_instance(cfg, 2 + seed % 5, seed + 100);
    DecodeOptions opts;
    opts.collect_solutions = true;
    const auto r = decode(kF, in.code, in.transcript, cfg, opts);
    EXPECT_EQ(r.solutions.size(), r.feasible_count);
    for (const auto& s : r.solutions) {
      const auto b = reconstruct_behavior(s, in.transcript, cfg);
      EXPECT_NO_THROW(b.validate(cfg));
      EXPECT_EQ(encode_transcript(kF, in.code, b, in.transcript.nodes), in.transcript);
    }
  }
}

PresumedScenario true_scenario(const Instance& in) {
  std::vector<std::size_t> adv = in.behavior.adversary_set();
  for (std::size_t k = 0; adv.size() < in.cfg.beta; ++k) {
    if (std::find(adv.begin(), adv.end(), k) == adv.end()) adv.push_back(k);
  }
  std::sort(adv.begin(), adv.end());
  PresumedScenario s{adv, {}};
  for (std::size_t k : adv) {
    SetPartition p;
    std::map<std::uint32_t, std::uint8_t> label;
    for (std::size_t n : in.transcript.nodes) {
      auto [it, fresh] = label.try_emplace(in.behavior.at(k, n).value,
                                           static_cast<std::uint8_t>(label.size()));
      p.labels.push_back(it->second);
    }
    p.block_count = label.size();
    s.partitions.push_back(p);
  }
  return s;
}

TEST(Decode, CompletenessTrueScenarioIsFeasible) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SystemConfig cfg = seed % 2 ? SystemConfig{7, 3, 1, 3} : SystemConfig{8, 4, 2, 2};
    const auto in = random_instance(cfg, 2 + seed % 5, seed + 200);
    DecodeOptions opts;
    opts.collect_solutions = true;
    const auto r = decode(kF, in.code, in.transcript, cfg, opts);
    const auto truth = true_scenario(in);
    const bool found = std::any_of(r.solutions.begin(), r.solutions.end(),
                                   [&](const FeasibleSolution& s) { return s.scenario == truth; });
    EXPECT_TRUE(found) << seed;
  }
}

TEST(Decode, FastEstimatesWrittenByFirstPinningScenario) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SystemConfig cfg{8, 3, 1, 2};
    const auto in = random_instance(cfg, 3 + seed % 3, seed + 300);
    DecodeOptions opts;
    opts.mode = DecodeMode::kStrict;
    opts.collect_solutions = true;
    const auto r = decode(kF, in.code, in.transcript, cfg, opts);
    const auto fast = decode(kF, in.code, in.transcript, cfg);
    EXPECT_EQ(fast.estimates, r.estimates);
    for (std::size_t k = 0; k < cfg.k; ++k) {
      if (!fast.estimates[k]) continue;
      // The written value is the value of some feasible solution presuming k honest.
      const bool witnessed = std::any_of(r.solutions.begin(), r.solutions.end(),
                                         [&](const FeasibleSolution& s) {
                                           return s.honest_values[k] == fast.estimates[k];
                                         });
      EXPECT_TRUE(witnessed);
    }
  }
}

TEST(Decode, StrictAmbiguityWitnessDisagrees) {
  // Below K symbols every honest coordinate is free.
  const SystemConfig cfg{6, 3, 1, 2};
  const auto in = random_instance(cfg, 2, 9);
  DecodeOptions opts;
  opts.mode = DecodeMode::kStrict;
  const auto r = decode(kF, in.code, in.transcript, cfg, opts);
  ASSERT_TRUE(r.ambiguity.has_value());
  const auto& a = *r.ambiguity;
  EXPECT_EQ(a.coordinate, r.ambiguous_coordinates.front());
  ASSERT_TRUE(a.first.honest_values[a.coordinate].has_value());
  ASSERT_TRUE(a.second.honest_values[a.coordinate].has_value());
  EXPECT_NE(*a.first.honest_values[a.coordinate], *a.second.honest_values[a.coordinate]);
  for (const auto* s : {&a.first, &a.second}) {
    const auto b = reconstruct_behavior(*s, in.transcript, cfg);
    EXPECT_EQ(encode_transcript(kF, in.code, b, in.transcript.nodes), in.transcript);
  }
}

TEST(Decode, BudgetExceeded) {
  const SystemConfig cfg{12, 4, 2, 2};
  const auto in = random_instance(cfg, 8, 1);
  DecodeOptions opts;
  opts.budget = scenario_count(4, 2, 2, 8) - 1;
  try {
    decode(kF, in.code, in.transcript, cfg, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExceeded);
  }
  opts.budget = scenario_count(4, 2, 2, 8);
  EXPECT_NO_THROW(decode(kF, in.code, in.transcript, cfg, opts));
}

TEST(Decode, TranscriptMismatch) {
  const SystemConfig cfg{6, 3, 1, 2};
  auto in = random_instance(cfg, 4, 3);
  auto broken = in.transcript;
  broken.values.pop_back();
  auto dup = in.transcript;
  dup.nodes[1] = dup.nodes[0];
  auto out_of_range = in.transcript;
  out_of_range.nodes[0] = 6;
  for (const auto& t : {broken, dup, out_of_range}) {
    try {
      decode(kF, in.code, t, cfg);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kTranscriptMismatch);
    }
  }
}

TEST(VerifyAgainstTruth, Classification) {
  SourceBehavior b(3, 4, {1});
  for (std::size_t n = 0; n < 4; ++n) {
    b.at(0, n) = FieldElement{5};
    b.at(1, n) = FieldElement{6};
    b.at(2, n) = FieldElement{7};
  }
  DecodeResult r;
  r.estimates = {FieldElement{5}, FieldElement{99}, FieldElement{7}};
  auto rep = verify_against_truth(r, b);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.status[1], EstimateStatus::kAdversarial);

  r.estimates = {std::nullopt, std::nullopt, FieldElement{8}};
  rep = verify_against_truth(r, b);
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.undetermined, (std::vector<std::size_t>{0}));
  EXPECT_EQ(rep.wrong, (std::vector<std::size_t>{2}));
  EXPECT_EQ(rep.failures, (std::vector<std::size_t>{0, 2}));

  r.estimates = {FieldElement{5}, FieldElement{6}, FieldElement{7}};
  r.ambiguous_coordinates = {1, 2};
  rep = verify_against_truth(r, b);
  EXPECT_EQ(rep.honest_ambiguous, (std::vector<std::size_t>{2}));
  EXPECT_FALSE(rep.ok());
}

TEST(FeasibleProjections, LabeledAndUnlabeledAgree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t v = 2 + seed % 2;
    const SystemConfig cfg{7, 3, 1, v};
    const auto in = random_instance(cfg, 2 + seed % 4, seed + 500);
    const auto unlabeled =
        feasible_projections(kF, in.code, in.transcript, cfg, PartitionEnumeration::kUnlabeled);
    const auto labeled =
        feasible_projections(kF, in.code, in.transcript, cfg, PartitionEnumeration::kLabeled);
    EXPECT_FALSE(unlabeled.empty());
    EXPECT_EQ(unlabeled, labeled) << seed;
  }
}

}  // namespace
}  // namespace eqlab
