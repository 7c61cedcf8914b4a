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

#include "eqlab/codebook.hpp"
#include "eqlab/error.hpp"
#include "eqlab/system.hpp"
#include "test_support.hpp"

namespace eqlab {
namespace {

using testing::fv;

const Field kF = Field::create(kDefaultPrime);

TEST(Config, ThresholdAndValidation) {
  EXPECT_EQ((SystemConfig{9, 3, 1, 2}).t_star(), 5u);
  EXPECT_EQ((SystemConfig{4, 3, 1, 2}).t_star(), 4u);
  EXPECT_EQ((SystemConfig{12, 4, 2, 2}).t_star(), 8u);
  EXPECT_EQ((SystemConfig{12, 4, 2, 2}).honest_count(), 2u);
  EXPECT_THROW((SystemConfig{5, 3, 0, 2}).validate(), Error);
  EXPECT_THROW((SystemConfig{5, 3, 3, 2}).validate(), Error);
  EXPECT_THROW((SystemConfig{2, 3, 1, 2}).validate(), Error);
  EXPECT_THROW((SystemConfig{5, 3, 1, 0}).validate(), Error);
  EXPECT_NO_THROW((SystemConfig{3, 3, 1, 1}).validate());
}

TEST(BehaviorHonest, EveryEncoderGetsTheMessages) {
  const SystemConfig cfg{5, 3, 1, 2};
  const auto msgs = fv({7, 8, 9});
  const auto b = behavior_honest(cfg, msgs);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t n = 0; n < 5; ++n) EXPECT_EQ(b.at(k, n), msgs[k]);
    EXPECT_EQ(b.honest_message(k), msgs[k]);
  }
  EXPECT_NO_THROW(b.validate(cfg));
}

TEST(EncodeTranscript, IdentityCodeReturnsMessages) {
  const SystemConfig cfg{3, 3, 1, 2};
  const auto gm = gen_systematic(kF, 3, 3, 0);
  const auto b = behavior_honest(cfg, fv({7, 8, 9}));
  const std::vector<std::size_t> nodes{0, 1, 2};
  EXPECT_EQ(encode_transcript(kF, gm, b, nodes).values, fv({7, 8, 9}));
}

TEST(EncodeTranscript, ZeroMessagesGiveZeroTranscript) {
  const SystemConfig cfg{6, 3, 1, 2};
  const auto gm = gen_random_linear(kF, 6, 3, 1);
  const auto b = behavior_honest(cfg, fv({0, 0, 0}));
  const std::vector<std::size_t> nodes{5, 0, 3};
  EXPECT_EQ(encode_transcript(kF, gm, b, nodes).values, FieldVector(3));
}

TEST(EncodeTranscript, EquivocationExampleShape) {
  // Source 0 sends x' to encoders {0,1} and x to {2,3,4}.
  const SystemConfig cfg{5, 3, 1, 2};
  const auto gm = gen_random_linear(kF, 5, 3, 2);
  SourceBehavior b = behavior_honest(cfg, fv({10, 20, 30}));
  b = [&] {
    SourceBehavior eq(3, 5, {0});
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::size_t n = 0; n < 5; ++n) eq.at(k, n) = b.at(k, n);
    }
    eq.at(0, 0) = eq.at(0, 1) = FieldElement{11};
    return eq;
  }();
  EXPECT_NO_THROW(b.validate(cfg));
  const std::vector<std::size_t> nodes{0, 1, 2, 3, 4};
  const auto t = encode_transcript(kF, gm, b, nodes);
  for (std::size_t n = 0; n < 5; ++n) {
    const FieldElement x0{n < 2 ? 11u : 10u};
    const FieldElement expect =
        kF.add(kF.add(kF.mul(gm.g(n, 0), x0), kF.mul(gm.g(n, 1), FieldElement{20})),
               kF.mul(gm.g(n, 2), FieldElement{30}));
    EXPECT_EQ(t.values[n], expect);
  }
}

TEST(EncodeTranscript, Errors) {
  const SystemConfig cfg{4, 3, 1, 2};
  const auto gm = gen_random_linear(kF, 4, 3, 1);
  const auto b = behavior_honest(cfg, fv({1, 2, 3}));
  const std::vector<std::size_t> bad{0, 4};
  EXPECT_THROW(encode_transcript(kF, gm, b, bad), Error);
  const auto other = behavior_honest(SystemConfig{5, 3, 1, 2}, fv({1, 2, 3}));
  const std::vector<std::size_t> ok{0};
  try {
    encode_transcript(kF, gm, other, ok);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(EncodeTranscript, LinearInBehavior) {
  const SystemConfig cfg{7, 3, 2, 3};
  const auto gm = gen_random_linear(kF, 7, 3, 8);
  const std::vector<std::size_t> nodes{6, 2, 0, 4};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const std::vector<std::size_t> adv{0, 2};
    const auto b1 = behavior_random_adversarial(kF, cfg, testing::random_vector(kF, 3, rng),
                                                adv, rng());
    const auto b2 = behavior_random_adversarial(kF, cfg, testing::random_vector(kF, 3, rng),
                                                adv, rng());
    SourceBehavior sum(3, 7, {});
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::size_t n = 0; n < 7; ++n) sum.at(k, n) = kF.add(b1.at(k, n), b2.at(k, n));
    }
    const auto t1 = encode_transcript(kF, gm, b1, nodes);
    const auto t2 = encode_transcript(kF, gm, b2, nodes);
    const auto ts = encode_transcript(kF, gm, sum, nodes);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      EXPECT_EQ(ts.values[i], kF.add(t1.values[i], t2.values[i]));
    }
  }
}

TEST(EncodeTranscript, HonestKSubsetDeterminesMessages) {
  const SystemConfig cfg{7, 4, 1, 2};
  const auto gm = generate_mds_code(kF, CodeKind::kRandom, 7, 4, 3).code;
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto msgs = testing::random_vector(kF, 4, rng);
    const auto nodes = random_subset(7, 4, rng);
    const auto t = encode_transcript(kF, gm, behavior_honest(cfg, msgs), nodes);
    const auto out = solve(kF, gm.g.select_rows(nodes), t.values);
    ASSERT_TRUE(out.consistent);
    EXPECT_EQ(out.pinned_coordinates.size(), 4u);
    EXPECT_EQ(*out.particular, msgs);
  }
}

TEST(BehaviorRandomAdversarial, RespectsModelBounds) {
  for (std::size_t v = 1; v <= 4; ++v) {
    const SystemConfig cfg{12, 4, 2, v};
    Rng rng(v);
    bool saw_collision = false;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto msgs = testing::random_vector(kF, 4, rng);
      const std::vector<std::size_t> adv{1, 3};
      const auto b = behavior_random_adversarial(kF, cfg, msgs, adv, seed);
      EXPECT_NO_THROW(b.validate(cfg));
      EXPECT_EQ(b.adversary_set(), adv);
      for (std::size_t k : {0u, 2u}) {
        EXPECT_EQ(distinct_count(b.row(k)), 1u);
        EXPECT_EQ(b.at(k, 5), msgs[k]);
      }
      for (std::size_t k : adv) {
        EXPECT_LE(distinct_count(b.row(k)), v);
        saw_collision |= distinct_count(b.row(k)) < v;
      }
      if (v == 1) {
        for (std::size_t k : adv) EXPECT_EQ(distinct_count(b.row(k)), 1u);
      }
    }
    if (v >= 3) EXPECT_TRUE(saw_collision);
  }
}

TEST(BehaviorRandomAdversarial, DeterministicPerSeed) {
  const SystemConfig cfg{8, 3, 1, 2};
  const auto msgs = fv({1, 2, 3});
  const std::vector<std::size_t> adv{2};
  EXPECT_EQ(behavior_random_adversarial(kF, cfg, msgs, adv, 9),
            behavior_random_adversarial(kF, cfg, msgs, adv, 9));
}

TEST(SourceBehavior, ValidateRejectsViolations) {
  const SystemConfig cfg{4, 3, 1, 2};
  SourceBehavior honest_equivocates = behavior_honest(cfg, fv({1, 2, 3}));
  honest_equivocates.at(1, 2) = FieldElement{5};
  try {
    honest_equivocates.validate(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidBehavior);
  }
  SourceBehavior too_many(3, 4, {0, 1});
  try {
    too_many.validate(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooManyAdversaries);
  }
  SourceBehavior three_versions(3, 4, {0});
  three_versions.at(0, 0) = FieldElement{1};
  three_versions.at(0, 1) = FieldElement{2};
  three_versions.at(0, 2) = FieldElement{3};
  EXPECT_THROW(three_versions.validate(cfg), Error);
}

}  // namespace
}  // namespace eqlab
