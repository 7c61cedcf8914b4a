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

#include "eqlab/system.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "eqlab/util.hpp"

namespace eqlab {

bool SourceBehavior::is_adversary(std::size_t source) const {
  return std::find(adversary_set_.begin(), adversary_set_.end(), source) !=
         adversary_set_.end();
}

std::size_t distinct_count(std::span<const FieldElement> row) {
  std::unordered_set<std::uint32_t> seen;
  for (FieldElement e : row) seen.insert(e.value);
  return seen.size();
}

void SourceBehavior::validate(const SystemConfig& cfg) const {
  if (k_ != cfg.k || n_ != cfg.n) {
    throw Error(ErrorCode::kInvalidBehavior, "behavior shape does not match K x N");
  }
  if (adversary_set_.size() > cfg.beta) {
    throw Error(ErrorCode::kTooManyAdversaries,
                std::to_string(adversary_set_.size()) + " adversaries exceed beta=" +
                    std::to_string(cfg.beta));
  }
  for (std::size_t a : adversary_set_) {
    if (a >= k_) throw Error(ErrorCode::kInvalidBehavior, "adversary index out of range");
  }
  for (std::size_t k = 0; k < k_; ++k) {
    const std::size_t distinct = distinct_count(row(k));
    if (is_adversary(k)) {
      if (distinct > cfg.v) {
        throw Error(ErrorCode::kInvalidBehavior,
                    "adversary " + std::to_string(k) + " uses " +
                        std::to_string(distinct) + " versions, bound is " +
                        std::to_string(cfg.v));
      }
    } else if (distinct > 1) {
      throw Error(ErrorCode::kInvalidBehavior,
                  "honest source " + std::to_string(k) + " equivocates");
    }
  }
}

SourceBehavior behavior_honest(const SystemConfig& cfg,
                               std::span<const FieldElement> messages) {
  if (messages.size() != cfg.k) {
    throw Error(ErrorCode::kDimensionMismatch, "need one message per source");
  }
  SourceBehavior b(cfg.k, cfg.n, {});
  for (std::size_t k = 0; k < cfg.k; ++k) {
    for (std::size_t n = 0; n < cfg.n; ++n) b.at(k, n) = messages[k];
  }
  return b;
}

SourceBehavior behavior_random_adversarial(const Field& f, const SystemConfig& cfg,
                                           std::span<const FieldElement> honest_messages,
                                           std::span<const std::size_t> adversary_set,
                                           std::uint64_t seed) {
  if (adversary_set.size() > cfg.beta) {
    throw Error(ErrorCode::kTooManyAdversaries,
                std::to_string(adversary_set.size()) + " adversaries exceed beta=" +
                    std::to_string(cfg.beta));
  }
  std::vector<std::size_t> adv(adversary_set.begin(), adversary_set.end());
  std::sort(adv.begin(), adv.end());
  if (honest_messages.size() != cfg.k) {
    throw Error(ErrorCode::kDimensionMismatch, "need one message per source");
  }
  SourceBehavior b(cfg.k, cfg.n, adv);
  for (std::size_t k = 0; k < cfg.k; ++k) {
    for (std::size_t n = 0; n < cfg.n; ++n) b.at(k, n) = honest_messages[k];
  }
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, cfg.v - 1);
  for (std::size_t k : adv) {
    FieldVector versions(cfg.v);
    for (auto& x : versions) x = f.uniform(rng);
    for (std::size_t n = 0; n < cfg.n; ++n) b.at(k, n) = versions[pick(rng)];
  }
  b.validate(cfg);
  return b;
}

Transcript encode_transcript(const Field& f, const GeneratorMatrix& gm,
                             const SourceBehavior& behavior,
                             std::span<const std::size_t> nodes) {
  if (behavior.sources() != gm.k || behavior.encoders() != gm.n) {
    throw Error(ErrorCode::kDimensionMismatch, "behavior shape does not match code");
  }
  Transcript t;
  t.nodes.assign(nodes.begin(), nodes.end());
  t.values.reserve(nodes.size());
  for (std::size_t n : nodes) {
    if (n >= gm.n) {
      throw Error(ErrorCode::kNodeOutOfRange,
                  "encoder " + std::to_string(n) + " outside [0, " +
                      std::to_string(gm.n) + ")");
    }
    FieldElement y;
    for (std::size_t k = 0; k < gm.k; ++k) {
      y = f.add(y, f.mul(gm.g(n, k), behavior.at(k, n)));
    }
    t.values.push_back(y);
  }
  return t;
}

}  // namespace eqlab
