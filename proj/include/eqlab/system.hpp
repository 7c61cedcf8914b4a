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
#include <span>
#include <vector>

#include "eqlab/codebook.hpp"
#include "eqlab/config.hpp"
#include "eqlab/field.hpp"

namespace eqlab {

/// What every encoder receives from every source: entry (k, n) is x_{n,k},
/// the symbol source k sent to encoder n. Honest rows are constant; rows in
/// `adversary_set` take at most v distinct values. The adversary set is
/// ground truth kept for test oracles and is never read by the decoder.
class SourceBehavior {
 public:
  SourceBehavior() = default;
  SourceBehavior(std::size_t k, std::size_t n, std::vector<std::size_t> adversary_set)
      : k_(k), n_(n), assignments_(k * n), adversary_set_(std::move(adversary_set)) {}

  std::size_t sources() const { return k_; }
  std::size_t encoders() const { return n_; }

  FieldElement& at(std::size_t source, std::size_t encoder) {
    return assignments_[source * n_ + encoder];
  }
  FieldElement at(std::size_t source, std::size_t encoder) const {
    return assignments_[source * n_ + encoder];
  }
  std::span<const FieldElement> row(std::size_t source) const {
    return {assignments_.data() + source * n_, n_};
  }

  const std::vector<std::size_t>& adversary_set() const { return adversary_set_; }
  bool is_adversary(std::size_t source) const;

  /// The message of an honest source (its constant row value).
  FieldElement honest_message(std::size_t source) const { return at(source, 0); }

  /// Re-checks row constancy off the adversary set, the per-row version bound
  /// v, and |adversary_set| <= beta. Throws kInvalidBehavior or
  /// kTooManyAdversaries.
  void validate(const SystemConfig& cfg) const;

  friend bool operator==(const SourceBehavior&, const SourceBehavior&) = default;

 private:
  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::vector<FieldElement> assignments_;
  std::vector<std::size_t> adversary_set_;
};

/// Coded symbols observed on an ordered subset of encoders.
struct Transcript {
  std::vector<std::size_t> nodes;
  FieldVector values;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

std::size_t distinct_count(std::span<const FieldElement> row);

SourceBehavior behavior_honest(const SystemConfig& cfg,
                               std::span<const FieldElement> messages);

/// Each adversarial row draws v values uniformly and maps every encoder slot
/// to one of them uniformly, so collisions (fewer than v distinct) happen.
SourceBehavior behavior_random_adversarial(const Field& f, const SystemConfig& cfg,
                                           std::span<const FieldElement> honest_messages,
                                           std::span<const std::size_t> adversary_set,
                                           std::uint64_t seed);

Transcript encode_transcript(const Field& f, const GeneratorMatrix& gm,
                             const SourceBehavior& behavior,
                             std::span<const std::size_t> nodes);

}  // namespace eqlab
