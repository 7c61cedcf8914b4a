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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace eqlab {

/// A set partition of positions {0..n-1}, stored as a restricted growth
/// string: labels[0] = 0 and labels[i] <= 1 + max(labels[0..i-1]). Each
/// unlabeled partition has exactly one such encoding.
struct SetPartition {
  std::vector<std::uint8_t> labels;
  std::size_t block_count = 0;

  /// Blocks as lists of entries of `items` (positions when items is empty).
  std::vector<std::vector<std::size_t>> blocks(
      std::span<const std::size_t> items = {}) const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
};

/// Every partition of n positions into at most max_blocks nonempty blocks, in
/// lexicographic order of the restricted growth string.
std::vector<SetPartition> enumerate_partitions(std::size_t n, std::size_t max_blocks);

/// Stirling number of the second kind S(n, k), by the standard recurrence.
std::uint64_t stirling2(std::size_t n, std::size_t k);

/// sum_{j=1..max_blocks} S(n, j); saturates at UINT64_MAX.
std::uint64_t partition_count(std::size_t n, std::size_t max_blocks);

}  // namespace eqlab
