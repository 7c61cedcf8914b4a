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

#include "eqlab/partitions.hpp"

#include <algorithm>

#include "eqlab/error.hpp"

namespace eqlab {

std::vector<std::vector<std::size_t>> SetPartition::blocks(
    std::span<const std::size_t> items) const {
  std::vector<std::vector<std::size_t>> out(block_count);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[labels[i]].push_back(items.empty() ? i : items[i]);
  }
  return out;
}

std::vector<SetPartition> enumerate_partitions(std::size_t n, std::size_t max_blocks) {
  std::vector<SetPartition> out;
  if (n == 0 || max_blocks == 0) return out;
  if (max_blocks > 255) {
    throw Error(ErrorCode::kBadDimensions, "at most 255 blocks are supported");
  }
  // prefix_max[i] = max(labels[0..i]).
  std::vector<std::uint8_t> labels(n, 0), prefix_max(n, 0);
  while (true) {
    out.push_back({labels, static_cast<std::size_t>(prefix_max[n - 1]) + 1});
    std::size_t i = n - 1;
    while (i > 0) {
      const std::size_t cap =
          std::min<std::size_t>(prefix_max[i - 1] + 1, max_blocks - 1);
      if (labels[i] < cap) break;
      --i;
    }
    if (i == 0) return out;
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      labels[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::uint64_t stirling2(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  // S(i, j) = j S(i-1, j) + S(i-1, j-1), row by row.
  std::vector<unsigned __int128> row(k + 1, 0);
  row[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = std::min(i, k); j >= 1; --j) {
      row[j] = j * row[j] + row[j - 1];
      if (row[j] > UINT64_MAX) row[j] = UINT64_MAX;
    }
    row[0] = 0;
  }
  return static_cast<std::uint64_t>(row[k]);
}

std::uint64_t partition_count(std::size_t n, std::size_t max_blocks) {
  unsigned __int128 total = 0;
  for (std::size_t j = 1; j <= max_blocks; ++j) total += stirling2(n, j);
  return total > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

}  // namespace eqlab
