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

#include <algorithm>
#include <cstddef>
#include <string>

#include "eqlab/error.hpp"
#include "eqlab/field.hpp"

namespace eqlab {

/// Smallest t for which linear codes can be t-correct:
/// min(N, K + 2*beta*(v-1)).
constexpr std::size_t linear_threshold(std::size_t n, std::size_t k,
                                       std::size_t beta, std::size_t v) {
  return std::min(n, k + 2 * beta * (v - 1));
}

/// Parameters of an (N, K, beta, v) distributed encoding system: N encoding
/// nodes, K source nodes of which at most beta are adversarial, each
/// adversary sending at most v distinct versions of its message.
struct SystemConfig {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t beta = 0;
  std::size_t v = 1;
  std::uint32_t prime = kDefaultPrime;

  std::size_t honest_count() const { return k - beta; }  // h
  std::size_t t_star() const { return linear_threshold(n, k, beta, v); }

  void validate() const {
    if (!(1 <= beta && beta < k && k <= n) || v < 1) {
      throw Error(ErrorCode::kInvalidConfig,
                  "need 1 <= beta < K <= N and v >= 1, got N=" +
                      std::to_string(n) + " K=" + std::to_string(k) +
                      " beta=" + std::to_string(beta) +
                      " v=" + std::to_string(v));
    }
  }

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

}  // namespace eqlab
