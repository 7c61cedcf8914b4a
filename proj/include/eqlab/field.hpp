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

#include <compare>
#include <cstdint>
#include <random>
#include <vector>

#include "eqlab/error.hpp"

namespace eqlab {

/// An element of GF(p), stored as its canonical representative in [0, p).
/// Arithmetic lives on Field, which owns the modulus.
struct FieldElement {
  std::uint32_t value = 0;

  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t v) : value(v) {}

  constexpr bool is_zero() const { return value == 0; }
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

using FieldVector = std::vector<FieldElement>;

inline constexpr std::uint32_t kDefaultPrime = 2147483647u;  // 2^31 - 1
inline constexpr std::uint64_t kMinimumPrime = 1u << 16;

bool is_prime(std::uint64_t n);

/// Prime-field context. Copyable and immutable; every operation is total on
/// canonical inputs.
class Field {
 public:
  /// Production constructor: p must be prime, at least 2^16 and below 2^32.
  static Field create(std::uint64_t p);

  /// Like create() without the 2^16 floor. Primality is still enforced.
  static Field small_for_testing(std::uint64_t p);

  std::uint32_t modulus() const { return p_; }

  FieldElement zero() const { return FieldElement{0}; }
  FieldElement one() const { return FieldElement{1}; }

  /// Reduces any signed integer into [0, p).
  FieldElement from_int(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return FieldElement{static_cast<std::uint32_t>(r)};
  }

  FieldElement add(FieldElement a, FieldElement b) const {
    std::uint64_t s = std::uint64_t{a.value} + b.value;
    if (s >= p_) s -= p_;
    return FieldElement{static_cast<std::uint32_t>(s)};
  }

  FieldElement sub(FieldElement a, FieldElement b) const {
    return a.value >= b.value ? FieldElement{a.value - b.value}
                              : FieldElement{static_cast<std::uint32_t>(
                                    std::uint64_t{a.value} + p_ - b.value)};
  }

  FieldElement neg(FieldElement a) const {
    return a.value == 0 ? a : FieldElement{p_ - a.value};
  }

  FieldElement mul(FieldElement a, FieldElement b) const {
    return FieldElement{static_cast<std::uint32_t>(
        (std::uint64_t{a.value} * b.value) % p_)};
  }

  FieldElement pow(FieldElement a, std::uint64_t e) const;

  /// Multiplicative inverse; throws kDivisionByZero for a = 0.
  FieldElement inv(FieldElement a) const;

  FieldElement div(FieldElement a, FieldElement b) const {
    return mul(a, inv(b));
  }

  /// Uniform draw over all of GF(p).
  template <class Rng>
  FieldElement uniform(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> dist(0, p_ - 1);
    return FieldElement{dist(rng)};
  }

  /// Uniform draw over GF(p) \ {0}.
  template <class Rng>
  FieldElement uniform_nonzero(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> dist(1, p_ - 1);
    return FieldElement{dist(rng)};
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}

  std::uint32_t p_;
};

}  // namespace eqlab
