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

#include "eqlab/field.hpp"

#include <string>

namespace eqlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::kModulusTooSmall: return "ModulusTooSmall";
    case ErrorCode::kModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kBadDimensions: return "BadDimensions";
    case ErrorCode::kDuplicatePoints: return "DuplicatePoints";
    case ErrorCode::kSelectionImpossible: return "SelectionImpossible";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidBehavior: return "InvalidBehavior";
    case ErrorCode::kTooManyAdversaries: return "TooManyAdversaries";
    case ErrorCode::kNodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::kTranscriptMismatch: return "TranscriptMismatch";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kNullspaceDeltaZero: return "NullspaceDeltaZero";
    case ErrorCode::kAttackConstructionFailed: return "AttackConstructionFailed";
    case ErrorCode::kMdsRetriesExhausted: return "MdsRetriesExhausted";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Deterministic Miller-Rabin; these witnesses are exact for n < 3.3e24.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::create(std::uint64_t p) {
  if (p < kMinimumPrime) {
    throw Error(ErrorCode::kModulusTooSmall,
                "modulus " + std::to_string(p) + " is below 2^16");
  }
  return small_for_testing(p);
}

Field Field::small_for_testing(std::uint64_t p) {
  if (p > 0xFFFFFFFFull) {
    throw Error(ErrorCode::kModulusTooLarge,
                "modulus " + std::to_string(p) + " does not fit in 32 bits");
  }
  if (!is_prime(p)) {
    throw Error(ErrorCode::kNonPrimeModulus,
                "modulus " + std::to_string(p) + " is not prime");
  }
  return Field(static_cast<std::uint32_t>(p));
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
  FieldElement r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldElement Field::inv(FieldElement a) const {
  if (a.is_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  // Extended Euclid on signed 64-bit keeps this exact for any 32-bit modulus.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a.value;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return from_int(t);
}

}  // namespace eqlab
