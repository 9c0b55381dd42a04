// Copyright 2026 The extremalkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EXTREMALKIT_WITNESS_HPP_
#define EXTREMALKIT_WITNESS_HPP_

#include <cstdint>

#include "extremalkit/registry.hpp"

namespace extremalkit {

// Seed for pseudorandom witness points: EXTREMALKIT_SEED from the
// environment when set, a fixed default otherwise.
std::uint64_t witness_seed();

// Deterministic pseudorandom rational point: small rationals for
// polynomial variables, rational circle pairs for angles. Rank checks that
// only need a generic point use this.
ExactPoint random_rational_point(const VariableRegistry& reg, std::uint64_t seed);

inline ExactPoint default_witness_point(const VariableRegistry& reg) {
  return random_rational_point(reg, witness_seed());
}

}  // namespace extremalkit

#endif  // EXTREMALKIT_WITNESS_HPP_
