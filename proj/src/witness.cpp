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

#include "extremalkit/witness.hpp"

#include <cstdlib>
#include <random>
#include <string>

namespace extremalkit {

std::uint64_t witness_seed() {
  if (const char* env = std::getenv("EXTREMALKIT_SEED")) {
    try {
      return std::stoull(std::string(env));
    } catch (...) {
      // fall through to the default on unparsable input
    }
  }
  return 0x5EED2026ULL;
}

ExactPoint random_rational_point(const VariableRegistry& reg,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  ExactPoint pt = ExactPoint::zeros(reg);
  for (auto& v : pt.poly) {
    int p = num(rng);
    if (p == 0) p = 1;  // keep witness coordinates away from the origin
    v = Rational(p, den(rng));
  }
  for (auto& cs : pt.trig) {
    const Rational t(num(rng), den(rng));
    const Rational d = 1 + t * t;
    cs = {(1 - t * t) / d, 2 * t / d};
  }
  return pt;
}

}  // namespace extremalkit
