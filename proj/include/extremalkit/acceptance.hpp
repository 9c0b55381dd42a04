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

#ifndef EXTREMALKIT_ACCEPTANCE_HPP_
#define EXTREMALKIT_ACCEPTANCE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "extremalkit/mechanical.hpp"

namespace extremalkit {

// Deterministic pseudorandom mechanical system (constant SPD mass matrix
// with its exact rational inverse, trig-bearing input matrix of full rank,
// random polynomial forces). Used by the commutativity criterion.
MechanicalSystemSpec randomized_mechanical_spec(std::uint64_t seed);

// End-to-end verification suite behind the `verify` subcommand and the
// acceptance test binary: one pass/fail entry per criterion, every
// tolerance pinned in code.
struct AcceptanceResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// `cli_path` is used by the determinism criterion to spawn the actual
// batch front end; when empty the preset pipeline is exercised in-process.
std::vector<AcceptanceResult> run_acceptance(const std::string& cli_path = "");

// Prints one line per criterion; returns true iff all passed.
bool print_acceptance(std::ostream& os,
                      const std::vector<AcceptanceResult>& results);

}  // namespace extremalkit

#endif  // EXTREMALKIT_ACCEPTANCE_HPP_
