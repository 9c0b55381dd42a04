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

#ifndef EXTREMALKIT_TESTS_HELPERS_HPP_
#define EXTREMALKIT_TESTS_HELPERS_HPP_

#include <random>
#include <vector>

#include "extremalkit/registry.hpp"
#include "extremalkit/trigpoly.hpp"

namespace extremalkit::testing {

// Small random rationals p/q, p in [-9, 9], q in [1, 9].
inline Rational random_rational(std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  int p = num(rng);
  while (nonzero && p == 0) p = num(rng);
  return Rational(p, den(rng));
}

// Rational point on the unit circle via t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)).
inline std::pair<Rational, Rational> random_circle_point(std::mt19937_64& rng) {
  Rational t = random_rational(rng);
  Rational denom = 1 + t * t;
  return {(1 - t * t) / denom, 2 * t / denom};
}

inline ExactPoint random_exact_point(const VariableRegistry& reg,
                                     std::mt19937_64& rng) {
  ExactPoint pt = ExactPoint::zeros(reg);
  for (auto& v : pt.poly) v = random_rational(rng);
  for (auto& cs : pt.trig) cs = random_circle_point(rng);
  return pt;
}

inline std::vector<double> random_float_state(const VariableRegistry& reg,
                                              std::mt19937_64& rng,
                                              double scale = 2.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> x(reg.size());
  for (auto& v : x) v = dist(rng);
  return x;
}

// Random canonical trig-polynomial with a handful of bounded-degree terms.
inline TrigPoly random_trigpoly(const RegistryPtr& reg, std::mt19937_64& rng,
                                int max_terms = 4, int max_exp = 2) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> expd(0, max_exp);
  std::uniform_int_distribution<int> sind(0, 1);
  TrigPoly p = TrigPoly::zero(reg);
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    TrigPoly term = TrigPoly::constant(reg, random_rational(rng, true));
    for (std::size_t i = 0; i < reg->size(); ++i) {
      if (reg->is_angle(i)) {
        int ce = expd(rng);
        if (ce > 0) term = term * TrigPoly::cosine(reg, i).pow(ce);
        if (sind(rng)) term = term * TrigPoly::sine(reg, i);
      } else {
        int e = expd(rng);
        if (e > 0) term = term * TrigPoly::variable(reg, i).pow(e);
      }
    }
    p += term;
  }
  return p;
}

inline RegistryPtr simple_registry() {
  return VariableRegistry::create(
      {{"theta", VarKind::Angle}, {"v1", VarKind::Polynomial},
       {"v3", VarKind::Polynomial}},
      1);
}

}  // namespace extremalkit::testing

#endif  // EXTREMALKIT_TESTS_HELPERS_HPP_
