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

#ifndef EXTREMALKIT_TRIGPOLY_HPP_
#define EXTREMALKIT_TRIGPOLY_HPP_

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "extremalkit/rational.hpp"
#include "extremalkit/registry.hpp"

namespace extremalkit {

// One product of variable powers. Polynomial exponents are stored per poly
// ordinal; each angle variable carries a trig word cos^a * sin^e with
// a >= 0 and, in canonical form, e in {0, 1}.
struct Monomial {
  std::vector<std::int32_t> poly;
  std::vector<std::array<std::int32_t, 2>> trig;  // {cos_exp, sin_exp}

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  bool is_constant() const;
  int degree_over(std::span<const std::size_t> poly_ordinals) const;
};

// Exact multivariate trig-polynomial: a polynomial in the registry's
// variables where angle variables enter only through sin/cos.
//
// Canonical form: no zero coefficients are stored and every trig word has
// sin exponent 0 or 1 (sin^2 t is rewritten as 1 - cos^2 t on every
// operation). Two TrigPolys over compatible registries are equal iff their
// term maps are equal, which makes symbolic-zero tests decidable.
// The basis {cos^a, cos^a sin} is closed under multiplication and partial
// differentiation, so the ring operations below never leave it.
//
// Values are immutable after construction; all operations are pure and the
// type is safe to share between threads.
class TrigPoly {
 public:
  TrigPoly() = default;  // detached zero; usable only as an assignment target

  static TrigPoly zero(RegistryPtr reg);
  static TrigPoly constant(RegistryPtr reg, Rational value);
  // Polynomial variables only; angles have no value outside sin/cos.
  static TrigPoly variable(RegistryPtr reg, std::size_t var_index);
  static TrigPoly cosine(RegistryPtr reg, std::size_t var_index);
  static TrigPoly sine(RegistryPtr reg, std::size_t var_index);

  const RegistryPtr& registry() const { return reg_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // Non-null iff the polynomial is a constant (including zero).
  const Rational* as_constant() const;

  TrigPoly operator-() const;
  TrigPoly operator+(const TrigPoly& rhs) const;
  TrigPoly operator-(const TrigPoly& rhs) const;
  TrigPoly operator*(const TrigPoly& rhs) const;
  TrigPoly& operator+=(const TrigPoly& rhs);
  TrigPoly& operator-=(const TrigPoly& rhs);
  TrigPoly operator*(const Rational& c) const;
  // Throws InvalidArgument for negative exponents.
  TrigPoly pow(int exponent) const;

  bool operator==(const TrigPoly& rhs) const;

  // Exact partial derivative. Angle variables use d(cos t) = -sin t dt and
  // d(sin t) = cos t dt, then re-canonicalize.
  TrigPoly derivative(std::size_t var_index) const;

  // Simultaneous substitution of polynomial variables (keys are variable
  // indices). Replacements may mention the substituted variables; they are
  // read from the original polynomial only.
  TrigPoly substitute(const std::map<std::size_t, TrigPoly>& replacements) const;

  // Exact path: rational result; angle values are the supplied exact
  // (cos, sin) circle pairs. Validates the point.
  Rational evaluate(const ExactPoint& point) const;
  // Float path (IEEE double): `state` has one entry per registry variable,
  // angles in radians.
  double evaluate(std::span<const double> state) const;

  // Total degree in the given polynomial variables; -1 for the zero
  // polynomial.
  int degree_in(std::span<const std::size_t> poly_ordinals) const;
  // True if the variable occurs at all (for angles: in any trig word).
  bool depends_on(std::size_t var_index) const;

  // Canonical printable form; parses back to an equal polynomial.
  std::string to_string() const;

 private:
  friend class ExprParser;
  explicit TrigPoly(RegistryPtr reg) : reg_(std::move(reg)) {}
  // Adds c * m, reducing sin exponents >= 2 and dropping zero terms.
  void accumulate(Monomial m, Rational c);
  Monomial unit_monomial() const;
  void check_same_registry(const TrigPoly& rhs) const;

  RegistryPtr reg_;
  std::map<Monomial, Rational> terms_;
};

// Constrained so that unrelated `a * b` expressions (Eigen's in
// particular) never instantiate a Rational conversion probe.
template <typename T>
  requires std::same_as<std::remove_cvref_t<T>, Rational>
TrigPoly operator*(const T& c, const TrigPoly& p) {
  return p * c;
}

}  // namespace extremalkit

#endif  // EXTREMALKIT_TRIGPOLY_HPP_
