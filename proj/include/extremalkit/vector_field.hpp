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

#ifndef EXTREMALKIT_VECTOR_FIELD_HPP_
#define EXTREMALKIT_VECTOR_FIELD_HPP_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "extremalkit/trigpoly.hpp"

namespace extremalkit {

using PolyMatrix = std::vector<std::vector<TrigPoly>>;

// A vector field with exact trig-polynomial components, one per registry
// variable. Immutable in practice; all operations below are pure.
class VectorField {
 public:
  VectorField() = default;
  VectorField(RegistryPtr reg, std::vector<TrigPoly> components);
  static VectorField zero(RegistryPtr reg);

  const RegistryPtr& registry() const { return reg_; }
  std::size_t dimension() const { return comps_.size(); }
  const TrigPoly& comp(std::size_t i) const { return comps_[i]; }
  const std::vector<TrigPoly>& components() const { return comps_; }

  bool is_zero() const;
  bool operator==(const VectorField& rhs) const;

  VectorField operator+(const VectorField& rhs) const;
  VectorField operator-(const VectorField& rhs) const;
  VectorField operator-() const;
  VectorField scaled(const TrigPoly& factor) const;
  VectorField scaled(const Rational& factor) const;

  Eigen::VectorXd evaluate(std::span<const double> state) const;
  std::vector<Rational> evaluate(const ExactPoint& point) const;

 private:
  RegistryPtr reg_;
  std::vector<TrigPoly> comps_;
};

// Entry (i, j) = dX_i / dx_j, exact.
PolyMatrix jacobian(const VectorField& X);

// [X, Y] = (DY) X - (DX) Y. The orientation is fixed so that for a
// mechanical system [f, g_i] has first block -F ghat_i.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

// ad_f^0 g = g, ad_f^s g = [f, ad_f^{s-1} g]. Throws for s < 0.
VectorField ad_power(const VectorField& f, const VectorField& g, int s);

// Degree class (a, b) relative to the registry block split: a is the max
// degree in x2 variables over the first n1 components, b over the rest;
// -1 marks an identically zero block.
struct DegreeClass {
  int a = -1;
  int b = -1;
  friend bool operator==(const DegreeClass&, const DegreeClass&) = default;
  bool leq(const DegreeClass& rhs) const { return a <= rhs.a && b <= rhs.b; }
};

// Requires every x2-block variable to be polynomial-kind.
DegreeClass degree_class(const VectorField& X);

// Bracket degree bound for X in V^{a,b}, Y in V^{c,d}: first block
// max(a+c, a+d-1, b+c-1), second max(b+c, a+d, b+d-1), where any term
// containing a degree -1 input is dropped (the zero-polynomial convention).
DegreeClass bracket_degree_bound(const DegreeClass& X, const DegreeClass& Y);

// Matrix helpers over the trig-polynomial ring.
PolyMatrix poly_identity(const RegistryPtr& reg, std::size_t n);
PolyMatrix poly_zeros(const RegistryPtr& reg, std::size_t rows, std::size_t cols);
PolyMatrix poly_mat_mul(const PolyMatrix& A, const PolyMatrix& B);
std::vector<TrigPoly> poly_mat_vec(const PolyMatrix& A,
                                   const std::vector<TrigPoly>& v);
PolyMatrix poly_transpose(const PolyMatrix& A);
bool poly_mat_equal(const PolyMatrix& A, const PolyMatrix& B);

}  // namespace extremalkit

#endif  // EXTREMALKIT_VECTOR_FIELD_HPP_
