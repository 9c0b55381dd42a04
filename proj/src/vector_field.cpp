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

#include "extremalkit/vector_field.hpp"

#include <utility>

#include "extremalkit/errors.hpp"

namespace extremalkit {

VectorField::VectorField(RegistryPtr reg, std::vector<TrigPoly> components)
    : reg_(std::move(reg)), comps_(std::move(components)) {
  if (comps_.size() != reg_->size()) {
    throw InvalidArgument("component count does not match registry dimension");
  }
  for (const auto& c : comps_) {
    if (!compatible(reg_, c.registry())) {
      throw InvalidArgument("component over a different registry");
    }
  }
}

VectorField VectorField::zero(RegistryPtr reg) {
  std::vector<TrigPoly> comps(reg->size(), TrigPoly::zero(reg));
  return VectorField(std::move(reg), std::move(comps));
}

bool VectorField::is_zero() const {
  for (const auto& c : comps_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool VectorField::operator==(const VectorField& rhs) const {
  return comps_ == rhs.comps_;
}

VectorField VectorField::operator+(const VectorField& rhs) const {
  std::vector<TrigPoly> comps;
  comps.reserve(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    comps.push_back(comps_[i] + rhs.comps_[i]);
  }
  return VectorField(reg_, std::move(comps));
}

VectorField VectorField::operator-(const VectorField& rhs) const {
  std::vector<TrigPoly> comps;
  comps.reserve(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    comps.push_back(comps_[i] - rhs.comps_[i]);
  }
  return VectorField(reg_, std::move(comps));
}

VectorField VectorField::operator-() const {
  std::vector<TrigPoly> comps;
  comps.reserve(comps_.size());
  for (const auto& c : comps_) comps.push_back(-c);
  return VectorField(reg_, std::move(comps));
}

VectorField VectorField::scaled(const TrigPoly& factor) const {
  std::vector<TrigPoly> comps;
  comps.reserve(comps_.size());
  for (const auto& c : comps_) comps.push_back(c * factor);
  return VectorField(reg_, std::move(comps));
}

VectorField VectorField::scaled(const Rational& factor) const {
  std::vector<TrigPoly> comps;
  comps.reserve(comps_.size());
  for (const auto& c : comps_) comps.push_back(c * factor);
  return VectorField(reg_, std::move(comps));
}

Eigen::VectorXd VectorField::evaluate(std::span<const double> state) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(comps_.size()));
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = comps_[i].evaluate(state);
  }
  return out;
}

std::vector<Rational> VectorField::evaluate(const ExactPoint& point) const {
  std::vector<Rational> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.evaluate(point));
  return out;
}

PolyMatrix jacobian(const VectorField& X) {
  const auto& reg = X.registry();
  const std::size_t n = reg->size();
  PolyMatrix J(n, std::vector<TrigPoly>());
  for (std::size_t i = 0; i < n; ++i) {
    J[i].reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      J[i].push_back(X.comp(i).derivative(j));
    }
  }
  return J;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (!compatible(X.registry(), Y.registry())) {
    throw InvalidArgument("lie_bracket: mismatched registries");
  }
  const auto& reg = X.registry();
  const std::size_t n = reg->size();
  const PolyMatrix DX = jacobian(X);
  const PolyMatrix DY = jacobian(Y);
  std::vector<TrigPoly> comps;
  comps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TrigPoly c = TrigPoly::zero(reg);
    for (std::size_t j = 0; j < n; ++j) {
      c += DY[i][j] * X.comp(j);
      c -= DX[i][j] * Y.comp(j);
    }
    comps.push_back(std::move(c));
  }
  return VectorField(reg, std::move(comps));
}

VectorField ad_power(const VectorField& f, const VectorField& g, int s) {
  if (s < 0) throw InvalidArgument("ad_power: negative order");
  VectorField out = g;
  for (int i = 0; i < s; ++i) out = lie_bracket(f, out);
  return out;
}

DegreeClass degree_class(const VectorField& X) {
  const auto& reg = X.registry();
  std::vector<std::size_t> x2_ordinals;
  for (std::size_t i = reg->split_index(); i < reg->size(); ++i) {
    if (reg->is_angle(i)) {
      throw InvalidArgument("degree_class: angle variable '" + reg->name(i) +
                            "' in the x2 block");
    }
    x2_ordinals.push_back(static_cast<std::size_t>(reg->poly_ordinal(i)));
  }
  DegreeClass out;
  for (std::size_t i = 0; i < reg->split_index(); ++i) {
    out.a = std::max(out.a, X.comp(i).degree_in(x2_ordinals));
  }
  for (std::size_t i = reg->split_index(); i < reg->size(); ++i) {
    out.b = std::max(out.b, X.comp(i).degree_in(x2_ordinals));
  }
  return out;
}

DegreeClass bracket_degree_bound(const DegreeClass& X, const DegreeClass& Y) {
  const int a = X.a, b = X.b, c = Y.a, d = Y.b;
  auto term = [](int lhs, int rhs, int shift) {
    if (lhs < 0 || rhs < 0) return -1;
    return lhs + rhs + shift;
  };
  DegreeClass out;
  out.a = std::max({term(a, c, 0), term(a, d, -1), term(b, c, -1)});
  out.b = std::max({term(b, c, 0), term(a, d, 0), term(b, d, -1)});
  out.a = std::max(out.a, -1);
  out.b = std::max(out.b, -1);
  return out;
}

PolyMatrix poly_identity(const RegistryPtr& reg, std::size_t n) {
  PolyMatrix I(n, std::vector<TrigPoly>(n, TrigPoly::zero(reg)));
  for (std::size_t i = 0; i < n; ++i) {
    I[i][i] = TrigPoly::constant(reg, Rational(1));
  }
  return I;
}

PolyMatrix poly_zeros(const RegistryPtr& reg, std::size_t rows,
                      std::size_t cols) {
  return PolyMatrix(rows, std::vector<TrigPoly>(cols, TrigPoly::zero(reg)));
}

PolyMatrix poly_mat_mul(const PolyMatrix& A, const PolyMatrix& B) {
  if (A.empty() || B.empty() || A[0].size() != B.size()) {
    throw InvalidArgument("poly_mat_mul: dimension mismatch");
  }
  const std::size_t rows = A.size(), inner = B.size(), cols = B[0].size();
  const auto& reg = A[0][0].registry();
  PolyMatrix C(rows, std::vector<TrigPoly>(cols, TrigPoly::zero(reg)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t k = 0; k < inner; ++k) {
        C[i][j] += A[i][k] * B[k][j];
      }
    }
  }
  return C;
}

std::vector<TrigPoly> poly_mat_vec(const PolyMatrix& A,
                                   const std::vector<TrigPoly>& v) {
  if (A.empty() || A[0].size() != v.size()) {
    throw InvalidArgument("poly_mat_vec: dimension mismatch");
  }
  const auto& reg = A[0][0].registry();
  std::vector<TrigPoly> out(A.size(), TrigPoly::zero(reg));
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      out[i] += A[i][k] * v[k];
    }
  }
  return out;
}

PolyMatrix poly_transpose(const PolyMatrix& A) {
  if (A.empty()) return A;
  PolyMatrix T(A[0].size(), std::vector<TrigPoly>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < A[0].size(); ++j) {
      T[j][i] = A[i][j];
    }
  }
  return T;
}

bool poly_mat_equal(const PolyMatrix& A, const PolyMatrix& B) {
  if (A.size() != B.size()) return false;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != B[i].size()) return false;
    for (std::size_t j = 0; j < A[i].size(); ++j) {
      if (!(A[i][j] == B[i][j])) return false;
    }
  }
  return true;
}

}  // namespace extremalkit
