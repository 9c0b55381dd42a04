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

#ifndef EXTREMALKIT_REGISTRY_HPP_
#define EXTREMALKIT_REGISTRY_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "extremalkit/rational.hpp"

namespace extremalkit {

enum class VarKind { Polynomial, Angle };

class VariableRegistry;
using RegistryPtr = std::shared_ptr<const VariableRegistry>;

// Ordered set of state variables with a block split x = (x1, x2).
//
// The first `split_index` variables form the x1 block, the rest the x2
// block (for mechanical systems x1 holds configuration-like variables and
// x2 the transformed velocities, n = 2r). Variables are either
// polynomial-kind or angle-kind; angle variables may only ever appear
// inside sin/cos in any polynomial over this registry.
class VariableRegistry {
 public:
  VariableRegistry(std::vector<std::pair<std::string, VarKind>> vars,
                   std::size_t split_index);

  static RegistryPtr create(std::vector<std::pair<std::string, VarKind>> vars,
                            std::size_t split_index) {
    return std::make_shared<const VariableRegistry>(std::move(vars), split_index);
  }

  std::size_t size() const { return names_.size(); }
  std::size_t split_index() const { return split_; }
  std::size_t x2_size() const { return size() - split_; }

  const std::string& name(std::size_t i) const { return names_[i]; }
  VarKind kind(std::size_t i) const { return kinds_[i]; }
  bool is_angle(std::size_t i) const { return kinds_[i] == VarKind::Angle; }
  bool in_x2_block(std::size_t i) const { return i >= split_; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Like find() but throws InvalidArgument listing the name.
  std::size_t require(std::string_view name) const;

  std::size_t poly_count() const { return poly_vars_.size(); }
  std::size_t angle_count() const { return angle_vars_.size(); }
  // Ordinal of variable i within its kind class; -1 if the other kind.
  int poly_ordinal(std::size_t i) const { return poly_of_var_[i]; }
  int angle_ordinal(std::size_t i) const { return angle_of_var_[i]; }
  // Variable index of the k-th polynomial / angle variable.
  std::size_t poly_var(std::size_t k) const { return poly_vars_[k]; }
  std::size_t angle_var(std::size_t k) const { return angle_vars_[k]; }

  bool operator==(const VariableRegistry& other) const;

 private:
  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
  std::size_t split_ = 0;
  std::vector<int> poly_of_var_;
  std::vector<int> angle_of_var_;
  std::vector<std::size_t> poly_vars_;
  std::vector<std::size_t> angle_vars_;
};

// True when two polynomials/fields may be combined: same object or equal
// content.
bool compatible(const RegistryPtr& a, const RegistryPtr& b);

// Exact evaluation point. Polynomial variables carry a rational value;
// each angle variable carries an exact (cos, sin) pair that must lie on
// the unit circle (exactness for a transcendental angle is impossible, so
// the caller supplies the circle point directly).
struct ExactPoint {
  std::vector<Rational> poly;                        // per poly ordinal
  std::vector<std::pair<Rational, Rational>> trig;   // per angle ordinal

  static ExactPoint zeros(const VariableRegistry& reg);
  // Throws InvalidArgument if sizes mismatch or a trig pair is off-circle.
  void validate(const VariableRegistry& reg) const;
  // Per-variable double view (angle slot = atan2(sin, cos)).
  std::vector<double> to_doubles(const VariableRegistry& reg) const;

  void set(const VariableRegistry& reg, std::string_view name, Rational value);
  void set_angle(const VariableRegistry& reg, std::string_view name,
                 Rational cos_value, Rational sin_value);
};

}  // namespace extremalkit

#endif  // EXTREMALKIT_REGISTRY_HPP_
