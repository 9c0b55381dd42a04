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

#include "extremalkit/registry.hpp"

#include <cmath>
#include <unordered_set>

#include "extremalkit/errors.hpp"

namespace extremalkit {

VariableRegistry::VariableRegistry(
    std::vector<std::pair<std::string, VarKind>> vars, std::size_t split_index)
    : split_(split_index) {
  if (split_index > vars.size()) {
    throw InvalidArgument("split_index exceeds variable count");
  }
  std::unordered_set<std::string> seen;
  names_.reserve(vars.size());
  kinds_.reserve(vars.size());
  poly_of_var_.reserve(vars.size());
  angle_of_var_.reserve(vars.size());
  for (auto& [name, kind] : vars) {
    if (name.empty()) throw InvalidArgument("empty variable name");
    if (!seen.insert(name).second) {
      throw InvalidArgument("duplicate variable name '" + name + "'");
    }
    if (kind == VarKind::Angle) {
      angle_of_var_.push_back(static_cast<int>(angle_vars_.size()));
      poly_of_var_.push_back(-1);
      angle_vars_.push_back(names_.size());
    } else {
      poly_of_var_.push_back(static_cast<int>(poly_vars_.size()));
      angle_of_var_.push_back(-1);
      poly_vars_.push_back(names_.size());
    }
    names_.push_back(std::move(name));
    kinds_.push_back(kind);
  }
}

std::optional<std::size_t> VariableRegistry::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VariableRegistry::require(std::string_view name) const {
  auto idx = find(name);
  if (!idx) throw InvalidArgument("unknown variable '" + std::string(name) + "'");
  return *idx;
}

bool VariableRegistry::operator==(const VariableRegistry& other) const {
  return names_ == other.names_ && kinds_ == other.kinds_ &&
         split_ == other.split_;
}

bool compatible(const RegistryPtr& a, const RegistryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

ExactPoint ExactPoint::zeros(const VariableRegistry& reg) {
  ExactPoint pt;
  pt.poly.assign(reg.poly_count(), Rational(0));
  pt.trig.assign(reg.angle_count(), {Rational(1), Rational(0)});
  return pt;
}

void ExactPoint::validate(const VariableRegistry& reg) const {
  if (poly.size() != reg.poly_count() || trig.size() != reg.angle_count()) {
    throw InvalidArgument("evaluation point does not assign every variable");
  }
  for (const auto& [c, s] : trig) {
    if (c * c + s * s != 1) {
      throw InvalidArgument("angle value (cos, sin) = (" + rational_string(c) +
                            ", " + rational_string(s) +
                            ") is not on the unit circle");
    }
  }
}

std::vector<double> ExactPoint::to_doubles(const VariableRegistry& reg) const {
  std::vector<double> out(reg.size(), 0.0);
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if (reg.is_angle(i)) {
      const auto& [c, s] = trig[reg.angle_ordinal(i)];
      out[i] = std::atan2(to_double(s), to_double(c));
    } else {
      out[i] = to_double(poly[reg.poly_ordinal(i)]);
    }
  }
  return out;
}

void ExactPoint::set(const VariableRegistry& reg, std::string_view name,
                     Rational value) {
  std::size_t i = reg.require(name);
  if (reg.is_angle(i)) {
    throw InvalidArgument("variable '" + std::string(name) +
                          "' is an angle; use set_angle");
  }
  poly[reg.poly_ordinal(i)] = std::move(value);
}

void ExactPoint::set_angle(const VariableRegistry& reg, std::string_view name,
                           Rational cos_value, Rational sin_value) {
  std::size_t i = reg.require(name);
  if (!reg.is_angle(i)) {
    throw InvalidArgument("variable '" + std::string(name) + "' is not an angle");
  }
  trig[reg.angle_ordinal(i)] = {std::move(cos_value), std::move(sin_value)};
}

}  // namespace extremalkit
