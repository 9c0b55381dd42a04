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

#ifndef EXTREMALKIT_FDCHECK_HPP_
#define EXTREMALKIT_FDCHECK_HPP_

#include <functional>

#include <Eigen/Core>

#include "extremalkit/vector_field.hpp"

namespace extremalkit {

// Numeric cross-checking helpers. These differentiate field *values* with
// central differences and never touch the symbolic derivative code, so they
// serve as an independent oracle for the bracket engine.

using FieldFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

FieldFn field_fn(const VectorField& X);

Eigen::MatrixXd fd_jacobian(const FieldFn& X, const Eigen::VectorXd& x,
                            double h);

// [X, Y](x) = (DY)(x) X(x) - (DX)(x) Y(x) with both Jacobians from central
// differences. Returned as a FieldFn so brackets nest.
FieldFn fd_bracket(FieldFn X, FieldFn Y, double h);

inline Eigen::VectorXd fd_bracket_at(const FieldFn& X, const FieldFn& Y,
                                     const Eigen::VectorXd& x, double h) {
  return fd_bracket(X, Y, h)(x);
}

}  // namespace extremalkit

#endif  // EXTREMALKIT_FDCHECK_HPP_
