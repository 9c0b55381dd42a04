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

#include "extremalkit/fdcheck.hpp"

#include <span>
#include <utility>

namespace extremalkit {

FieldFn field_fn(const VectorField& X) {
  return [X](const Eigen::VectorXd& x) {
    return X.evaluate(std::span<const double>(x.data(), x.size()));
  };
}

Eigen::MatrixXd fd_jacobian(const FieldFn& X, const Eigen::VectorXd& x,
                            double h) {
  const Eigen::Index n = x.size();
  const Eigen::VectorXd probe = X(x);
  Eigen::MatrixXd J(probe.size(), n);
  Eigen::VectorXd hi = x, lo = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    hi[j] = x[j] + h;
    lo[j] = x[j] - h;
    J.col(j) = (X(hi) - X(lo)) / (2.0 * h);
    hi[j] = x[j];
    lo[j] = x[j];
  }
  return J;
}

FieldFn fd_bracket(FieldFn X, FieldFn Y, double h) {
  return [X = std::move(X), Y = std::move(Y),
          h](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return fd_jacobian(Y, x, h) * X(x) - fd_jacobian(X, x, h) * Y(x);
  };
}

}  // namespace extremalkit
