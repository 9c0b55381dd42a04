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

#ifndef EXTREMALKIT_LINALG_HPP_
#define EXTREMALKIT_LINALG_HPP_

#include <optional>
#include <vector>

#include "extremalkit/rational.hpp"

namespace extremalkit {

// Dense row-major rational matrix, used for the exact rank/solve paths.
using RationalMatrix = std::vector<std::vector<Rational>>;

int rational_rank(RationalMatrix a);

Rational rational_det(RationalMatrix a);

// Square solve; nullopt when the matrix is singular.
std::optional<std::vector<Rational>> rational_solve(const RationalMatrix& a,
                                                    const std::vector<Rational>& b);

// Minimum least-squares solve of A x ~ b via the normal equations (free
// variables pinned to zero; the projection, and hence the residual, is
// unique regardless of that choice).
struct ExactLeastSquares {
  std::vector<Rational> solution;
  std::vector<Rational> residual;  // b - A x
  Rational residual_norm_sq;
};
ExactLeastSquares rational_least_squares(const RationalMatrix& a,
                                         const std::vector<Rational>& b);

}  // namespace extremalkit

#endif  // EXTREMALKIT_LINALG_HPP_
