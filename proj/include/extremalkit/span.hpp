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

#ifndef EXTREMALKIT_SPAN_HPP_
#define EXTREMALKIT_SPAN_HPP_

#include <span>
#include <vector>

#include "extremalkit/vector_field.hpp"

namespace extremalkit {

inline constexpr double kDefaultRankTol = 1e-9;

// Pointwise span evidence: the stacked field values at one state, their
// rank, and (in membership mode) the least-squares residual of expressing
// the target value in the candidate values.
//
// The exact path reports rank from rational Gaussian elimination with no
// tolerance (tol = 0); the float path thresholds singular values at
// tol * sigma_max.
struct SpanReport {
  std::vector<double> point;                 // state echo
  std::vector<std::vector<double>> matrix;   // rows = field values
  int rank = 0;
  int dimension = 0;
  bool exact = false;
  double tol = 0.0;
  bool full_rank() const { return rank == dimension; }

  // Membership mode only.
  bool membership_mode = false;
  double membership_residual = 0.0;  // relative residual, 0 on exact zero
  bool membership_exact_zero = false;
  bool member(double residual_tol) const {
    return exact ? membership_exact_zero : membership_residual <= residual_tol;
  }
};

SpanReport span_rank(std::span<const VectorField> fields, const ExactPoint& point);
SpanReport span_rank(std::span<const VectorField> fields,
                     std::span<const double> state,
                     double tol = kDefaultRankTol);

// Minimum-norm least-squares residual of expressing target(point) in the
// candidate field values; relative to max(1, |target|).
SpanReport span_membership(const VectorField& target,
                           std::span<const VectorField> candidates,
                           const ExactPoint& point);
SpanReport span_membership(const VectorField& target,
                           std::span<const VectorField> candidates,
                           std::span<const double> state,
                           double tol = kDefaultRankTol);

}  // namespace extremalkit

#endif  // EXTREMALKIT_SPAN_HPP_
