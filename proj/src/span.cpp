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

#include "extremalkit/span.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "extremalkit/errors.hpp"
#include "extremalkit/linalg.hpp"

namespace extremalkit {

namespace {

void require_fields(std::span<const VectorField> fields) {
  if (fields.empty()) throw InvalidArgument("span test requires at least one field");
}

std::vector<std::vector<double>> value_rows_float(
    std::span<const VectorField> fields, std::span<const double> state) {
  std::vector<std::vector<double>> rows;
  rows.reserve(fields.size());
  for (const auto& f : fields) {
    Eigen::VectorXd v = f.evaluate(state);
    rows.emplace_back(v.data(), v.data() + v.size());
  }
  return rows;
}

int float_rank(const std::vector<std::vector<double>>& rows, double tol) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol * sv[0]) ++rank;
  }
  return rank;
}

}  // namespace

SpanReport span_rank(std::span<const VectorField> fields,
                     const ExactPoint& point) {
  require_fields(fields);
  const auto& reg = fields.front().registry();
  point.validate(*reg);

  SpanReport report;
  report.dimension = static_cast<int>(reg->size());
  report.exact = true;
  report.tol = 0.0;
  report.point = point.to_doubles(*reg);

  RationalMatrix rows;
  rows.reserve(fields.size());
  for (const auto& f : fields) {
    if (!compatible(reg, f.registry())) {
      throw InvalidArgument("span_rank: mismatched registries");
    }
    rows.push_back(f.evaluate(point));
    std::vector<double> drow;
    drow.reserve(rows.back().size());
    for (const auto& q : rows.back()) drow.push_back(to_double(q));
    report.matrix.push_back(std::move(drow));
  }
  report.rank = rational_rank(std::move(rows));
  return report;
}

SpanReport span_rank(std::span<const VectorField> fields,
                     std::span<const double> state, double tol) {
  require_fields(fields);
  const auto& reg = fields.front().registry();
  if (state.size() != reg->size()) {
    throw InvalidArgument("span_rank: state does not match registry");
  }

  SpanReport report;
  report.dimension = static_cast<int>(reg->size());
  report.exact = false;
  report.tol = tol;
  report.point.assign(state.begin(), state.end());
  report.matrix = value_rows_float(fields, state);
  report.rank = float_rank(report.matrix, tol);
  return report;
}

SpanReport span_membership(const VectorField& target,
                           std::span<const VectorField> candidates,
                           const ExactPoint& point) {
  SpanReport report = span_rank(candidates, point);
  report.membership_mode = true;

  const std::vector<Rational> b = target.evaluate(point);
  const std::size_t n = b.size();
  RationalMatrix a(n, std::vector<Rational>(candidates.size()));
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const std::vector<Rational> col = candidates[j].evaluate(point);
    for (std::size_t i = 0; i < n; ++i) a[i][j] = col[i];
  }
  const ExactLeastSquares lsq = rational_least_squares(a, b);
  report.membership_exact_zero = lsq.residual_norm_sq == 0;

  Rational bnorm(0);
  for (const auto& v : b) bnorm += v * v;
  const double denom = std::max(1.0, std::sqrt(to_double(bnorm)));
  report.membership_residual =
      std::sqrt(to_double(lsq.residual_norm_sq)) / denom;
  return report;
}

SpanReport span_membership(const VectorField& target,
                           std::span<const VectorField> candidates,
                           std::span<const double> state, double tol) {
  SpanReport report = span_rank(candidates, state, tol);
  report.membership_mode = true;

  Eigen::VectorXd b = target.evaluate(state);
  Eigen::MatrixXd a(b.size(), static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    a.col(static_cast<Eigen::Index>(j)) = candidates[j].evaluate(state);
  }
  Eigen::VectorXd x =
      a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  const double res = (a * x - b).norm();
  report.membership_residual = res / std::max(1.0, b.norm());
  report.membership_exact_zero = false;
  return report;
}

}  // namespace extremalkit
