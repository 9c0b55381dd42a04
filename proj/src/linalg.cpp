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

#include "extremalkit/linalg.hpp"

#include <cstddef>

#include "extremalkit/errors.hpp"

namespace extremalkit {

int rational_rank(RationalMatrix a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  int rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = pivot_row;
    while (sel < rows && a[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[pivot_row]);
    const Rational inv_pivot = 1 / a[pivot_row][col];
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      if (a[r][col] == 0) continue;
      const Rational factor = a[r][col] * inv_pivot;
      for (std::size_t c = col; c < cols; ++c) {
        a[r][c] -= factor * a[pivot_row][c];
      }
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

Rational rational_det(RationalMatrix a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw InvalidArgument("rational_det: not square");
  }
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) return Rational(0);
    if (sel != col) {
      std::swap(a[sel], a[col]);
      det = -det;
    }
    det *= a[col][col];
    const Rational inv_pivot = 1 / a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational factor = a[r][col] * inv_pivot;
      for (std::size_t c = col; c < n; ++c) {
        a[r][c] -= factor * a[col][c];
      }
    }
  }
  return det;
}

std::optional<std::vector<Rational>> rational_solve(
    const RationalMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InvalidArgument("rational_solve: size mismatch");
  RationalMatrix aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (aug[i].size() != n) throw InvalidArgument("rational_solve: not square");
    aug[i].push_back(b[i]);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && aug[sel][col] == 0) ++sel;
    if (sel == n) return std::nullopt;
    std::swap(aug[sel], aug[col]);
    const Rational inv_pivot = 1 / aug[col][col];
    for (std::size_t c = col; c <= n; ++c) aug[col][c] *= inv_pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      const Rational factor = aug[r][col];
      for (std::size_t c = col; c <= n; ++c) {
        aug[r][c] -= factor * aug[col][c];
      }
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

ExactLeastSquares rational_least_squares(const RationalMatrix& a,
                                         const std::vector<Rational>& b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) {
    throw InvalidArgument("rational_least_squares: size mismatch");
  }
  const std::size_t cols = rows == 0 ? 0 : a[0].size();

  ExactLeastSquares out;
  out.solution.assign(cols, Rational(0));
  out.residual.assign(rows, Rational(0));
  if (cols > 0) {
    // Normal equations G x = h with G = A^t A, h = A^t b; always consistent.
    RationalMatrix aug(cols, std::vector<Rational>(cols + 1, Rational(0)));
    for (std::size_t i = 0; i < cols; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        Rational s(0);
        for (std::size_t r = 0; r < rows; ++r) s += a[r][i] * a[r][j];
        aug[i][j] = std::move(s);
      }
      Rational h(0);
      for (std::size_t r = 0; r < rows; ++r) h += a[r][i] * b[r];
      aug[i][cols] = std::move(h);
    }
    // RREF with free variables left at zero.
    std::vector<std::size_t> pivot_col;
    std::size_t pr = 0;
    for (std::size_t col = 0; col < cols && pr < cols; ++col) {
      std::size_t sel = pr;
      while (sel < cols && aug[sel][col] == 0) ++sel;
      if (sel == cols) continue;
      std::swap(aug[sel], aug[pr]);
      const Rational inv_pivot = 1 / aug[pr][col];
      for (std::size_t c = col; c <= cols; ++c) aug[pr][c] *= inv_pivot;
      for (std::size_t r = 0; r < cols; ++r) {
        if (r == pr || aug[r][col] == 0) continue;
        const Rational factor = aug[r][col];
        for (std::size_t c = col; c <= cols; ++c) {
          aug[r][c] -= factor * aug[pr][c];
        }
      }
      pivot_col.push_back(col);
      ++pr;
    }
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      out.solution[pivot_col[i]] = aug[i][cols];
    }
  }

  out.residual_norm_sq = Rational(0);
  for (std::size_t r = 0; r < rows; ++r) {
    Rational v = b[r];
    for (std::size_t c = 0; c < cols; ++c) v -= a[r][c] * out.solution[c];
    out.residual_norm_sq += v * v;
    out.residual[r] = std::move(v);
  }
  return out;
}

}  // namespace extremalkit
