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

#include "extremalkit/rational.hpp"

#include <cctype>
#include <cmath>

#include "extremalkit/errors.hpp"

namespace extremalkit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  if (!all_digits(num)) {
    throw InvalidArgument("invalid rational literal '" + std::string(text) + "'");
  }
  Integer n{std::string(num)};
  Integer d = 1;
  if (slash != std::string_view::npos) {
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(den)) {
      throw InvalidArgument("invalid rational literal '" + std::string(text) + "'");
    }
    d = Integer{std::string(den)};
    if (d <= 0) {
      throw InvalidArgument("denominator must be positive in '" + std::string(text) + "'");
    }
  }
  Rational q(n, d);
  return negative ? Rational(-q) : q;
}

std::string rational_string(const Rational& q) {
  std::string out = numerator(q).str();
  if (denominator(q) != 1) {
    out += "/";
    out += denominator(q).str();
  }
  return out;
}

double to_double(const Rational& q) { return q.template convert_to<double>(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw InvalidArgument("cannot convert non-finite double to rational");
  }
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 53 doublings turn the mantissa into an integer exactly.
  Integer m = 0;
  bool neg = mant < 0;
  mant = std::fabs(mant);
  for (int i = 0; i < 53; ++i) {
    mant *= 2.0;
    double ip = 0.0;
    mant = std::modf(mant, &ip);
    m = (m << 1) + Integer(static_cast<int>(ip));
  }
  exp -= 53;
  Rational q(m);
  if (exp > 0) {
    q *= Rational(Integer(1) << exp);
  } else if (exp < 0) {
    q /= Rational(Integer(1) << (-exp));
  }
  return neg ? Rational(-q) : q;
}

}  // namespace extremalkit
