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

#ifndef EXTREMALKIT_RATIONAL_HPP_
#define EXTREMALKIT_RATIONAL_HPP_

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace extremalkit {

// Exact arbitrary-precision rational, kept normalized (gcd 1, positive
// denominator) by the backend. Everything symbolic in this library runs on
// this type; no rounding happens outside the explicit double paths.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "3", "-2", "3/5". Throws InvalidArgument on anything else
// (including a zero or negative denominator).
Rational parse_rational(std::string_view text);

// "3", "-2", "3/5" — integers print without the "/1".
std::string rational_string(const Rational& q);

double to_double(const Rational& q);

// Exact conversion of a finite double (binary expansion, no rounding).
Rational rational_from_double(double x);

}  // namespace extremalkit

#endif  // EXTREMALKIT_RATIONAL_HPP_
