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

#ifndef EXTREMALKIT_ERRORS_HPP_
#define EXTREMALKIT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace extremalkit {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expression-grammar violation; `position` is a 0-based offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Violated precondition or malformed input (registry mismatch, bad chain, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A linear solve hit a (numerically) singular system matrix.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Integration aborted mid-run.
class IntegrationError : public Error {
 public:
  enum class Kind { AdjointVanished, NonFinite, Chattering };

  IntegrationError(Kind kind, const std::string& message, double t)
      : Error(message + " (t = " + std::to_string(t) + ")"),
        kind_(kind),
        time_(t) {}
  Kind kind() const { return kind_; }
  double time() const { return time_; }

 private:
  Kind kind_;
  double time_;
};

}  // namespace extremalkit

#endif  // EXTREMALKIT_ERRORS_HPP_
