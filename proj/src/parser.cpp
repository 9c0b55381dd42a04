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

#include "extremalkit/parser.hpp"

#include <cctype>
#include <string>

#include "extremalkit/errors.hpp"

namespace extremalkit {

namespace {

class Parser {
 public:
  Parser(std::string_view text, RegistryPtr reg)
      : text_(text), reg_(std::move(reg)) {}

  TrigPoly run() {
    TrigPoly p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      fail("unexpected trailing input");
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  TrigPoly parse_expr() {
    TrigPoly p = parse_term();
    while (true) {
      if (eat('+')) {
        p += parse_term();
      } else if (eat('-')) {
        p -= parse_term();
      } else {
        return p;
      }
    }
  }

  TrigPoly parse_term() {
    TrigPoly p = parse_factor();
    while (eat('*')) p = p * parse_factor();
    return p;
  }

  TrigPoly parse_factor() {
    TrigPoly base = parse_base();
    if (eat('^')) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '-') {
        fail("negative exponent");
      }
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected integer exponent");
      }
      long e = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + (text_[pos_] - '0');
        if (e > 1'000'000) fail("exponent too large");
        ++pos_;
      }
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  TrigPoly parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -parse_base();
    }
    if (c == '(') {
      ++pos_;
      TrigPoly p = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return TrigPoly::constant(reg_, parse_rational_literal());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      std::string ident = parse_identifier();
      if (ident == "sin" || ident == "cos") {
        if (!eat('(')) fail("expected '(' after " + ident);
        skip_ws();
        const std::size_t var_pos = pos_;
        std::string var = parse_identifier();
        if (var.empty()) fail("expected variable name");
        auto idx = reg_->find(var);
        if (!idx) {
          throw ParseError("unknown variable '" + var + "'", var_pos);
        }
        if (!reg_->is_angle(*idx)) {
          throw ParseError(ident + " applied to non-angle variable '" + var + "'",
                           var_pos);
        }
        if (!eat(')')) fail("expected ')'");
        return ident == "sin" ? TrigPoly::sine(reg_, *idx)
                              : TrigPoly::cosine(reg_, *idx);
      }
      auto idx = reg_->find(ident);
      if (!idx) {
        throw ParseError("unknown variable '" + ident + "'", start);
      }
      if (reg_->is_angle(*idx)) {
        throw ParseError(
            "angle variable '" + ident + "' may only appear inside sin/cos",
            start);
      }
      return TrigPoly::variable(reg_, *idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string parse_identifier() {
    std::string ident;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ident += text_[pos_++];
    }
    return ident;
  }

  Rational parse_rational_literal() {
    Integer num = parse_integer_literal();
    skip_ws();
    // '/' binds to the literal only when directly followed by digits; the
    // grammar has no division operator, so this is unambiguous.
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected positive integer denominator");
      }
      Integer den = parse_integer_literal();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  Integer parse_integer_literal() {
    Integer v = 0;
    bool any = false;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      any = true;
      ++pos_;
    }
    if (!any) fail("expected integer");
    if (pos_ < text_.size() && text_[pos_] == '.') {
      fail("non-integer literal; write rationals as p/q");
    }
    return v;
  }

  std::string_view text_;
  RegistryPtr reg_;
  std::size_t pos_ = 0;
};

}  // namespace

TrigPoly parse_expr(std::string_view text, const RegistryPtr& registry) {
  return Parser(text, registry).run();
}

}  // namespace extremalkit
