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

#include "extremalkit/trigpoly.hpp"

#include <cmath>
#include <utility>

#include "extremalkit/errors.hpp"

namespace extremalkit {

bool Monomial::is_constant() const {
  for (auto e : poly) {
    if (e != 0) return false;
  }
  for (const auto& [a, e] : trig) {
    if (a != 0 || e != 0) return false;
  }
  return true;
}

int Monomial::degree_over(std::span<const std::size_t> poly_ordinals) const {
  int deg = 0;
  for (std::size_t k : poly_ordinals) deg += poly[k];
  return deg;
}

Monomial TrigPoly::unit_monomial() const {
  Monomial m;
  m.poly.assign(reg_->poly_count(), 0);
  m.trig.assign(reg_->angle_count(), {0, 0});
  return m;
}

TrigPoly TrigPoly::zero(RegistryPtr reg) { return TrigPoly(std::move(reg)); }

TrigPoly TrigPoly::constant(RegistryPtr reg, Rational value) {
  TrigPoly p(std::move(reg));
  if (value != 0) p.terms_.emplace(p.unit_monomial(), std::move(value));
  return p;
}

TrigPoly TrigPoly::variable(RegistryPtr reg, std::size_t var_index) {
  TrigPoly p(std::move(reg));
  if (var_index >= p.reg_->size()) throw InvalidArgument("variable index out of range");
  if (p.reg_->is_angle(var_index)) {
    throw InvalidArgument("angle variable '" + p.reg_->name(var_index) +
                          "' may only appear inside sin/cos");
  }
  Monomial m = p.unit_monomial();
  m.poly[p.reg_->poly_ordinal(var_index)] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

TrigPoly TrigPoly::cosine(RegistryPtr reg, std::size_t var_index) {
  TrigPoly p(std::move(reg));
  if (var_index >= p.reg_->size() || !p.reg_->is_angle(var_index)) {
    throw InvalidArgument("cos/sin require an angle variable");
  }
  Monomial m = p.unit_monomial();
  m.trig[p.reg_->angle_ordinal(var_index)] = {1, 0};
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

TrigPoly TrigPoly::sine(RegistryPtr reg, std::size_t var_index) {
  TrigPoly p(std::move(reg));
  if (var_index >= p.reg_->size() || !p.reg_->is_angle(var_index)) {
    throw InvalidArgument("cos/sin require an angle variable");
  }
  Monomial m = p.unit_monomial();
  m.trig[p.reg_->angle_ordinal(var_index)] = {0, 1};
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

const Rational* TrigPoly::as_constant() const {
  static const Rational kZero(0);
  if (terms_.empty()) return &kZero;
  if (terms_.size() == 1 && terms_.begin()->first.is_constant()) {
    return &terms_.begin()->second;
  }
  return nullptr;
}

void TrigPoly::check_same_registry(const TrigPoly& rhs) const {
  if (!compatible(reg_, rhs.reg_)) {
    throw InvalidArgument("mismatched variable registries");
  }
}

void TrigPoly::accumulate(Monomial m, Rational c) {
  if (c == 0) return;
  for (std::size_t a = 0; a < m.trig.size(); ++a) {
    if (m.trig[a][1] >= 2) {
      // sin^e = sin^(e-2) * (1 - cos^2)
      Monomial lower = m;
      lower.trig[a][1] -= 2;
      Monomial raised = lower;
      raised.trig[a][0] += 2;
      accumulate(std::move(lower), c);
      accumulate(std::move(raised), -c);
      return;
    }
  }
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TrigPoly TrigPoly::operator-() const {
  TrigPoly out(reg_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

TrigPoly TrigPoly::operator+(const TrigPoly& rhs) const {
  check_same_registry(rhs);
  TrigPoly out = *this;
  for (const auto& [m, c] : rhs.terms_) out.accumulate(m, c);
  return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& rhs) const {
  check_same_registry(rhs);
  TrigPoly out = *this;
  for (const auto& [m, c] : rhs.terms_) out.accumulate(m, -c);
  return out;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& rhs) {
  check_same_registry(rhs);
  for (const auto& [m, c] : rhs.terms_) accumulate(m, c);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& rhs) {
  check_same_registry(rhs);
  for (const auto& [m, c] : rhs.terms_) accumulate(m, -c);
  return *this;
}

TrigPoly TrigPoly::operator*(const TrigPoly& rhs) const {
  check_same_registry(rhs);
  TrigPoly out(reg_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      Monomial m = ma;
      for (std::size_t k = 0; k < m.poly.size(); ++k) m.poly[k] += mb.poly[k];
      for (std::size_t a = 0; a < m.trig.size(); ++a) {
        m.trig[a][0] += mb.trig[a][0];
        m.trig[a][1] += mb.trig[a][1];
      }
      out.accumulate(std::move(m), ca * cb);
    }
  }
  return out;
}

TrigPoly TrigPoly::operator*(const Rational& c) const {
  TrigPoly out(reg_);
  if (c == 0) return out;
  for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * c);
  return out;
}

TrigPoly TrigPoly::pow(int exponent) const {
  if (exponent < 0) throw InvalidArgument("negative exponent");
  TrigPoly out = constant(reg_, Rational(1));
  TrigPoly base = *this;
  int e = exponent;
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

bool TrigPoly::operator==(const TrigPoly& rhs) const {
  if (!compatible(reg_, rhs.reg_)) return false;
  return terms_ == rhs.terms_;
}

TrigPoly TrigPoly::derivative(std::size_t var_index) const {
  if (var_index >= reg_->size()) {
    throw InvalidArgument("unknown variable index in derivative");
  }
  TrigPoly out(reg_);
  if (reg_->is_angle(var_index)) {
    const std::size_t a = reg_->angle_ordinal(var_index);
    for (const auto& [m, c] : terms_) {
      const std::int32_t A = m.trig[a][0];
      const std::int32_t E = m.trig[a][1];
      if (E == 0) {
        if (A == 0) continue;
        // d(cos^A) = -A cos^(A-1) sin
        Monomial d = m;
        d.trig[a] = {A - 1, 1};
        out.accumulate(std::move(d), c * Rational(-A));
      } else {
        // d(cos^A sin) = -A cos^(A-1) sin^2 + cos^(A+1); the sin^2 factor
        // is reduced by accumulate().
        if (A > 0) {
          Monomial d1 = m;
          d1.trig[a] = {A - 1, 2};
          out.accumulate(std::move(d1), c * Rational(-A));
        }
        Monomial d2 = m;
        d2.trig[a] = {A + 1, 0};
        out.accumulate(std::move(d2), c);
      }
    }
  } else {
    const std::size_t k = reg_->poly_ordinal(var_index);
    for (const auto& [m, c] : terms_) {
      const std::int32_t e = m.poly[k];
      if (e == 0) continue;
      Monomial d = m;
      d.poly[k] = e - 1;
      out.accumulate(std::move(d), c * Rational(e));
    }
  }
  return out;
}

TrigPoly TrigPoly::substitute(
    const std::map<std::size_t, TrigPoly>& replacements) const {
  std::map<std::size_t, const TrigPoly*> by_ordinal;
  for (const auto& [var, repl] : replacements) {
    if (var >= reg_->size()) throw InvalidArgument("substitute: variable out of range");
    if (reg_->is_angle(var)) {
      throw InvalidArgument("substitute: cannot substitute an angle variable");
    }
    if (!compatible(reg_, repl.registry())) {
      throw InvalidArgument("substitute: replacement over a different registry");
    }
    by_ordinal.emplace(static_cast<std::size_t>(reg_->poly_ordinal(var)), &repl);
  }
  TrigPoly out(reg_);
  for (const auto& [m, c] : terms_) {
    Monomial base = m;
    TrigPoly term(reg_);
    for (const auto& [ord, repl] : by_ordinal) base.poly[ord] = 0;
    term.accumulate(std::move(base), c);
    for (const auto& [ord, repl] : by_ordinal) {
      const std::int32_t e = m.poly[ord];
      if (e > 0) term = term * repl->pow(e);
    }
    out += term;
  }
  return out;
}

Rational TrigPoly::evaluate(const ExactPoint& point) const {
  point.validate(*reg_);
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t k = 0; k < m.poly.size(); ++k) {
      for (std::int32_t e = 0; e < m.poly[k]; ++e) v *= point.poly[k];
    }
    for (std::size_t a = 0; a < m.trig.size(); ++a) {
      for (std::int32_t e = 0; e < m.trig[a][0]; ++e) v *= point.trig[a].first;
      if (m.trig[a][1]) v *= point.trig[a].second;
    }
    total += v;
  }
  return total;
}

double TrigPoly::evaluate(std::span<const double> state) const {
  if (state.size() != reg_->size()) {
    throw InvalidArgument("evaluation point does not assign every variable");
  }
  double total = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = to_double(c);
    for (std::size_t k = 0; k < m.poly.size(); ++k) {
      const double x = state[reg_->poly_var(k)];
      for (std::int32_t e = 0; e < m.poly[k]; ++e) v *= x;
    }
    for (std::size_t a = 0; a < m.trig.size(); ++a) {
      const double t = state[reg_->angle_var(a)];
      if (m.trig[a][0]) {
        const double ct = std::cos(t);
        for (std::int32_t e = 0; e < m.trig[a][0]; ++e) v *= ct;
      }
      if (m.trig[a][1]) v *= std::sin(t);
    }
    total += v;
  }
  return total;
}

int TrigPoly::degree_in(std::span<const std::size_t> poly_ordinals) const {
  int deg = -1;
  for (const auto& [m, c] : terms_) {
    deg = std::max(deg, m.degree_over(poly_ordinals));
  }
  return deg;
}

bool TrigPoly::depends_on(std::size_t var_index) const {
  if (var_index >= reg_->size()) return false;
  if (reg_->is_angle(var_index)) {
    const std::size_t a = reg_->angle_ordinal(var_index);
    for (const auto& [m, c] : terms_) {
      if (m.trig[a][0] != 0 || m.trig[a][1] != 0) return true;
    }
  } else {
    const std::size_t k = reg_->poly_ordinal(var_index);
    for (const auto& [m, c] : terms_) {
      if (m.poly[k] != 0) return true;
    }
  }
  return false;
}

std::string TrigPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;

    std::vector<std::string> factors;
    for (std::size_t k = 0; k < m.poly.size(); ++k) {
      if (m.poly[k] == 0) continue;
      std::string f = reg_->name(reg_->poly_var(k));
      if (m.poly[k] > 1) f += "^" + std::to_string(m.poly[k]);
      factors.push_back(std::move(f));
    }
    for (std::size_t a = 0; a < m.trig.size(); ++a) {
      const std::string& nm = reg_->name(reg_->angle_var(a));
      if (m.trig[a][0] > 0) {
        std::string f = "cos(" + nm + ")";
        if (m.trig[a][0] > 1) f += "^" + std::to_string(m.trig[a][0]);
        factors.push_back(std::move(f));
      }
      if (m.trig[a][1] > 0) factors.push_back("sin(" + nm + ")");
    }

    std::string body;
    // A leading "-x^2" would re-parse as (-x)^2 under the grammar, so the
    // coefficient is always spelled out for a negative leading term.
    const bool show_coeff =
        mag != 1 || factors.empty() || (first && negative);
    if (show_coeff) body = rational_string(mag);
    for (const auto& f : factors) {
      if (!body.empty()) body += "*";
      body += f;
    }

    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace extremalkit
