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

#include "extremalkit/mechanical.hpp"

#include <map>
#include <utility>

#include "extremalkit/errors.hpp"
#include "extremalkit/linalg.hpp"
#include "extremalkit/witness.hpp"

namespace extremalkit {

namespace {

void check_matrix_dims(const PolyMatrix& a, std::size_t rows, std::size_t cols,
                       const std::string& name) {
  if (a.size() != rows) {
    throw InvalidArgument(name + ": expected " + std::to_string(rows) + " rows");
  }
  for (const auto& row : a) {
    if (row.size() != cols) {
      throw InvalidArgument(name + ": expected " + std::to_string(cols) +
                            " columns");
    }
  }
}

void check_x1_only(const PolyMatrix& a, const RegistryPtr& reg,
                   const std::string& name) {
  for (const auto& row : a) {
    for (const auto& entry : row) {
      for (std::size_t v = reg->split_index(); v < reg->size(); ++v) {
        if (entry.depends_on(v)) {
          throw InvalidArgument(name + " must depend on x1 variables only");
        }
      }
    }
  }
}

void check_bounds(const std::vector<Bounds>& bounds, std::size_t m) {
  if (bounds.size() != m) {
    throw InvalidArgument("expected one bound pair per control channel");
  }
  for (const auto& b : bounds) {
    if (!(b.lo < 0 && 0 < b.hi)) {
      throw InvalidArgument("control bounds must satisfy alpha < 0 < beta");
    }
  }
}

// det and adjugate by cofactor expansion; r stays small for mechanical
// systems so this is fine.
TrigPoly poly_det(const PolyMatrix& a, const RegistryPtr& reg) {
  const std::size_t n = a.size();
  if (n == 0) return TrigPoly::constant(reg, Rational(1));
  if (n == 1) return a[0][0];
  TrigPoly det = TrigPoly::zero(reg);
  for (std::size_t j = 0; j < n; ++j) {
    PolyMatrix minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<TrigPoly> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(a[i][c]);
      }
      minor.push_back(std::move(row));
    }
    TrigPoly cof = a[0][j] * poly_det(minor, reg);
    if (j % 2 == 0) {
      det += cof;
    } else {
      det -= cof;
    }
  }
  return det;
}

PolyMatrix poly_adjugate(const PolyMatrix& a, const RegistryPtr& reg) {
  const std::size_t n = a.size();
  PolyMatrix adj(n, std::vector<TrigPoly>(n, TrigPoly::zero(reg)));
  if (n == 1) {
    adj[0][0] = TrigPoly::constant(reg, Rational(1));
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor;
      minor.reserve(n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<TrigPoly> row;
        row.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c) {
          if (c != j) row.push_back(a[r][c]);
        }
        minor.push_back(std::move(row));
      }
      TrigPoly cof = poly_det(minor, reg);
      adj[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return adj;
}

RationalMatrix eval_matrix(const PolyMatrix& a, const ExactPoint& pt) {
  RationalMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].reserve(a[i].size());
    for (const auto& p : a[i]) out[i].push_back(p.evaluate(pt));
  }
  return out;
}

}  // namespace

MechanicalSystemSpec MechanicalSystemSpec::trivial(RegistryPtr reg) {
  MechanicalSystemSpec spec;
  const std::size_t r = reg->split_index();
  spec.reg = reg;
  spec.r = r;
  spec.m = r;
  spec.M = poly_identity(reg, r);
  spec.M_inv = poly_identity(reg, r);
  spec.N.assign(r, TrigPoly::zero(reg));
  spec.Q = poly_identity(reg, r);
  spec.dpsi_dq = poly_identity(reg, r);
  spec.P = poly_identity(reg, r);
  spec.P_inv = poly_identity(reg, r);
  spec.dP_dq.assign(r, poly_zeros(reg, r, r));
  return spec;
}

AffineSystem make_raw_system(RegistryPtr reg, VectorField drift,
                             std::vector<VectorField> controls,
                             std::vector<Bounds> bounds) {
  check_bounds(bounds, controls.size());
  for (const auto& g : controls) {
    if (!compatible(reg, g.registry())) {
      throw InvalidArgument("control field over a different registry");
    }
  }
  if (!compatible(reg, drift.registry())) {
    throw InvalidArgument("drift over a different registry");
  }
  AffineSystem sys{std::move(reg), std::move(drift), std::move(controls),
                   std::move(bounds), AffineSystem::Provenance::Raw};
  if (sys.m() >= 1) {
    const ExactPoint witness = default_witness_point(*sys.reg);
    SpanReport report = span_rank(sys.controls, witness);
    if (report.rank != static_cast<int>(sys.m())) {
      throw InvalidArgument(
          "control fields are linearly dependent at the witness point");
    }
  }
  return sys;
}

AffineSystem build_affine(const MechanicalSystemSpec& spec,
                          std::vector<Bounds> bounds,
                          const ExactPoint* witness_in) {
  const RegistryPtr& reg = spec.reg;
  const std::size_t r = spec.r;
  const std::size_t m = spec.m;
  if (reg->size() != 2 * r || reg->split_index() != r) {
    throw InvalidArgument("mechanical registry must have n = 2r with split r");
  }
  for (std::size_t v = r; v < 2 * r; ++v) {
    if (reg->is_angle(v)) {
      throw InvalidArgument("x2 block variables must be polynomial-kind");
    }
  }
  check_matrix_dims(spec.M, r, r, "M");
  check_matrix_dims(spec.M_inv, r, r, "M_inv");
  check_matrix_dims(spec.Q, r, m, "Q");
  check_matrix_dims(spec.dpsi_dq, r, r, "dpsi_dq");
  check_matrix_dims(spec.P, r, r, "P");
  check_matrix_dims(spec.P_inv, r, r, "P_inv");
  if (spec.N.size() != r) throw InvalidArgument("N: expected r entries");
  if (spec.dP_dq.size() != r) throw InvalidArgument("dP_dq: expected r matrices");
  for (const auto& dP : spec.dP_dq) check_matrix_dims(dP, r, r, "dP_dq[k]");
  check_bounds(bounds, m);

  check_x1_only(spec.M, reg, "M");
  check_x1_only(spec.M_inv, reg, "M_inv");
  check_x1_only(spec.Q, reg, "Q");
  check_x1_only(spec.dpsi_dq, reg, "dpsi_dq");
  check_x1_only(spec.P, reg, "P");
  check_x1_only(spec.P_inv, reg, "P_inv");
  for (const auto& dP : spec.dP_dq) check_x1_only(dP, reg, "dP_dq[k]");

  // Symbolic invariants: symmetry and the two exact inverses.
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      if (!(spec.M[i][j] == spec.M[j][i])) {
        throw InvalidArgument("M is not symmetric");
      }
    }
  }
  const PolyMatrix identity = poly_identity(reg, r);
  if (!poly_mat_equal(poly_mat_mul(spec.M, spec.M_inv), identity)) {
    throw InvalidArgument("M * M_inv is not the identity");
  }
  if (!poly_mat_equal(poly_mat_mul(spec.P, spec.P_inv), identity)) {
    throw InvalidArgument("P * P_inv is not the identity");
  }

  // x2 as a symbolic vector, and qdot = P_inv x2.
  std::vector<TrigPoly> x2;
  x2.reserve(r);
  for (std::size_t j = 0; j < r; ++j) {
    x2.push_back(TrigPoly::variable(reg, r + j));
  }
  const std::vector<TrigPoly> qdot = poly_mat_vec(spec.P_inv, x2);

  // N is written in (q, qdot); compose qdot = P_inv x2.
  std::map<std::size_t, TrigPoly> subst;
  for (std::size_t j = 0; j < r; ++j) subst.emplace(r + j, qdot[j]);
  std::vector<TrigPoly> n_composed;
  n_composed.reserve(r);
  for (const auto& nk : spec.N) n_composed.push_back(nk.substitute(subst));

  // F = dpsi_dq P_inv; Pdot = sum_k dP_dq[k] (P_inv x2)_k.
  const PolyMatrix F = poly_mat_mul(spec.dpsi_dq, spec.P_inv);
  PolyMatrix Pdot = poly_zeros(reg, r, r);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        Pdot[i][j] += spec.dP_dq[k][i][j] * qdot[k];
      }
    }
  }

  const std::vector<TrigPoly> upper = poly_mat_vec(F, x2);
  const PolyMatrix PM_inv = poly_mat_mul(spec.P, spec.M_inv);
  std::vector<TrigPoly> lower =
      poly_mat_vec(poly_mat_mul(Pdot, spec.P_inv), x2);
  const std::vector<TrigPoly> force = poly_mat_vec(PM_inv, n_composed);
  for (std::size_t i = 0; i < r; ++i) lower[i] -= force[i];

  std::vector<TrigPoly> drift_comps;
  drift_comps.reserve(2 * r);
  for (auto& c : upper) drift_comps.push_back(c);
  for (auto& c : lower) drift_comps.push_back(c);
  VectorField drift(reg, std::move(drift_comps));

  const PolyMatrix Ghat = poly_mat_mul(PM_inv, spec.Q);
  std::vector<VectorField> controls;
  controls.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<TrigPoly> comps(2 * r, TrigPoly::zero(reg));
    for (std::size_t k = 0; k < r; ++k) comps[r + k] = Ghat[k][i];
    controls.emplace_back(reg, std::move(comps));
  }

  // Witness-point rank checks (generic-point validation).
  const ExactPoint witness =
      witness_in ? *witness_in : default_witness_point(*reg);
  witness.validate(*reg);
  if (m > 0) {
    if (rational_rank(eval_matrix(spec.Q, witness)) != static_cast<int>(m)) {
      throw InvalidArgument("Q does not have rank m at the witness point");
    }
    RationalMatrix gvals;
    for (const auto& g : controls) gvals.push_back(g.evaluate(witness));
    if (rational_rank(std::move(gvals)) != static_cast<int>(m)) {
      throw InvalidArgument(
          "control fields are linearly dependent at the witness point");
    }
  }

  return AffineSystem{reg, std::move(drift), std::move(controls),
                      std::move(bounds), AffineSystem::Provenance::Mechanical};
}

CommutativityReport check_commutativity(const AffineSystem& sys,
                                        const ExactPoint* witness_in) {
  CommutativityReport report;
  const std::size_t m = sys.m();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      VectorField b = lie_bracket(sys.controls[i], sys.controls[j]);
      if (!b.is_zero()) {
        report.all_brackets_zero = false;
        report.nonzero_pairs.emplace_back(i, j);
        report.nonzero_brackets.push_back(std::move(b));
      }
    }
  }

  std::vector<VectorField> family;
  family.reserve(2 * m);
  for (const auto& g : sys.controls) family.push_back(g);
  for (const auto& g : sys.controls) family.push_back(lie_bracket(sys.drift, g));
  if (!family.empty()) {
    const ExactPoint witness =
        witness_in ? *witness_in : default_witness_point(*sys.reg);
    SpanReport span = span_rank(family, witness);
    report.independence_rank = span.rank;
    report.independence_ok = span.rank == static_cast<int>(2 * m);
  } else {
    report.independence_ok = true;
  }
  return report;
}

AlphaTable::AlphaTable(std::size_t r, std::vector<TrigPoly> alpha,
                       std::vector<VectorField> residuals, bool x1_only)
    : r_(r), alpha_(std::move(alpha)), residuals_(std::move(residuals)),
      x1_only_(x1_only) {}

const TrigPoly& AlphaTable::at(std::size_t i, std::size_t j,
                               std::size_t k) const {
  if (i >= r_ || j >= r_ || k >= r_) {
    throw InvalidArgument("AlphaTable: index out of range");
  }
  return alpha_[(i * r_ + j) * r_ + k];
}

bool AlphaTable::residuals_zero() const {
  for (const auto& res : residuals_) {
    if (!res.is_zero()) return false;
  }
  return true;
}

RationalMatrix AlphaTable::reduced_matrix(std::size_t k,
                                          const ExactPoint& point) const {
  RationalMatrix out;
  for (std::size_t i = 0; i < r_; ++i) {
    if (i == k) continue;
    std::vector<Rational> row;
    for (std::size_t j = 0; j < r_; ++j) {
      if (j == k) continue;
      row.push_back(at(i, j, k).evaluate(point));
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<double>> AlphaTable::reduced_matrix(
    std::size_t k, std::span<const double> state) const {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < r_; ++i) {
    if (i == k) continue;
    std::vector<double> row;
    for (std::size_t j = 0; j < r_; ++j) {
      if (j == k) continue;
      row.push_back(at(i, j, k).evaluate(state));
    }
    out.push_back(std::move(row));
  }
  return out;
}

AlphaTable alpha_decomposition(const AffineSystem& sys) {
  if (!sys.fully_actuated_mechanical()) {
    throw InvalidArgument(
        "alpha_decomposition requires a fully actuated mechanical build");
  }
  const RegistryPtr& reg = sys.reg;
  const std::size_t r = sys.r();

  // Ghat from the lower blocks of the control fields.
  PolyMatrix Ghat(r, std::vector<TrigPoly>(r, TrigPoly::zero(reg)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      Ghat[k][i] = sys.controls[i].comp(r + k);
    }
  }
  // Ring inverse exists when det is a nonzero constant (covers the
  // constant-Ghat case and rotation-like inputs).
  const TrigPoly det = poly_det(Ghat, reg);
  const Rational* det_c = det.as_constant();
  if (det_c == nullptr || *det_c == 0) {
    throw InvalidArgument(
        "Ghat inverse unavailable: determinant is not a nonzero constant");
  }
  PolyMatrix Ghat_inv = poly_adjugate(Ghat, reg);
  const Rational inv_det = 1 / *det_c;
  for (auto& row : Ghat_inv) {
    for (auto& e : row) e = e * inv_det;
  }

  std::vector<TrigPoly> alpha((r * r) * r, TrigPoly::zero(reg));
  std::vector<VectorField> residuals;
  residuals.reserve(r * r);
  bool x1_only = true;

  for (std::size_t i = 0; i < r; ++i) {
    const VectorField fg_i = lie_bracket(sys.drift, sys.controls[i]);
    for (std::size_t j = 0; j < r; ++j) {
      const VectorField bracket = lie_bracket(sys.controls[j], fg_i);
      // [g_j, [f, g_i]] = (0, w); alpha_ij. = Ghat_inv w.
      std::vector<TrigPoly> w;
      w.reserve(r);
      for (std::size_t k = 0; k < r; ++k) w.push_back(bracket.comp(r + k));
      const std::vector<TrigPoly> coeffs = poly_mat_vec(Ghat_inv, w);

      VectorField residual = bracket;
      for (std::size_t k = 0; k < r; ++k) {
        alpha[(i * r + j) * r + k] = coeffs[k];
        residual = residual - sys.controls[k].scaled(coeffs[k]);
        for (std::size_t v = r; v < 2 * r; ++v) {
          if (coeffs[k].depends_on(v)) x1_only = false;
        }
      }
      residuals.push_back(std::move(residual));
    }
  }

  AlphaTable table(r, std::move(alpha), std::move(residuals), x1_only);
  if (!table.residuals_zero()) {
    throw InvalidArgument(
        "alpha decomposition left a nonzero residual; the brackets do not "
        "lie in the control-field module");
  }
  return table;
}

DegreeAuditReport structural_degree_audit(const AffineSystem& sys, int max_s) {
  if (!sys.mechanical()) {
    throw InvalidArgument("structural_degree_audit requires a mechanical build");
  }
  DegreeAuditReport report;
  const DegreeClass fc = degree_class(sys.drift);
  report.b = fc.b;
  report.b_formula = std::max(fc.b, 2);
  report.drift_upper_linear = fc.a <= 1;

  const int b = report.b_formula;
  auto clamp = [](int v) { return std::max(v, -1); };
  report.pass = report.drift_upper_linear;
  for (int s = 0; s <= max_s; ++s) {
    DegreeAuditRow row;
    row.s = s;
    row.ad_bound = DegreeClass{clamp((s - 1) * b - s + 1), clamp(s * b - s)};
    row.mixed_bound = DegreeClass{clamp((s - 1) * b - s), clamp(s * b - s - 1)};
    DegreeClass ad_worst{-1, -1};
    DegreeClass mixed_worst{-1, -1};
    for (std::size_t i = 0; i < sys.m(); ++i) {
      const VectorField ad = ad_power(sys.drift, sys.controls[i], s);
      const DegreeClass dc = degree_class(ad);
      ad_worst.a = std::max(ad_worst.a, dc.a);
      ad_worst.b = std::max(ad_worst.b, dc.b);
      for (std::size_t j = 0; j < sys.m(); ++j) {
        const DegreeClass mc =
            degree_class(lie_bracket(sys.controls[j], ad));
        mixed_worst.a = std::max(mixed_worst.a, mc.a);
        mixed_worst.b = std::max(mixed_worst.b, mc.b);
      }
    }
    row.ad_class = ad_worst;
    row.mixed_class = mixed_worst;
    row.ad_ok = ad_worst.leq(row.ad_bound);
    row.mixed_ok = mixed_worst.leq(row.mixed_bound);
    report.pass = report.pass && row.ad_ok && row.mixed_ok;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace extremalkit
