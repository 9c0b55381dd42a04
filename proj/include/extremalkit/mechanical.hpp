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

#ifndef EXTREMALKIT_MECHANICAL_HPP_
#define EXTREMALKIT_MECHANICAL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "extremalkit/linalg.hpp"
#include "extremalkit/span.hpp"
#include "extremalkit/vector_field.hpp"

namespace extremalkit {

// Per-channel control bounds, alpha < 0 < beta.
struct Bounds {
  Rational lo{-1};
  Rational hi{1};
  double lo_d() const { return to_double(lo); }
  double hi_d() const { return to_double(hi); }
};

// Mechanical system data (M, N, Q, psi, P) over a 2r registry whose first
// block plays the configuration role. Matrix entries are functions of the
// x1 variables only; N is a function of (x1, x2) where the x2 slots stand
// for the raw velocities qdot (the builder composes qdot = P_inv * x2).
//
// Inverses are supplied explicitly: matrix inversion leaves the
// trig-polynomial ring, so the builder verifies M*M_inv and P*P_inv
// symbolically instead of computing them.
struct MechanicalSystemSpec {
  RegistryPtr reg;          // n = 2r, split_index = r
  std::size_t r = 0;
  std::size_t m = 0;
  PolyMatrix M, M_inv;      // r x r
  std::vector<TrigPoly> N;  // r
  PolyMatrix Q;             // r x m, rank m at the witness
  PolyMatrix dpsi_dq;       // r x r
  PolyMatrix P, P_inv;      // r x r
  std::vector<PolyMatrix> dP_dq;  // r entries, each r x r

  // Identity change of variables, zero N, Q = M = identity.
  static MechanicalSystemSpec trivial(RegistryPtr reg);
};

struct AffineSystem {
  enum class Provenance { Raw, Mechanical };

  RegistryPtr reg;
  VectorField drift;
  std::vector<VectorField> controls;
  std::vector<Bounds> bounds;
  Provenance provenance = Provenance::Raw;

  std::size_t n() const { return reg->size(); }
  std::size_t m() const { return controls.size(); }
  std::size_t r() const { return reg->split_index(); }
  bool mechanical() const { return provenance == Provenance::Mechanical; }
  bool fully_actuated_mechanical() const { return mechanical() && m() == r(); }
};

// Raw affine system; validates bounds and (for m >= 1) pointwise linear
// independence of the controls at the witness point.
AffineSystem make_raw_system(RegistryPtr reg, VectorField drift,
                             std::vector<VectorField> controls,
                             std::vector<Bounds> bounds);

// Compiles the mechanical data into the affine system
//   f = (F x2, Pdot P_inv x2 - P M_inv N(x1, P_inv x2)),  F = dpsi_dq P_inv
//   g_i = (0, (P M_inv Q) e_i)
// verifying the structural invariants symbolically (M symmetric, exact
// inverses) and the rank conditions at the witness point.
AffineSystem build_affine(const MechanicalSystemSpec& spec,
                          std::vector<Bounds> bounds,
                          const ExactPoint* witness = nullptr);

struct CommutativityReport {
  bool all_brackets_zero = true;
  std::vector<std::pair<std::size_t, std::size_t>> nonzero_pairs;
  std::vector<VectorField> nonzero_brackets;
  // Pointwise independence of {g_i, [f, g_i]} at the witness point.
  int independence_rank = 0;
  bool independence_ok = false;
  bool pass() const { return all_brackets_zero && independence_ok; }
};

// Computes all [g_i, g_j] symbolically (mechanical builds must come out
// zero) and tests the independence of {g_i, [f, g_i]} at a witness point.
CommutativityReport check_commutativity(const AffineSystem& sys,
                                        const ExactPoint* witness = nullptr);

// Coefficients of [g_j, [f, g_i]] = sum_k alpha_ijk g_k for a fully
// actuated mechanical system, where those brackets live in the module
// generated by the control fields.
class AlphaTable {
 public:
  AlphaTable(std::size_t r, std::vector<TrigPoly> alpha,
             std::vector<VectorField> residuals, bool x1_only);

  std::size_t r() const { return r_; }
  const TrigPoly& at(std::size_t i, std::size_t j, std::size_t k) const;
  bool residuals_zero() const;
  const std::vector<VectorField>& residuals() const { return residuals_; }
  // Structural audit: with forces of degree <= 2 in the velocities the
  // coefficients depend on x1 only.
  bool depends_only_on_x1() const { return x1_only_; }

  // Value of the (r-1)x(r-1) system matrix (alpha_ijk)_{i,j != k} at a state.
  RationalMatrix reduced_matrix(std::size_t k, const ExactPoint& point) const;
  std::vector<std::vector<double>> reduced_matrix(std::size_t k,
                                                  std::span<const double> state) const;

 private:
  std::size_t r_;
  std::vector<TrigPoly> alpha_;          // (i * r + j) * r + k
  std::vector<VectorField> residuals_;   // per (i, j)
  bool x1_only_;
};

// Requires a fully actuated mechanical build with Ghat invertible over the
// ring (constant-determinant fast path: Ghat^{-1} = adj(Ghat)/det).
AlphaTable alpha_decomposition(const AffineSystem& sys);

// Degree bookkeeping for the x2-polynomial structure of the bracket chain.
struct DegreeAuditRow {
  int s = 0;
  DegreeClass ad_class, ad_bound;
  bool ad_ok = false;
  DegreeClass mixed_class, mixed_bound;  // worst case over (i, j)
  bool mixed_ok = false;
};

struct DegreeAuditReport {
  int b = -1;                    // x2-degree of the drift's lower block
  int b_formula = 2;             // max(b, 2), used in the chain bounds
  bool drift_upper_linear = false;  // f's x1 block is degree <= 1 in x2
  std::vector<DegreeAuditRow> rows;
  bool pass = false;
};

DegreeAuditReport structural_degree_audit(const AffineSystem& sys, int max_s = 3);

}  // namespace extremalkit

#endif  // EXTREMALKIT_MECHANICAL_HPP_
