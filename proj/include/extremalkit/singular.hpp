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

#ifndef EXTREMALKIT_SINGULAR_HPP_
#define EXTREMALKIT_SINGULAR_HPP_

#include <set>
#include <string>
#include <vector>

#include "extremalkit/pmp.hpp"

namespace extremalkit {

// Evaluation sample for the pointwise span checkers. Exact points use
// rational elimination; float states use the SVD rank with `tol`.
struct SamplePoints {
  std::vector<ExactPoint> exact;
  std::vector<std::vector<double>> approx;
  double tol = kDefaultRankTol;

  std::size_t count() const { return exact.size() + approx.size(); }
};

// Event-free nodes of an extremal, thinned to at most `max_points` states.
SamplePoints sample_extremal_states(const Extremal& ext,
                                    std::size_t max_points = 200,
                                    double tol = kDefaultRankTol);

// Index-set chain for the singular-exclusion span test: disjoint K1, K2,
// and nonempty nested sets J_s <= J'_{s-1} <= J_{s-1} <= ... <= J'_1 <=
// J_1 <= J_0 = K1 u K2. The primed sets exist for levels 1..s-1 only
// (condition 2 at level l feeds the (l+1)-th derivative, so the top level
// has no primed set). Channels are 0-based.
struct SpanConditionQuery {
  std::vector<int> K1, K2;
  std::vector<std::vector<int>> J;       // size s + 1, J[0] = K1 u K2
  std::vector<std::vector<int>> Jprime;  // size s - 1; defaults to J[1..s-1]
  bool debug_l1 = false;  // verify the automatic l = 1 case symbolically

  int chain_length() const { return static_cast<int>(J.size()) - 1; }
  void validate(std::size_t m) const;
  std::vector<int> jprime(int l) const;  // J'_l with the default rule
};

struct MembershipEvidence {
  int l = 0;
  int j = 0;  // bracket channel
  int k = 0;  // left factor channel
  int condition = 1;
  double residual = 0.0;
  bool exact_zero = false;
  bool pass = false;
};

struct PointEvidence {
  std::vector<double> state;
  bool exact = false;
  std::vector<MembershipEvidence> memberships;
  std::vector<std::vector<double>> span_matrix;  // stacked field values
  int final_rank = 0;  // final (condition-3 / companion / junction) span rank
  bool final_rank_full = false;
  bool all_pass = false;
};

// Chain-test verdict: the conclusion is asserted only when every
// condition holds at every tested point, and it is always labeled
// pointwise-verified, never proved.
struct SpanConditionVerdict {
  bool conditions_hold = false;
  bool l1_auto_passed = false;  // mechanical shortcut was taken
  std::string conclusion;       // empty unless conditions_hold
  std::vector<PointEvidence> evidence;
  int dimension = 0;
};

// Conditions 1-3 of the chain test, evaluated pointwise. For mechanical
// builds the l = 1 memberships are auto-passed (commutativity); when K2 is
// empty condition 2 is skipped as equivalent to condition 1.
SpanConditionVerdict check_span_conditions(const AffineSystem& sys, LieTable& table,
                                    const SpanConditionQuery& query,
                                    const SamplePoints& points);

// Companion no-common-zero test: verifies conditions 1-2 of the chain,
// then Span{g_u, ad_f^w g_v; w = 1..s, u in K1 u K2 u K, v in J_w} = R^n
// at the sample points. When K2 is empty the conclusion holds along the
// whole sampled arc; the verdict is "inconclusive" on rank deficiency.
struct NoCommonZeroVerdict {
  bool chain_ok = false;
  bool asserted = false;
  std::string conclusion;  // or "inconclusive"
  std::vector<PointEvidence> evidence;
  int dimension = 0;
};
NoCommonZeroVerdict check_no_common_zero(const AffineSystem& sys, LieTable& table,
                                const SpanConditionQuery& query,
                                const std::vector<int>& K,
                                const SamplePoints& points);

// Abnormal-extremal span test: Span{f, g_i, [f, g_j];
// i, j in I, j != k} = R^n. Callers gate this on the abnormal flag.
struct AbnormalSpanVerdict {
  bool asserted = false;
  std::string conclusion;
  std::vector<PointEvidence> evidence;
};
AbnormalSpanVerdict abnormal_span_check(const AffineSystem& sys, LieTable& table,
                                        int k, const SamplePoints& points);

// Singular-control solve: along an arc where every channel except k is
// singular and phi_k does not vanish, solves
//   sum_{j != k} alpha_ijk u_j = -(lambda^t ad_f^2 g_i + alpha_ikk phi_k u_k)
//                                  / phi_k,   i != k.
// Throws SingularMatrixError when |det| <= det_tol and InvalidArgument when
// phi_k vanishes or the system is not a fully actuated mechanical build.
struct SingularControlSolution {
  std::vector<double> u;  // full m-vector; u[k] echoes the input
  std::size_t k = 0;
  std::vector<std::vector<double>> system_matrix;
  double determinant = 0.0;
  std::vector<double> rhs;
  double solve_residual = 0.0;
  std::vector<bool> bound_feasible;  // per solved channel (index != k)
  bool all_feasible = true;
};
SingularControlSolution singular_control_solve(
    const AffineSystem& sys, LieTable& table, const AlphaTable& alpha,
    const Eigen::VectorXd& x, const Eigen::VectorXd& lam, std::size_t k,
    double u_k, double det_tol = 1e-12, double phi_tol = 1e-12);

// Exact variant; returns rational channel values.
struct ExactSingularControlSolution {
  std::vector<Rational> u;
  Rational determinant;
};
ExactSingularControlSolution singular_control_solve_exact(
    const AffineSystem& sys, LieTable& table, const AlphaTable& alpha,
    const ExactPoint& x, const std::vector<Rational>& lam, std::size_t k,
    const Rational& u_k);

// Concatenation test (Props. 5-6). Fast path: for a fully actuated
// mechanical system with S1 u S2 = I the concatenation of an S1-singular
// and an S2-singular extremal is not optimal (chains J^a = [S_a, S_a]).
// General path: verifies condition 1 per side, then the junction span
// Span{ad_f^w g_v; w <= s, v in J^1_w u J^2_w} = R^n.
struct ConcatVerdict {
  enum class Path { FastFullyActuated, JunctionSpan };
  enum class Outcome { NotOptimal, NotExtremal, Inconclusive };
  Path path = Path::JunctionSpan;
  Outcome outcome = Outcome::Inconclusive;
  std::string conclusion;
  std::vector<PointEvidence> evidence;
  int junction_rank = 0;
};
ConcatVerdict concat_check(const AffineSystem& sys, LieTable& table,
                           const std::vector<int>& S1,
                           const std::vector<int>& S2,
                           const SamplePoints& junction,
                           const std::vector<std::vector<int>>* chain1 = nullptr,
                           const std::vector<std::vector<int>>* chain2 = nullptr,
                           bool allow_fast_path = true);

}  // namespace extremalkit

#endif  // EXTREMALKIT_SINGULAR_HPP_
