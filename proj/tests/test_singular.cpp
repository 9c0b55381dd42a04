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

#include <random>

#include <doctest.h>

#include "extremalkit/errors.hpp"
#include "extremalkit/parser.hpp"
#include "extremalkit/singular.hpp"
#include "extremalkit/uuv.hpp"
#include "helpers.hpp"

using namespace extremalkit;
using namespace extremalkit::testing;

namespace {

SamplePoints random_points(const VariableRegistry& reg, int count,
                           std::uint64_t seed) {
  SamplePoints pts;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    pts.approx.push_back(random_float_state(reg, rng));
  }
  return pts;
}

// n = 2 fixture whose control values are collinear everywhere.
AffineSystem collinear_system() {
  auto reg = VariableRegistry::create(
      {{"a", VarKind::Polynomial}, {"b", VarKind::Polynomial}}, 1);
  AffineSystem sys;
  sys.reg = reg;
  sys.drift = VectorField::zero(reg);
  sys.controls = {
      VectorField(reg, {parse_expr("1", reg), parse_expr("0", reg)}),
      VectorField(reg, {parse_expr("2", reg), parse_expr("0", reg)})};
  sys.bounds = {Bounds{}, Bounds{}};
  return sys;
}

}  // namespace

TEST_CASE("span-condition checker on the UUV") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  const SamplePoints pts = random_points(*sys.reg, 8, 41);

  SUBCASE("no common accumulation point for all channels") {
    SpanConditionQuery q;
    q.K2 = {0, 1, 2};
    q.J = {{0, 1, 2}, {0, 1, 2}};
    const SpanConditionVerdict v = check_span_conditions(sys, table, q, pts);
    CHECK(v.conditions_hold);
    CHECK(v.l1_auto_passed);
    CHECK(v.conclusion.find("no common accumulation point") != std::string::npos);
    for (const auto& ev : v.evidence) CHECK(ev.final_rank == 6);
  }

  SUBCASE("mixed K1/K2 reports the disjunction verbatim") {
    SpanConditionQuery q;
    q.K1 = {0, 1};
    q.K2 = {2};
    q.J = {{0, 1, 2}, {0, 1, 2}};
    const SpanConditionVerdict v = check_span_conditions(sys, table, q, pts);
    CHECK(v.conditions_hold);
    CHECK(v.conclusion.find("either (a)") != std::string::npos);
    CHECK(v.conclusion.find("or (b)") != std::string::npos);
  }

  SUBCASE("full K1 packages the no-totally-singular conclusion") {
    SpanConditionQuery q;
    q.K1 = {0, 1, 2};
    q.J = {{0, 1, 2}, {0, 1, 2}};
    const SpanConditionVerdict v = check_span_conditions(sys, table, q, pts);
    CHECK(v.conditions_hold);
    CHECK(v.conclusion.find("no totally singular extremal") != std::string::npos);
  }

  SUBCASE("debug mode re-derives the l = 1 shortcut symbolically") {
    SpanConditionQuery q;
    q.K1 = {0, 1, 2};
    q.J = {{0, 1, 2}, {0, 1, 2}};
    q.debug_l1 = true;
    SamplePoints one;
    one.approx.push_back(pts.approx[0]);
    const SpanConditionVerdict v = check_span_conditions(sys, table, q, one);
    CHECK(v.conditions_hold);
    REQUIRE(!v.evidence[0].memberships.empty());
    for (const auto& m : v.evidence[0].memberships) {
      CHECK(m.exact_zero);
      CHECK(m.l == 1);
    }
  }

  SUBCASE("malformed chains are rejected before any verdict") {
    SpanConditionQuery q;
    q.K1 = {0};
    q.J = {{0}, {0, 1}};  // J_1 not contained in J_0
    CHECK_THROWS_AS(check_span_conditions(sys, table, q, pts), InvalidArgument);

    SpanConditionQuery q2;
    q2.K1 = {0};
    q2.K2 = {0};  // not disjoint
    q2.J = {{0}};
    CHECK_THROWS_AS(check_span_conditions(sys, table, q2, pts), InvalidArgument);

    SpanConditionQuery q3;
    q3.K1 = {0, 1};
    q3.J = {{0, 1}, {}};  // empty chain set
    CHECK_THROWS_AS(check_span_conditions(sys, table, q3, pts), InvalidArgument);
  }

  SUBCASE("one singular channel excludes a common accumulation pair") {
    SpanConditionQuery q;
    q.K1 = {0};
    q.K2 = {1, 2};
    q.J = {{0, 1, 2}, {0, 1, 2}};
    const SpanConditionVerdict v = check_span_conditions(sys, table, q, pts);
    CHECK(v.conditions_hold);
    CHECK(v.conclusion.find("phi2, phi3") != std::string::npos);
  }
}

TEST_CASE("underactuated chains are expressible and stay honest") {
  // 2-DOF point mass with a single input: one control cannot span R^4, so
  // a depth-2 chain must come back inconclusive rather than asserted. The
  // l = 2 memberships are computed literally (the mechanical shortcut
  // covers l = 1 only).
  auto reg = VariableRegistry::create({{"q1", VarKind::Polynomial},
                                       {"q2", VarKind::Polynomial},
                                       {"w1", VarKind::Polynomial},
                                       {"w2", VarKind::Polynomial}},
                                      2);
  MechanicalSystemSpec spec = MechanicalSystemSpec::trivial(reg);
  spec.m = 1;
  spec.Q = {{TrigPoly::constant(reg, Rational(1))},
            {TrigPoly::zero(reg)}};
  AffineSystem sys = build_affine(spec, {Bounds{}});
  REQUIRE(sys.m() == 1);
  REQUIRE_FALSE(sys.fully_actuated_mechanical());
  LieTable table(sys);

  SpanConditionQuery q;
  q.K1 = {0};
  q.J = {{0}, {0}, {0}};
  const SamplePoints pts = random_points(*sys.reg, 3, 55);
  const SpanConditionVerdict v = check_span_conditions(sys, table, q, pts);
  CHECK_FALSE(v.conditions_hold);
  CHECK(v.conclusion.empty());
  // The level-2 membership was evaluated, not auto-passed.
  bool saw_l2 = false;
  for (const auto& ev : v.evidence) {
    for (const auto& m : ev.memberships) saw_l2 = saw_l2 || m.l == 2;
  }
  CHECK(saw_l2);
}

TEST_CASE("empty K2 skips condition 2 entirely") {
  AffineSystem sys = collinear_system();
  LieTable table(sys);
  SpanConditionQuery q;
  q.K1 = {0, 1};
  q.J = {{0, 1}, {0, 1}, {0, 1}};
  const SamplePoints pts = random_points(*sys.reg, 2, 7);
  const SpanConditionVerdict v = check_span_conditions(sys, table, q, pts);
  for (const auto& ev : v.evidence) {
    for (const auto& m : ev.memberships) CHECK(m.condition == 1);
  }
}

TEST_CASE("rank-deficient systems stay inconclusive") {
  AffineSystem sys = collinear_system();
  LieTable table(sys);
  SpanConditionQuery q;
  q.K1 = {0, 1};
  q.J = {{0, 1}, {0, 1}};
  const SamplePoints pts = random_points(*sys.reg, 4, 77);
  const SpanConditionVerdict v = check_span_conditions(sys, table, q, pts);
  CHECK_FALSE(v.conditions_hold);
  CHECK(v.conclusion.empty());
  for (const auto& ev : v.evidence) CHECK(ev.final_rank == 1);
}

TEST_CASE("verdict aggregation is conjunctive over points") {
  // Controls degenerate exactly on the hyperplane a = 0.
  auto reg = VariableRegistry::create(
      {{"a", VarKind::Polynomial}, {"b", VarKind::Polynomial}}, 1);
  AffineSystem sys;
  sys.reg = reg;
  sys.drift = VectorField::zero(reg);
  sys.controls = {
      VectorField(reg, {parse_expr("1", reg), parse_expr("0", reg)}),
      VectorField(reg, {parse_expr("0", reg), parse_expr("a", reg)})};
  sys.bounds = {Bounds{}, Bounds{}};
  LieTable table(sys);

  SpanConditionQuery q;
  q.K1 = {0, 1};
  q.J = {{0, 1}, {0, 1}};

  SamplePoints good;
  good.approx = {{1.0, 0.3}, {-2.0, 0.7}};
  CHECK(check_span_conditions(sys, table, q, good).conditions_hold);

  SamplePoints mixed = good;
  mixed.approx.push_back({0.0, 0.7});  // degenerate point
  CHECK_FALSE(check_span_conditions(sys, table, q, mixed).conditions_hold);
}

TEST_CASE("depth-one bracket families have independent values") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  std::mt19937_64 rng(321);
  const std::vector<std::vector<int>> J0s{{0}, {0, 1}, {0, 1, 2}, {1, 2}};
  const std::vector<std::vector<int>> J1s{{0}, {1}, {0, 2}, {2}};
  for (std::size_t c = 0; c < J0s.size(); ++c) {
    std::vector<VectorField> fields;
    for (int v : J0s[c]) fields.push_back(table.ad(0, v));
    for (int v : J1s[c]) fields.push_back(table.ad(1, v));
    const std::vector<double> x = random_float_state(*sys.reg, rng);
    const SpanReport rep = span_rank(fields, x);
    CHECK(rep.rank == static_cast<int>(J0s[c].size() + J1s[c].size()));
  }
}

TEST_CASE("no-common-zero checker") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  const SamplePoints pts = random_points(*sys.reg, 6, 99);

  SUBCASE("u1,u2-singular arcs keep phi_3 nonzero") {
    SpanConditionQuery q;
    q.K1 = {0, 1};
    q.J = {{0, 1}, {0, 1}, {0, 1}};  // s = 2, the Prop-2-proof chain
    const NoCommonZeroVerdict v = check_no_common_zero(sys, table, q, {2}, pts);
    CHECK(v.chain_ok);
    CHECK(v.asserted);
    CHECK(v.conclusion.find("phi3") != std::string::npos);
    CHECK(v.conclusion.find("whole sampled extremal") != std::string::npos);
  }

  SUBCASE("accumulation pair excludes a zero of the remaining channel") {
    SpanConditionQuery q;
    q.K2 = {1, 2};
    q.J = {{1, 2}, {1, 2}, {1, 2}};
    const NoCommonZeroVerdict v = check_no_common_zero(sys, table, q, {0}, pts);
    CHECK(v.asserted);
    CHECK(v.conclusion.find("phi1") != std::string::npos);
    CHECK(v.conclusion.find("accumulation time") != std::string::npos);
  }

  SUBCASE("rank deficiency yields inconclusive, never an assertion") {
    AffineSystem flat = collinear_system();
    LieTable ftable(flat);
    SpanConditionQuery q;
    q.K1 = {0};
    q.J = {{0}, {0}};
    const SamplePoints fpts = random_points(*flat.reg, 3, 5);
    const NoCommonZeroVerdict v = check_no_common_zero(flat, ftable, q, {1}, fpts);
    CHECK_FALSE(v.asserted);
    CHECK(v.conclusion == "inconclusive");
  }

  SUBCASE("K must avoid K1 and K2") {
    SpanConditionQuery q;
    q.K1 = {0, 1};
    q.J = {{0, 1}};
    CHECK_THROWS_AS(check_no_common_zero(sys, table, q, {1}, pts), InvalidArgument);
  }
}

TEST_CASE("abnormal span test") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);

  SamplePoints generic = random_points(*sys.reg, 3, 17);
  const AbnormalSpanVerdict v = abnormal_span_check(sys, table, 2, generic);
  CHECK(v.asserted);

  SamplePoints rest;
  rest.approx.push_back({0.1, -0.2, 0.4, 0.0, 0.0, 0.0});
  const AbnormalSpanVerdict v2 = abnormal_span_check(sys, table, 2, rest);
  CHECK_FALSE(v2.asserted);
  CHECK(v2.conclusion == "inconclusive");
}

TEST_CASE("singular-control solve") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  const AlphaTable alpha = alpha_decomposition(sys);

  SUBCASE("pure-rotation states force zero singular controls") {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
    x << 0.4, -1.0, 0.9, 0.0, 0.0, 0.7;
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(6);
    lam[2] = 0.8;
    lam[5] = 1.1;
    const SingularControlSolution sol =
        singular_control_solve(sys, table, alpha, x, lam, 2, 1.0);
    CHECK(std::abs(sol.u[0]) <= 1e-12);
    CHECK(std::abs(sol.u[1]) <= 1e-12);
    CHECK(sol.u[2] == 1.0);
    CHECK(sol.solve_residual <= 1e-12);
    CHECK(sol.all_feasible);
    CHECK(sol.determinant == doctest::Approx(-4.0 / 225.0).epsilon(1e-12));
  }

  SUBCASE("exact path closes the second derivative at the solve point") {
    ExactPoint x = ExactPoint::zeros(*sys.reg);
    x.set(*sys.reg, "x", Rational(1, 3));
    x.set_angle(*sys.reg, "theta", Rational(3, 5), Rational(4, 5));
    x.set(*sys.reg, "omega", Rational(2, 7));
    std::vector<Rational> lam(6, Rational(0));
    lam[2] = Rational(5, 9);
    lam[5] = Rational(3, 2);
    const ExactSingularControlSolution sol =
        singular_control_solve_exact(sys, table, alpha, x, lam, 2, Rational(-1));
    CHECK(sol.u[0] == 0);
    CHECK(sol.u[1] == 0);
    const ExactSwitchingState st =
        switching_derivatives_exact(sys, table, x, lam, sol.u, &alpha);
    CHECK(st.phi_ddot[0] == 0);
    CHECK(st.phi_ddot[1] == 0);
  }

  SUBCASE("the circular vehicle is rejected with a zero determinant") {
    UUVParams circle;
    circle.m1 = 4;
    circle.m3 = 4;
    AffineSystem csys = build_affine(uuv_mechanical_spec(circle), circle.bounds);
    LieTable ctable(csys);
    const AlphaTable calpha = alpha_decomposition(csys);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(6);
    lam[5] = 1.0;
    CHECK_THROWS_AS(
        singular_control_solve(csys, ctable, calpha, x, lam, 2, 1.0),
        SingularMatrixError);
  }

  SUBCASE("a vanishing phi_k violates the precondition") {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(6);
    lam[2] = 1.0;  // phi_3 = lam6 / I = 0
    CHECK_THROWS_AS(singular_control_solve(sys, table, alpha, x, lam, 2, 1.0),
                    InvalidArgument);
  }
}

TEST_CASE("concatenation checks") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  SamplePoints junction = random_points(*sys.reg, 1, 64);

  SUBCASE("vertical + horizontal translation is rejected on the fast path") {
    const ConcatVerdict v = concat_check(sys, table, {0, 2}, {1, 2}, junction);
    CHECK(v.path == ConcatVerdict::Path::FastFullyActuated);
    CHECK(v.outcome == ConcatVerdict::Outcome::NotOptimal);
  }

  SUBCASE("rotation + translation is rejected on the fast path") {
    const ConcatVerdict v = concat_check(sys, table, {0, 1}, {1, 2}, junction);
    CHECK(v.outcome == ConcatVerdict::Outcome::NotOptimal);
  }

  SUBCASE("the junction-span path reaches rank 6") {
    const ConcatVerdict v = concat_check(sys, table, {0, 2}, {1, 2}, junction,
                                         nullptr, nullptr,
                                         /*allow_fast_path=*/false);
    CHECK(v.path == ConcatVerdict::Path::JunctionSpan);
    CHECK(v.outcome == ConcatVerdict::Outcome::NotExtremal);
    CHECK(v.junction_rank == 6);
  }

  SUBCASE("identical singleton sides are inconclusive") {
    const ConcatVerdict v = concat_check(sys, table, {0}, {0}, junction);
    CHECK(v.outcome == ConcatVerdict::Outcome::Inconclusive);
    CHECK(v.junction_rank == 2);
  }

  SUBCASE("empty sides are rejected") {
    CHECK_THROWS_AS(concat_check(sys, table, {}, {0}, junction),
                    InvalidArgument);
  }
}

TEST_CASE("extremal state sampling skips event nodes") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  IntegratorOptions opts;
  PureMotionSpec spec;
  const Extremal ext = pure_motion_extremal(sys, table, spec, opts);
  REQUIRE(!ext.events.empty());

  const SamplePoints pts = sample_extremal_states(ext, 50);
  CHECK(pts.count() <= 50);
  CHECK(pts.count() >= 25);
  // No sampled state coincides with an event node's state time.
  for (const auto& e : ext.events) {
    std::size_t node = 0;
    for (std::size_t k = 0; k < ext.nodes(); ++k) {
      if (ext.t[k] == e.t) node = k;
    }
    for (const auto& s : pts.approx) {
      bool same = true;
      for (int i = 0; i < 6; ++i) {
        same = same && s[i] == ext.x[node][i];
      }
      CHECK_FALSE(same);
    }
  }
}
