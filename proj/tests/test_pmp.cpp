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

#include <cmath>
#include <random>

#include <doctest.h>

#include "extremalkit/errors.hpp"
#include "extremalkit/parser.hpp"
#include "extremalkit/pmp.hpp"
#include "extremalkit/singular.hpp"
#include "extremalkit/uuv.hpp"
#include "helpers.hpp"

using namespace extremalkit;
using namespace extremalkit::testing;

namespace {

Eigen::VectorXd vec6(double a, double b, double c, double d, double e,
                     double f) {
  Eigen::VectorXd v(6);
  v << a, b, c, d, e, f;
  return v;
}

// Drift-only planar rotation flow: closed-form oracle for the integrator.
AffineSystem rotation_flow_system() {
  auto reg = VariableRegistry::create(
      {{"a", VarKind::Polynomial}, {"b", VarKind::Polynomial}}, 1);
  AffineSystem sys;
  sys.reg = reg;
  sys.drift = VectorField(reg, {parse_expr("b", reg), parse_expr("-1*a", reg)});
  return sys;
}

double max_H_drift(const Extremal& ext) {
  double worst = 0.0;
  for (double h : ext.H) worst = std::max(worst, std::abs(h - ext.H.front()));
  return worst;
}

}  // namespace

TEST_CASE("hamiltonian") {
  AffineSystem sys = build_uuv(UUVParams{});
  std::mt19937_64 rng(31);
  const std::vector<double> xv = random_float_state(*sys.reg, rng);
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xv.data(), 6);

  SUBCASE("zero adjoint gives zero") {
    CHECK(hamiltonian(sys, x, Eigen::VectorXd::Zero(6),
                      Eigen::VectorXd::Zero(3)) == 0.0);
  }

  SUBCASE("zero control reduces to lambda . f") {
    const Eigen::VectorXd lam = vec6(0.1, -0.2, 0.3, 0.4, 0.5, -0.6);
    const double want = lam.dot(sys.drift.evaluate(xv));
    CHECK(hamiltonian(sys, x, lam, Eigen::VectorXd::Zero(3)) ==
          doctest::Approx(want).epsilon(1e-14));
  }

  SUBCASE("pure-rotation point") {
    // v = 0, Omega = w, lambda = (0,0,l3,0,0,l6), u = (0,0,u3):
    // H = l3 w + (l6 / I) u3 with I = 2.
    const double w = 0.8, l3 = 1.3, l6 = -0.4, u3 = 0.9;
    const Eigen::VectorXd xp = vec6(0.2, -0.1, 0.5, 0.0, 0.0, w);
    const Eigen::VectorXd lam = vec6(0, 0, l3, 0, 0, l6);
    Eigen::VectorXd u(3);
    u << 0, 0, u3;
    CHECK(hamiltonian(sys, xp, lam, u) ==
          doctest::Approx(l3 * w + l6 / 2.0 * u3).epsilon(1e-14));
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(hamiltonian(sys, Eigen::VectorXd::Zero(5),
                                Eigen::VectorXd::Zero(6),
                                Eigen::VectorXd::Zero(3)),
                    InvalidArgument);
  }
}

TEST_CASE("bang-bang control") {
  const std::vector<Bounds> bounds{Bounds{}, Bounds{}, Bounds{}};
  Eigen::VectorXd phi(3), prev(3);
  phi << 0.5, -0.2, 0.0;
  prev << 0.0, 0.0, 1.0;

  SUBCASE("signs select the bangs; the band holds the previous value") {
    const Eigen::VectorXd u = bang_bang_control(phi, bounds, prev, 1e-9);
    CHECK(u[0] == 1.0);
    CHECK(u[1] == -1.0);
    CHECK(u[2] == 1.0);
  }

  SUBCASE("all positive gives beta componentwise") {
    Eigen::VectorXd p(3);
    p << 0.4, 1e-6, 2.0;
    const Eigen::VectorXd u =
        bang_bang_control(p, bounds, Eigen::VectorXd::Zero(3), 1e-9);
    CHECK(u[0] == 1.0);
    CHECK(u[1] == 1.0);
    CHECK(u[2] == 1.0);
  }

  SUBCASE("zero policy") {
    const Eigen::VectorXd u =
        bang_bang_control(phi, bounds, prev, 1e-9, InBandPolicy::Zero);
    CHECK(u[2] == 0.0);
  }

  SUBCASE("user singular law fills the band") {
    Eigen::VectorXd law(3);
    law << 9.0, 9.0, 0.25;
    const Eigen::VectorXd u = bang_bang_control(
        phi, bounds, prev, 1e-9, InBandPolicy::SingularLaw, &law);
    CHECK(u[0] == 1.0);   // out of band: bang wins
    CHECK(u[2] == 0.25);  // in band: law value
  }
}

TEST_CASE("integration against the closed-form linear flow") {
  AffineSystem sys = rotation_flow_system();
  LieTable table(sys);
  IntegratorOptions opts;
  Eigen::VectorXd x0(2), lam0(2);
  x0 << 1.0, 0.5;
  lam0 << -0.3, 0.8;
  const Extremal ext =
      integrate_extremal(sys, table, x0, lam0, 1.0, opts);

  // xdot = (b, -a) flows by R(-t); lamdot = -Df^t lam flows the same way.
  for (std::size_t k = 0; k < ext.nodes(); k += 100) {
    const double t = ext.t[k];
    const double c = std::cos(t), s = std::sin(t);
    CHECK(std::abs(ext.x[k][0] - (c * x0[0] + s * x0[1])) <= 1e-8);
    CHECK(std::abs(ext.x[k][1] - (-s * x0[0] + c * x0[1])) <= 1e-8);
    CHECK(std::abs(ext.lam[k][0] - (c * lam0[0] + s * lam0[1])) <= 1e-8);
    CHECK(std::abs(ext.lam[k][1] - (-s * lam0[0] + c * lam0[1])) <= 1e-8);
  }
  CHECK(max_H_drift(ext) <= 1e-10);
}

TEST_CASE("UUV pure-rotation initialization keeps phi_1, phi_2 at zero") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  IntegratorOptions opts;
  const Extremal ext = integrate_extremal(
      sys, table, vec6(0, 0, 0.3, 0, 0, 0), vec6(0, 0, 1.0, 0, 0, 0.5), 2.0,
      opts);
  double phi12 = 0.0;
  for (std::size_t k = 0; k < ext.nodes(); ++k) {
    phi12 = std::max({phi12, std::abs(ext.phi[k][0]), std::abs(ext.phi[k][1])});
  }
  CHECK(phi12 <= 1e-10);
  // phi_3(t) = (0.5 - t)/2: affine, one sign change near t = 0.5.
  const auto switches = ext.events_of_kind(EventKind::SignChange);
  REQUIRE(switches.size() == 1);
  CHECK(switches[0].channel == 2);
  CHECK(std::abs(switches[0].t - 0.5) <= 1e-9);
}

TEST_CASE("Hamiltonian conservation under step halving") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  // Energetic enough that RK4 truncation dominates the roundoff floor.
  const Eigen::VectorXd x0 = vec6(0, 0, 0, 4.0, -3.0, 2.5);
  const Eigen::VectorXd lam0 = vec6(0.3, -0.5, 0.7, 0.4, -0.6, 0.2);

  SUBCASE("full bang-bang run across switchings") {
    IntegratorOptions opts;
    opts.bisection_depth = 45;  // keeps event-time H jumps below truncation
    opts.step = 1e-3;
    const Extremal ext = integrate_extremal(sys, table, x0, lam0, 5.0, opts);
    const double err = max_H_drift(ext);
    opts.step = 5e-4;
    const double err_half =
        max_H_drift(integrate_extremal(sys, table, x0, lam0, 5.0, opts));
    CHECK(err <= 1e-6);
    CHECK(err_half * 10.0 <= err);

    // The adjoint never approaches zero on a valid run.
    double min_ratio = 1.0;
    for (const auto& lam : ext.lam) {
      min_ratio = std::min(min_ratio, lam.norm() / lam0.norm());
    }
    CHECK(min_ratio >= 1e-12);
  }

  SUBCASE("event-free arc shows the full fourth-order reduction") {
    IntegratorOptions opts;
    opts.step = 1e-3;
    const Extremal arc = integrate_extremal(sys, table, x0, lam0, 0.15, opts);
    REQUIRE(arc.events.empty());
    const double err = max_H_drift(arc);
    opts.step = 5e-4;
    const double err_half =
        max_H_drift(integrate_extremal(sys, table, x0, lam0, 0.15, opts));
    CHECK(err_half * 15.0 <= err);
  }
}

TEST_CASE("switching derivatives") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  std::mt19937_64 rng(77);

  SUBCASE("zero adjoint zeroes every level") {
    const std::vector<double> xv = random_float_state(*sys.reg, rng);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xv.data(), 6);
    const SwitchingState st = switching_derivatives(
        sys, table, x, Eigen::VectorXd::Zero(6), Eigen::VectorXd::Zero(3));
    CHECK(st.phi.norm() == 0.0);
    CHECK(st.phi_dot.norm() == 0.0);
    CHECK(st.phi_ddot.norm() == 0.0);
  }

  SUBCASE("finite differences along a smooth arc confirm phi_dot") {
    IntegratorOptions opts;
    opts.step = 1e-4;
    const Extremal ext = integrate_extremal(
        sys, table, vec6(0, 0, 0, 0.4, -0.3, 0.2),
        vec6(0.3, -0.5, 0.7, 0.4, -0.6, 0.2), 0.05, opts);
    REQUIRE(ext.events.empty());  // smooth arc
    for (std::size_t k = 50; k < 450; k += 87) {
      const SwitchingState st = switching_derivatives(
          sys, table, ext.x[k], ext.lam[k], ext.u[k]);
      for (int i = 0; i < 3; ++i) {
        const double fd =
            (ext.phi[k + 1][i] - ext.phi[k - 1][i]) / (2 * opts.step);
        CHECK(std::abs(fd - st.phi_dot[i]) <=
              1e-5 * std::max(1.0, std::abs(st.phi_dot[i])));
      }
    }
  }

  SUBCASE("the commutative shortcut agrees with the full first derivative") {
    const AlphaTable alpha = alpha_decomposition(sys);
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        CHECK(table.mixed(1, i, k).is_zero());
      }
    }
    const std::vector<double> xv = random_float_state(*sys.reg, rng);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xv.data(), 6);
    Eigen::VectorXd lam(6), u(3);
    lam << 0.3, 0.1, -0.2, 0.5, -0.9, 0.4;
    u << 1, -1, 1;
    const SwitchingState with = switching_derivatives(sys, table, x, lam, u,
                                                      1e-9, &alpha, false);
    const SwitchingState without =
        switching_derivatives(sys, table, x, lam, u, 1e-9, &alpha, true);
    CHECK((with.phi_dot - without.phi_dot).norm() == 0.0);
    // The alpha form of the second derivative matches the bracket form.
    CHECK((with.phi_ddot - *with.phi_ddot_alpha).norm() <= 1e-12);
  }

  SUBCASE("exact second-derivative forms agree at rational points") {
    const AlphaTable alpha = alpha_decomposition(sys);
    for (int trial = 0; trial < 10; ++trial) {
      const ExactPoint x = random_exact_point(*sys.reg, rng);
      std::vector<Rational> lam, u;
      for (int i = 0; i < 6; ++i) lam.push_back(random_rational(rng));
      for (int i = 0; i < 3; ++i) u.push_back(random_rational(rng));
      const ExactSwitchingState st =
          switching_derivatives_exact(sys, table, x, lam, u, &alpha);
      for (int i = 0; i < 3; ++i) {
        CHECK(st.phi_ddot[i] == st.phi_ddot_alpha[i]);
      }
    }
  }
}

TEST_CASE("classification") {
  SUBCASE("synthetic affine switching function is regular with one switch") {
    auto reg = VariableRegistry::create(
        {{"a", VarKind::Polynomial}, {"b", VarKind::Polynomial}}, 1);
    Extremal ext;
    ext.reg = reg;
    ext.m = 1;
    for (int k = 0; k <= 200; ++k) {
      const double t = 0.01 * k;
      ext.t.push_back(t);
      ext.x.push_back(Eigen::VectorXd::Zero(2));
      ext.lam.push_back(Eigen::VectorXd::Ones(2));
      Eigen::VectorXd u(1), phi(1);
      phi << 1.0 - t;
      u << (t < 1.0 ? 1.0 : -1.0);
      ext.u.push_back(u);
      ext.phi.push_back(phi);
      ext.H.push_back(0.7);
    }
    ext.events.push_back(Event{0, 1.0, EventKind::SignChange});
    const Classification cls = classify_extremal(ext, 1e-9, 10);
    CHECK_FALSE(cls.channels[0].singular);
    CHECK(cls.channels[0].switching_count == 1);
    CHECK_FALSE(cls.abnormal);
  }

  SUBCASE("pure rotation is u1,u2-singular over the whole horizon") {
    AffineSystem sys = build_uuv(UUVParams{});
    LieTable table(sys);
    IntegratorOptions opts;
    PureMotionSpec spec;
    const Extremal ext = pure_motion_extremal(sys, table, spec, opts);
    const Classification cls = classify_extremal(ext, opts.sg_tol, 10);
    CHECK(cls.channels[0].singular);
    CHECK(cls.channels[1].singular);
    CHECK_FALSE(cls.channels[2].singular);
    CHECK(cls.channels[2].switching_count == 1);
    CHECK(cls.channels[0].intervals[0].first_node == 0);
    CHECK(cls.channels[0].intervals[0].last_node == ext.nodes() - 1);
    CHECK_FALSE(cls.abnormal);
  }

  SUBCASE("constant-sign phi_3 with a zero theta costate is normal") {
    // lambda3 = 0, lambda6 = 1: no switching, H = phi_3 u_3 = 1/2 != 0.
    AffineSystem sys = build_uuv(UUVParams{});
    LieTable table(sys);
    IntegratorOptions opts;
    PureMotionSpec spec;
    spec.seed_pos = 0.0;
    spec.seed_vel = 1.0;
    const Extremal ext = pure_motion_extremal(sys, table, spec, opts);
    CHECK(ext.events_of_kind(EventKind::SignChange).empty());
    const Classification cls = classify_extremal(ext, opts.sg_tol, 10);
    CHECK_FALSE(cls.abnormal);
    CHECK(cls.max_abs_H == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("the abnormal rotation case: seeds (1, 0) from rest") {
    AffineSystem sys = build_uuv(UUVParams{});
    LieTable table(sys);
    IntegratorOptions opts;
    // phi_3(t) = -t/I immediately leaves the band downward; seeding the
    // held control at the destination bang value makes the run the exact
    // abnormal extremal (H = lambda3 Omega + phi3 u3 = 0 identically).
    opts.initial_control = {0.0, 0.0, -1.0};
    PureMotionSpec spec;
    spec.seed_pos = 1.0;
    spec.seed_vel = 0.0;
    const Extremal ext = pure_motion_extremal(sys, table, spec, opts);
    const Classification cls = classify_extremal(ext, opts.sg_tol, 10);
    CHECK(cls.abnormal);
    CHECK(cls.max_abs_H <= 1e-12);
  }
}

TEST_CASE("singular-law policy wired to the singular-control solver") {
  // Pure rotation with the in-band channels filled by the singular-control
  // solve instead of hold-previous; at v = 0 the solved controls are zero,
  // so the trajectory must match the held run.
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  LieTable law_table(sys);
  const AlphaTable alpha = alpha_decomposition(sys);

  IntegratorOptions opts;
  opts.policy = InBandPolicy::SingularLaw;
  int law_calls = 0;
  opts.singular_law = [&](double, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& lam,
                          const Eigen::VectorXd& prev) -> Eigen::VectorXd {
    ++law_calls;
    try {
      const SingularControlSolution sol = singular_control_solve(
          sys, law_table, alpha, x, lam, 2, prev[2]);
      Eigen::VectorXd u(3);
      u << sol.u[0], sol.u[1], sol.u[2];
      return u;
    } catch (const Error&) {
      return prev;  // near phi_3 = 0 the formula does not apply
    }
  };

  PureMotionSpec spec;
  spec.T = 1.0;
  const Extremal ext = pure_motion_extremal(sys, table, spec, opts);
  CHECK(law_calls > 0);
  double worst_u = 0.0, worst_phi = 0.0;
  for (std::size_t k = 0; k < ext.nodes(); ++k) {
    worst_u = std::max({worst_u, std::abs(ext.u[k][0]), std::abs(ext.u[k][1])});
    worst_phi =
        std::max({worst_phi, std::abs(ext.phi[k][0]), std::abs(ext.phi[k][1])});
  }
  CHECK(worst_u <= 1e-10);
  CHECK(worst_phi <= 1e-10);
}

TEST_CASE("adjoint scaling invariance") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  IntegratorOptions opts;
  PureMotionSpec spec;  // seeds (1, 0.5)
  const Extremal base = pure_motion_extremal(sys, table, spec, opts);
  PureMotionSpec scaled = spec;
  scaled.seed_pos *= 3.0;
  scaled.seed_vel *= 3.0;
  const Extremal big = pure_motion_extremal(sys, table, scaled, opts);

  REQUIRE(base.nodes() == big.nodes());
  for (std::size_t k = 0; k < base.nodes(); k += 37) {
    CHECK(base.u[k] == big.u[k]);
    CHECK(std::abs(base.phi[k][2] * 3.0 - big.phi[k][2]) <= 1e-12);
    CHECK((base.x[k] - big.x[k]).norm() <= 1e-12);
  }
  const auto ev1 = base.events_of_kind(EventKind::SignChange);
  const auto ev2 = big.events_of_kind(EventKind::SignChange);
  REQUIRE(ev1.size() == 1);
  REQUIRE(ev2.size() == 1);
  const double resolution = opts.step * std::pow(2.0, -opts.bisection_depth);
  CHECK(std::abs(ev1[0].t - ev2[0].t) <= 2 * resolution);
}

TEST_CASE("a switching-function zero landing on a grid node is handled") {
  // Double integrator with phi(t) = 0.1 - t: the zero sits exactly on the
  // node t = 0.1 = 100 h, so the node value lands inside the singular band
  // and the switching must still be booked exactly once with no chattering
  // abort and no stuck control.
  auto reg = VariableRegistry::create(
      {{"q", VarKind::Polynomial}, {"w", VarKind::Polynomial}}, 1);
  AffineSystem sys = build_affine(MechanicalSystemSpec::trivial(reg), {Bounds{}});
  LieTable table(sys);
  IntegratorOptions opts;
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd lam0(2);
  lam0 << 1.0, 0.1;  // lam2(t) = 0.1 - t
  const Extremal ext = integrate_extremal(sys, table, x0, lam0, 0.3, opts);

  const auto switches = ext.events_of_kind(EventKind::SignChange);
  REQUIRE(switches.size() == 1);
  CHECK(std::abs(switches[0].t - 0.1) <= opts.step + 1e-12);
  CHECK(ext.u.front()[0] == 1.0);
  CHECK(ext.u.back()[0] == -1.0);
}

TEST_CASE("integration guards") {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  IntegratorOptions opts;

  SUBCASE("zero adjoint is rejected up front") {
    CHECK_THROWS_WITH_AS(
        integrate_extremal(sys, table, Eigen::VectorXd::Zero(6),
                           Eigen::VectorXd::Zero(6), 1.0, opts),
        doctest::Contains("adjoint must be nonzero"), InvalidArgument);
  }

  SUBCASE("chattering guard aborts with a diagnostic") {
    opts.step = 5.0;  // one giant step so every event lands inside it
    opts.chatter_limit = 1;
    try {
      integrate_extremal(sys, table, vec6(0, 0, 0.3, 0, 0, 0),
                         vec6(0, 0, 1.0, 0, 0, 0.5), 5.0, opts);
      CHECK(false);
    } catch (const IntegrationError& e) {
      CHECK(e.kind() == IntegrationError::Kind::Chattering);
      CHECK(std::string(e.what()).find("chattering") != std::string::npos);
    }
  }

  SUBCASE("finite-time escape aborts with a non-finite diagnostic") {
    auto reg = VariableRegistry::create({{"a", VarKind::Polynomial}}, 1);
    AffineSystem blowup;
    blowup.reg = reg;
    blowup.drift = VectorField(reg, {parse_expr("a^2", reg)});
    LieTable btable(blowup);
    IntegratorOptions bopts;
    bopts.step = 1e-2;
    Eigen::VectorXd x0(1), lam0(1);
    x0 << 1.0;  // escapes at t = 1
    lam0 << 1.0;
    try {
      integrate_extremal(blowup, btable, x0, lam0, 2.0, bopts);
      CHECK(false);
    } catch (const IntegrationError& e) {
      CHECK(e.kind() == IntegrationError::Kind::NonFinite);
    }
  }

  SUBCASE("out-of-bounds initial control is rejected") {
    opts.initial_control = {0.0, 0.0, 5.0};
    CHECK_THROWS_AS(integrate_extremal(sys, table, vec6(0, 0, 0, 0, 0, 0),
                                       Eigen::VectorXd::Ones(6), 1.0, opts),
                    InvalidArgument);
  }

  SUBCASE("nonpositive horizon and step are rejected") {
    CHECK_THROWS_AS(integrate_extremal(sys, table, Eigen::VectorXd::Zero(6),
                                       Eigen::VectorXd::Ones(6), -1.0, opts),
                    InvalidArgument);
    opts.step = 0.0;
    CHECK_THROWS_AS(integrate_extremal(sys, table, Eigen::VectorXd::Zero(6),
                                       Eigen::VectorXd::Ones(6), 1.0, opts),
                    InvalidArgument);
  }
}
