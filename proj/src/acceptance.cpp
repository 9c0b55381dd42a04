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

#include "extremalkit/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "extremalkit/errors.hpp"
#include "extremalkit/fdcheck.hpp"
#include "extremalkit/linalg.hpp"
#include "extremalkit/presets.hpp"
#include "extremalkit/singular.hpp"
#include "extremalkit/system_io.hpp"
#include "extremalkit/uuv.hpp"
#include "extremalkit/witness.hpp"

namespace extremalkit {

namespace {

std::mt19937_64 seeded_rng(std::uint64_t salt) {
  return std::mt19937_64(witness_seed() ^ salt);
}

Rational small_rational(std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  int p = num(rng);
  while (nonzero && p == 0) p = num(rng);
  return Rational(p, den(rng));
}

std::vector<double> random_state(std::size_t n, std::mt19937_64& rng,
                                 double scale = 2.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(rng);
  return x;
}

ExactPoint random_exact(const VariableRegistry& reg, std::mt19937_64& rng) {
  ExactPoint pt = ExactPoint::zeros(reg);
  for (auto& v : pt.poly) v = small_rational(rng);
  for (auto& cs : pt.trig) {
    const Rational t = small_rational(rng);
    const Rational d = 1 + t * t;
    cs = {(1 - t * t) / d, 2 * t / d};
  }
  return pt;
}

}  // namespace

MechanicalSystemSpec randomized_mechanical_spec(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t r = 1 + rng() % 3;

  std::vector<std::pair<std::string, VarKind>> vars;
  for (std::size_t i = 0; i < r; ++i) {
    const bool angle = r >= 2 && i == 0;
    vars.emplace_back("q" + std::to_string(i + 1),
                      angle ? VarKind::Angle : VarKind::Polynomial);
  }
  for (std::size_t i = 0; i < r; ++i) {
    vars.emplace_back("w" + std::to_string(i + 1), VarKind::Polynomial);
  }
  RegistryPtr reg = VariableRegistry::create(std::move(vars), r);

  MechanicalSystemSpec spec = MechanicalSystemSpec::trivial(reg);

  // Constant SPD mass matrix M = L L^t with its exact rational inverse.
  std::uniform_int_distribution<int> entry(-3, 3);
  RationalMatrix L(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < i; ++j) L[i][j] = Rational(entry(rng));
    L[i][i] = Rational(1 + static_cast<int>(rng() % 3));
  }
  RationalMatrix M(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < r; ++k) M[i][j] += L[i][k] * L[j][k];
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      spec.M[i][j] = TrigPoly::constant(reg, M[i][j]);
    }
  }
  for (std::size_t col = 0; col < r; ++col) {
    std::vector<Rational> e(r, Rational(0));
    e[col] = 1;
    const auto x = rational_solve(M, e);
    for (std::size_t row = 0; row < r; ++row) {
      spec.M_inv[row][col] = TrigPoly::constant(reg, (*x)[row]);
    }
  }

  // Configuration-dependent full-rank input matrix: a rotation block in
  // the first two channels when an angle is available.
  if (r >= 2) {
    const std::size_t q1 = reg->require("q1");
    const TrigPoly c = TrigPoly::cosine(reg, q1);
    const TrigPoly s = TrigPoly::sine(reg, q1);
    spec.Q[0][0] = c;
    spec.Q[0][1] = s;
    spec.Q[1][0] = -s;
    spec.Q[1][1] = c;
  }

  // Random polynomial forces in (q, qdot).
  for (std::size_t k = 0; k < r; ++k) {
    TrigPoly n = TrigPoly::zero(reg);
    for (int t = 0; t < 3; ++t) {
      TrigPoly term = TrigPoly::constant(reg, small_rational(rng, true));
      for (std::size_t i = 0; i < reg->size(); ++i) {
        if (reg->is_angle(i)) {
          if (rng() % 2) term = term * TrigPoly::cosine(reg, i);
        } else {
          term = term * TrigPoly::variable(reg, i).pow(
                            static_cast<int>(rng() % 3));
        }
      }
      n += term;
    }
    spec.N[k] = n;
  }
  return spec;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;
};

std::string fmt(double v) { return format_double(v); }

// ---- criterion bodies -----------------------------------------------------

bool crit_commutativity(std::string& detail) {
  AffineSystem uuv = build_uuv(UUVParams{});
  if (!check_commutativity(uuv).all_brackets_zero) {
    detail = "UUV brackets not all zero";
    return false;
  }
  for (std::uint64_t seed : {101ull, 202ull, 303ull}) {
    MechanicalSystemSpec spec = randomized_mechanical_spec(seed);
    AffineSystem sys = build_affine(spec, std::vector<Bounds>(spec.m, Bounds{}));
    if (!check_commutativity(sys).all_brackets_zero) {
      detail = "randomized build (seed " + std::to_string(seed) +
               ") has a nonzero [g_i, g_j]";
      return false;
    }
  }
  detail = "UUV + 3 randomized builds: all [g_i, g_j] symbolically zero";
  return true;
}

bool crit_degree_chain(std::string& detail) {
  AffineSystem sys = build_uuv(UUVParams{});
  if (!(degree_class(sys.drift) == DegreeClass{1, 2})) {
    detail = "drift class != (1, 2)";
    return false;
  }
  for (int s = 1; s <= 3; ++s) {
    for (const auto& g : sys.controls) {
      if (!degree_class(ad_power(sys.drift, g, s)).leq(DegreeClass{s - 1, s})) {
        detail = "ad_f^" + std::to_string(s) + " g violates V^{s-1,s}";
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const VectorField fg = lie_bracket(sys.drift, sys.controls[i]);
    for (std::size_t j = 0; j < 3; ++j) {
      if (!degree_class(lie_bracket(sys.controls[j], fg))
               .leq(DegreeClass{-1, 0})) {
        detail = "[g_j, [f, g_i]] violates V^{-1,0}";
        return false;
      }
    }
  }
  detail = "f in V^{1,2}; ad_f^s g_i in V^{s-1,s} (s=1..3); [g_j,[f,g_i]] in V^{-1,0}";
  return true;
}

bool crit_bracket_oracle(std::string& detail) {
  AffineSystem sys = build_uuv(UUVParams{});
  auto rng = seeded_rng(3);
  const FieldFn f = field_fn(sys.drift);
  std::vector<VectorField> symbolic;
  std::vector<FieldFn> oracle;
  for (int i = 0; i < 3; ++i) {
    symbolic.push_back(lie_bracket(sys.drift, sys.controls[i]));
    oracle.push_back(fd_bracket(f, field_fn(sys.controls[i]), 1e-6));
  }
  symbolic.push_back(ad_power(sys.drift, sys.controls[0], 2));
  oracle.push_back(
      fd_bracket(f, fd_bracket(f, field_fn(sys.controls[0]), 1e-5), 1e-4));
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> x = random_state(6, rng);
    Eigen::VectorXd xe = Eigen::Map<const Eigen::VectorXd>(x.data(), 6);
    for (std::size_t k = 0; k < symbolic.size(); ++k) {
      const Eigen::VectorXd sym = symbolic[k].evaluate(x);
      const double err = (sym - oracle[k](xe)).norm() / std::max(1.0, sym.norm());
      worst = std::max(worst, err);
    }
  }
  detail = "100 points, worst relative error " + fmt(worst);
  return worst <= 1e-6;
}

double hamiltonian_drift(double step) {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  IntegratorOptions opts;
  opts.step = step;
  opts.bisection_depth = 45;  // event-time H jumps stay below truncation
  Eigen::VectorXd x0(6), lam0(6);
  x0 << 0.0, 0.0, 0.0, 4.0, -3.0, 2.5;
  lam0 << 0.3, -0.5, 0.7, 0.4, -0.6, 0.2;
  const Extremal ext = integrate_extremal(sys, table, x0, lam0, 5.0, opts);
  double worst = 0.0;
  for (double h : ext.H) worst = std::max(worst, std::abs(h - ext.H.front()));
  return worst;
}

bool crit_hamiltonian(std::string& detail) {
  const double err_h = hamiltonian_drift(1e-3);
  const double err_h2 = hamiltonian_drift(5e-4);
  detail = "max |H - H0| = " + fmt(err_h) + " at h=1e-3, " + fmt(err_h2) +
           " at h=5e-4 (ratio " + fmt(err_h / std::max(err_h2, 1e-300)) + ")";
  return err_h <= 1e-6 && err_h2 * 10.0 <= err_h;
}

bool crit_pure_rotation(std::string& detail) {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  IntegratorOptions opts;  // h = 1e-3, depth 30
  PureMotionSpec spec;     // rotation, seeds (1, 0.5), T = 2
  const Extremal ext = pure_motion_extremal(sys, table, spec, opts);

  double phi12 = 0.0, v_max = 0.0;
  for (std::size_t k = 0; k < ext.nodes(); ++k) {
    phi12 = std::max({phi12, std::abs(ext.phi[k][0]), std::abs(ext.phi[k][1])});
    v_max = std::max({v_max, std::abs(ext.x[k][3]), std::abs(ext.x[k][4])});
  }

  // Affine least-squares fit of phi3(t).
  const std::size_t N = ext.nodes();
  Eigen::MatrixXd A(N, 2);
  Eigen::VectorXd b(N);
  for (std::size_t k = 0; k < N; ++k) {
    A(k, 0) = 1.0;
    A(k, 1) = ext.t[k];
    b(k) = ext.phi[k][2];
  }
  const Eigen::Vector2d fit = A.colPivHouseholderQr().solve(b);
  const double fit_residual = (A * fit - b).cwiseAbs().maxCoeff();

  const auto switches = ext.events_of_kind(EventKind::SignChange);
  const double resolution = opts.step * std::pow(2.0, -opts.bisection_depth);
  const bool one_switch = switches.size() == 1;
  const double t_err =
      one_switch ? std::abs(switches[0].t - 0.5) : std::numeric_limits<double>::infinity();

  detail = "max|phi_1,2| = " + fmt(phi12) + ", fit residual " + fmt(fit_residual) +
           ", switches " + std::to_string(switches.size()) + ", |t* - 0.5| = " +
           fmt(t_err) + " (budget " + fmt(2 * resolution) + "), max|v| = " +
           fmt(v_max);
  return phi12 <= 1e-10 && fit_residual <= 1e-9 && one_switch &&
         t_err <= 2 * resolution && v_max <= 1e-12;
}

bool crit_theorem1(std::string& detail) {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);

  IntegratorOptions opts;
  Eigen::VectorXd x0(6), lam0(6);
  x0 << 0.0, 0.0, 0.0, 0.4, -0.3, 0.2;
  lam0 << 0.3, -0.5, 0.7, 0.4, -0.6, 0.2;
  const Extremal ext = integrate_extremal(sys, table, x0, lam0, 5.0, opts);
  SamplePoints points = sample_extremal_states(ext, 60);
  if (points.count() < 50) {
    detail = "only " + std::to_string(points.count()) + " sampled points";
    return false;
  }

  SpanConditionQuery query;
  query.K1 = {0, 1, 2};
  query.J = {{0, 1, 2}, {0, 1, 2}};
  const SpanConditionVerdict verdict = check_span_conditions(sys, table, query, points);
  bool rank_ok = true;
  for (const auto& ev : verdict.evidence) rank_ok = rank_ok && ev.final_rank == 6;
  const bool uuv_ok =
      verdict.conditions_hold && rank_ok &&
      verdict.conclusion.find("no totally singular") != std::string::npos;

  // Fabricated rank-deficient system: the checker must stay inconclusive.
  auto reg = VariableRegistry::create(
      {{"a", VarKind::Polynomial}, {"b", VarKind::Polynomial}}, 1);
  AffineSystem degenerate;
  degenerate.reg = reg;
  degenerate.drift = VectorField::zero(reg);
  degenerate.controls = {
      VectorField(reg, {TrigPoly::constant(reg, Rational(1)), TrigPoly::zero(reg)}),
      VectorField(reg, {TrigPoly::constant(reg, Rational(2)), TrigPoly::zero(reg)})};
  degenerate.bounds = {Bounds{}, Bounds{}};
  SpanConditionQuery bad;
  bad.K1 = {0, 1};
  bad.J = {{0, 1}, {0, 1}};
  SamplePoints pts2;
  auto rng = seeded_rng(6);
  pts2.approx.push_back(random_state(2, rng));
  LieTable degenerate_table(degenerate);
  const SpanConditionVerdict v2 =
      check_span_conditions(degenerate, degenerate_table, bad, pts2);
  const bool degenerate_ok = !v2.conditions_hold && v2.conclusion.empty();

  detail = std::string("UUV verdict asserted at ") +
           std::to_string(points.count()) + " points; degenerate system " +
           (degenerate_ok ? "stays inconclusive" : "WRONGLY asserted");
  return uuv_ok && degenerate_ok;
}

bool crit_eq19_eq20(std::string& detail) {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  const AlphaTable alpha = alpha_decomposition(sys);
  auto rng = seeded_rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ExactPoint x = random_exact(*sys.reg, rng);
    std::vector<Rational> lam, u;
    for (int i = 0; i < 6; ++i) lam.push_back(small_rational(rng));
    for (int i = 0; i < 3; ++i) u.push_back(small_rational(rng));
    const ExactSwitchingState st =
        switching_derivatives_exact(sys, table, x, lam, u, &alpha);
    for (int i = 0; i < 3; ++i) {
      if (!(st.phi_ddot[i] == st.phi_ddot_alpha[i])) {
        detail = "mismatch at trial " + std::to_string(trial);
        return false;
      }
    }
  }
  detail = "both second-derivative forms agree exactly at 50 rational points";
  return true;
}

bool crit_singular_solve(std::string& detail) {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  const AlphaTable alpha = alpha_decomposition(sys);
  auto rng = seeded_rng(8);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);

  double worst_u = 0.0, worst_res = 0.0, worst_ddot = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
    x[0] = dist(rng);
    x[1] = dist(rng);
    x[2] = dist(rng);  // pose free, velocities zero (pure-rotation state)
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(6);
    lam[2] = dist(rng);
    lam[5] = dist(rng) + 2.0;  // keep phi_3 away from zero
    const double u3 = trial % 2 == 0 ? 1.0 : -1.0;
    const SingularControlSolution sol =
        singular_control_solve(sys, table, alpha, x, lam, 2, u3);
    worst_u = std::max({worst_u, std::abs(sol.u[0]), std::abs(sol.u[1])});
    worst_res = std::max(worst_res, sol.solve_residual);

    Eigen::VectorXd u(3);
    u << sol.u[0], sol.u[1], u3;
    const SwitchingState st = switching_derivatives(sys, table, x, lam, u);
    worst_ddot =
        std::max({worst_ddot, std::abs(st.phi_ddot[0]), std::abs(st.phi_ddot[1])});
  }

  bool circle_rejected = false;
  try {
    UUVParams circle;
    circle.m1 = 4;
    circle.m3 = 4;
    AffineSystem csys = build_affine(uuv_mechanical_spec(circle), circle.bounds);
    LieTable ctable(csys);
    const AlphaTable calpha = alpha_decomposition(csys);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(6);
    lam[5] = 1.0;
    singular_control_solve(csys, ctable, calpha, x, lam, 2, 1.0);
  } catch (const SingularMatrixError&) {
    circle_rejected = true;
  }

  detail = "max |u_sing| = " + fmt(worst_u) + ", residual " + fmt(worst_res) +
           ", |phi_ddot| after substitution " + fmt(worst_ddot) +
           ", m1 = m3 rejected: " + (circle_rejected ? "yes" : "no");
  return worst_u <= 1e-10 && worst_res <= 1e-10 && worst_ddot <= 1e-9 &&
         circle_rejected;
}

bool crit_concat(std::string& detail) {
  AffineSystem sys = build_uuv(UUVParams{});
  LieTable table(sys);
  SamplePoints junction;
  auto rng = seeded_rng(9);
  junction.approx.push_back(random_state(6, rng));

  const ConcatVerdict vertical_horizontal =
      concat_check(sys, table, {0, 2}, {1, 2}, junction);
  const ConcatVerdict rotation_translation =
      concat_check(sys, table, {0, 1}, {1, 2}, junction);
  const ConcatVerdict general = concat_check(sys, table, {0, 2}, {1, 2},
                                             junction, nullptr, nullptr,
                                             /*allow_fast_path=*/false);

  detail = "fast-path rejections: " +
           std::string(vertical_horizontal.outcome ==
                                ConcatVerdict::Outcome::NotOptimal
                            ? "yes"
                            : "no") +
           "/" +
           (rotation_translation.outcome == ConcatVerdict::Outcome::NotOptimal
                ? "yes"
                : "no") +
           "; junction-span path rank " + std::to_string(general.junction_rank);
  return vertical_horizontal.outcome == ConcatVerdict::Outcome::NotOptimal &&
         rotation_translation.outcome == ConcatVerdict::Outcome::NotOptimal &&
         general.outcome == ConcatVerdict::Outcome::NotExtremal &&
         general.junction_rank == 6;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool crit_determinism(const std::string& cli_path, std::string& detail) {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() /
      ("extremalkit_det_" + std::to_string(witness_seed() ^ 0xD37ull));
  fs::remove_all(dir);

  auto run_once = [&]() -> std::vector<std::string> {
    if (!cli_path.empty()) {
      const std::string cmd = "'" + cli_path + "' preset uuv-rotation --out-dir '" +
                              dir.string() + "' > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return {};
    } else {
      PresetOptions opts;
      opts.out_dir = dir.string();
      run_preset("uuv-rotation", opts, {"preset", "uuv-rotation"});
    }
    return {slurp((dir / "uuv-rotation.csv").string()),
            slurp((dir / "uuv-rotation_events.json").string()),
            slurp((dir / "uuv-rotation_report.json").string())};
  };

  const auto first = run_once();
  const auto second = run_once();
  fs::remove_all(dir);
  if (first.empty() || second.empty()) {
    detail = "preset run failed";
    return false;
  }
  const bool same = first == second && !first[0].empty();
  detail = same ? "repeated preset runs are byte-identical (csv, events, report)"
                : "artifacts differ between runs";
  return same;
}

}  // namespace

std::vector<AcceptanceResult> run_acceptance(const std::string& cli_path) {
  const std::vector<Criterion> criteria{
      {1, "commutativity (all [g_i, g_j] = 0 symbolically)", crit_commutativity},
      {2, "degree chain (drift V^{1,2}, ad powers, mixed brackets)",
       crit_degree_chain},
      {3, "bracket oracle equivalence (central differences, 1e-6)",
       crit_bracket_oracle},
      {4, "Hamiltonian conservation (1e-6 at h=1e-3, 10x on halving)",
       crit_hamiltonian},
      {5, "pure-rotation singular extremal (phi bounds, switch time)",
       crit_pure_rotation},
      {6, "span-condition checker (rank 6 at 50+ points, no false assertion)",
       crit_theorem1},
      {7, "second-derivative forms agree exactly at rational points",
       crit_eq19_eq20},
      {8, "singular-control solve (zero controls, zero-determinant rejection)",
       crit_singular_solve},
      {9, "concatenation rejection (union fast path + junction span)",
       crit_concat},
      {10, "preset determinism (byte-identical artifacts)",
       [&cli_path](std::string& d) { return crit_determinism(cli_path, d); }},
  };

  std::vector<AcceptanceResult> results;
  for (const auto& c : criteria) {
    AcceptanceResult r;
    r.id = c.id;
    r.name = c.name;
    const auto start = Clock::now();
    try {
      r.pass = c.run(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    // Pinned runtime budgets from the criteria list.
    if (c.id == 1 && r.seconds >= 1.0) {
      r.pass = false;
      r.detail += " [over 1 s budget]";
    }
    if (c.id == 2 && r.seconds >= 5.0) {
      r.pass = false;
      r.detail += " [over 5 s budget]";
    }
    if (c.id == 3 && r.seconds >= 10.0) {
      r.pass = false;
      r.detail += " [over 10 s budget]";
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool print_acceptance(std::ostream& os,
                      const std::vector<AcceptanceResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    os << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": "
       << r.name << " — " << r.detail << " (" << format_double(r.seconds)
       << " s)\n";
    all = all && r.pass;
  }
  os << (all ? "ACCEPTANCE: ALL CRITERIA PASSED" : "ACCEPTANCE: FAILURES PRESENT")
     << "\n";
  return all;
}

}  // namespace extremalkit
