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

#include "extremalkit/uuv.hpp"

#include <cmath>
#include <set>

#include "extremalkit/errors.hpp"

namespace extremalkit {

namespace {

RegistryPtr uuv_registry() {
  return VariableRegistry::create({{"x", VarKind::Polynomial},
                                   {"z", VarKind::Polynomial},
                                   {"theta", VarKind::Angle},
                                   {"v1", VarKind::Polynomial},
                                   {"v3", VarKind::Polynomial},
                                   {"omega", VarKind::Polynomial}},
                                  3);
}

// Coriolis vector N_k = sum_ij dM_kj/dq_i qd_i qd_j
//                       - 1/2 sum_ij dM_ij/dq_k qd_i qd_j
// with the x2 variables standing for the raw velocities qdot (the builder
// substitutes qdot = P_inv x2 afterwards).
std::vector<TrigPoly> coriolis_vector(const PolyMatrix& M,
                                      const RegistryPtr& reg) {
  const std::size_t r = M.size();
  std::vector<TrigPoly> qd;
  qd.reserve(r);
  for (std::size_t j = 0; j < r; ++j) {
    qd.push_back(TrigPoly::variable(reg, r + j));
  }
  std::vector<TrigPoly> N(r, TrigPoly::zero(reg));
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        N[k] += M[k][j].derivative(i) * qd[i] * qd[j];
        N[k] -= Rational(1, 2) * M[i][j].derivative(k) * qd[i] * qd[j];
      }
    }
  }
  return N;
}

}  // namespace

void UUVParams::validate() const {
  if (!(m1 > 0 && m3 > 0 && inertia > 0)) {
    throw InvalidArgument("UUV parameters must be positive");
  }
  if (m1 == m3) {
    throw InvalidArgument(
        "UUV requires m1 != m3 (the planar vehicle must not be a circle)");
  }
  if (bounds.size() != 3) {
    throw InvalidArgument("UUV takes three control bound pairs");
  }
}

MechanicalSystemSpec uuv_mechanical_spec(const UUVParams& params) {
  RegistryPtr reg = uuv_registry();
  const std::size_t r = 3;
  MechanicalSystemSpec spec = MechanicalSystemSpec::trivial(reg);

  const std::size_t theta = reg->require("theta");
  const TrigPoly c = TrigPoly::cosine(reg, theta);
  const TrigPoly s = TrigPoly::sine(reg, theta);
  const TrigPoly one = TrigPoly::constant(reg, Rational(1));
  const TrigPoly zero = TrigPoly::zero(reg);

  // P_inv = blockdiag(R(theta), 1) with R = [[c, s], [-s, c]]; the input
  // matrix Q coincides with P_inv for this vehicle.
  PolyMatrix P_inv{{c, s, zero}, {-s, c, zero}, {zero, zero, one}};
  PolyMatrix P{{c, -s, zero}, {s, c, zero}, {zero, zero, one}};
  PolyMatrix dP_dtheta{{-s, -c, zero}, {c, -s, zero}, {zero, zero, zero}};

  // Body-frame kinetic energy diag(m1, m3, I) pulled back to inertial
  // coordinates: M = P^t M_b P, M_inv = P_inv M_b^{-1} P_inv^t.
  PolyMatrix Mb = poly_zeros(reg, r, r);
  Mb[0][0] = TrigPoly::constant(reg, params.m1);
  Mb[1][1] = TrigPoly::constant(reg, params.m3);
  Mb[2][2] = TrigPoly::constant(reg, params.inertia);
  PolyMatrix Mb_inv = poly_zeros(reg, r, r);
  Mb_inv[0][0] = TrigPoly::constant(reg, 1 / params.m1);
  Mb_inv[1][1] = TrigPoly::constant(reg, 1 / params.m3);
  Mb_inv[2][2] = TrigPoly::constant(reg, 1 / params.inertia);

  spec.M = poly_mat_mul(poly_transpose(P), poly_mat_mul(Mb, P));
  spec.M_inv = poly_mat_mul(P_inv, poly_mat_mul(Mb_inv, poly_transpose(P_inv)));
  spec.N = coriolis_vector(spec.M, reg);
  spec.Q = P_inv;
  spec.P = P;
  spec.P_inv = P_inv;
  spec.dP_dq = {poly_zeros(reg, r, r), poly_zeros(reg, r, r), dP_dtheta};
  return spec;
}

AffineSystem build_uuv(const UUVParams& params) {
  params.validate();
  return build_affine(uuv_mechanical_spec(params), params.bounds);
}

PureMotionChannels pure_motion_channels(PureMotionKind kind) {
  switch (kind) {
    case PureMotionKind::Rotation:
      return {0, 1, 2};
    case PureMotionKind::TranslationBody1:
      return {0, 2, 1};
    case PureMotionKind::TranslationBody3:
      return {1, 2, 0};
  }
  throw InvalidArgument("unknown pure-motion kind");
}

void PureMotionSpec::validate() const {
  if (seed_pos == 0.0 && seed_vel == 0.0) {
    throw InvalidArgument("pure-motion adjoint seeds must not both be zero");
  }
  if (T <= 0.0) throw InvalidArgument("pure-motion horizon must be positive");
}

Extremal pure_motion_extremal(const AffineSystem& sys, LieTable& table,
                              const PureMotionSpec& spec,
                              const IntegratorOptions& opts) {
  spec.validate();
  if (sys.n() != 6 || sys.m() != 3) {
    throw InvalidArgument("pure_motion_extremal expects the planar UUV system");
  }

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(6);
  x0[0] = spec.x;
  x0[1] = spec.z;
  x0[2] = spec.theta;

  // The invariant adjoint subspace per kind: the seeded position costate
  // forces lambda_vel' = -seed_pos, every other costate stays zero, so the
  // singular phis are identically zero along the motion.
  Eigen::VectorXd lam0 = Eigen::VectorXd::Zero(6);
  const double c = std::cos(spec.theta);
  const double s = std::sin(spec.theta);
  switch (spec.kind) {
    case PureMotionKind::Rotation:
      lam0[2] = spec.seed_pos;
      lam0[5] = spec.seed_vel;
      break;
    case PureMotionKind::TranslationBody1:
      // Motion along body axis 3; inertial direction (sin th, cos th).
      lam0[0] = spec.seed_pos * s;
      lam0[1] = spec.seed_pos * c;
      lam0[4] = spec.seed_vel;
      break;
    case PureMotionKind::TranslationBody3:
      // Motion along body axis 1; inertial direction (cos th, -sin th).
      lam0[0] = spec.seed_pos * c;
      lam0[1] = -spec.seed_pos * s;
      lam0[3] = spec.seed_vel;
      break;
  }
  return integrate_extremal(sys, table, x0, lam0, spec.T, opts);
}

SwitchingRestrictionReport verify_switching_restrictions(const Extremal& ext,
                                        const AffineSystem& sys,
                                        double sg_tol, int window,
                                        double state_tol) {
  SwitchingRestrictionReport report;
  if (ext.m != 3 || sys.n() != 6) {
    report.reason = "not applicable: not a planar UUV extremal";
    return report;
  }

  const Classification cls = classify_extremal(ext, sg_tol, window);
  std::vector<std::size_t> singular;
  for (std::size_t i = 0; i < 3; ++i) {
    // Singular across the whole horizon, not merely on a sub-interval.
    if (cls.channels[i].singular &&
        cls.channels[i].intervals.size() == 1 &&
        cls.channels[i].intervals[0].first_node == 0 &&
        cls.channels[i].intervals[0].last_node == ext.nodes() - 1) {
      singular.push_back(i);
    }
  }
  if (singular.size() != 2) {
    report.reason = "not applicable: extremal is not 2-singular";
    return report;
  }

  report.applicable = true;
  report.singular_a = singular[0];
  report.singular_b = singular[1];
  report.nonsingular = 3 - singular[0] - singular[1];
  report.abnormal = cls.abnormal;

  // Zero set of the switching state per singular pair: {v1 = v3 = 0} for
  // the rotation pair, {v_k = omega = 0} for the translation pairs.
  std::vector<std::size_t> zero_vars;
  if (report.singular_a == 0 && report.singular_b == 1) {
    zero_vars = {3, 4};
  } else if (report.singular_a == 0 && report.singular_b == 2) {
    zero_vars = {3, 5};
  } else {
    zero_vars = {4, 5};
  }

  report.switching_count = cls.channels[report.nonsingular].switching_count;
  report.count_ok = report.switching_count <= 1;

  report.switch_state_ok = true;
  report.abnormal_rest_ok = true;
  for (const auto& e : ext.events) {
    if (e.kind != EventKind::SignChange || e.channel != report.nonsingular) {
      continue;
    }
    report.switch_times.push_back(e.t);
    // State at the event node.
    std::size_t node = 0;
    for (std::size_t k = 0; k < ext.nodes(); ++k) {
      if (ext.t[k] == e.t) {
        node = k;
        break;
      }
    }
    for (std::size_t v : zero_vars) {
      if (std::abs(ext.x[node][static_cast<Eigen::Index>(v)]) > state_tol) {
        report.switch_state_ok = false;
      }
    }
    if (report.abnormal) {
      for (std::size_t v : {3u, 4u, 5u}) {
        if (std::abs(ext.x[node][static_cast<Eigen::Index>(v)]) > state_tol) {
          report.abnormal_rest_ok = false;
        }
      }
    }
  }

  report.singular_controls_zero = true;
  for (std::size_t k = 0; k < ext.nodes(); ++k) {
    for (std::size_t i : singular) {
      if (std::abs(ext.u[k][static_cast<Eigen::Index>(i)]) > sg_tol) {
        report.singular_controls_zero = false;
      }
    }
  }

  report.pass = report.count_ok && report.switch_state_ok &&
                report.singular_controls_zero && report.abnormal_rest_ok;
  return report;
}

}  // namespace extremalkit
