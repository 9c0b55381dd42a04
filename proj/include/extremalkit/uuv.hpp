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

#ifndef EXTREMALKIT_UUV_HPP_
#define EXTREMALKIT_UUV_HPP_

#include <string>
#include <vector>

#include "extremalkit/pmp.hpp"

namespace extremalkit {

// Planar neutrally-buoyant ellipsoidal vehicle in an ideal fluid. State
// order (x, z, theta, v1, v3, omega): inertial position, orientation, body
// velocities (v1 surge along body axis 1, v3 heave along body axis 3) and
// the planar angular rate.
//
// m1, m3 are the body-fluid masses along the body axes, `inertia` the
// body-fluid planar moment of inertia. The vehicle must not be a circle
// (m1 != m3); the default parameters are arbitrary exact rationals chosen
// to keep the symbolic path exact.
struct UUVParams {
  Rational m1{3};
  Rational m3{5};
  Rational inertia{2};
  std::vector<Bounds> bounds{Bounds{}, Bounds{}, Bounds{}};  // u1, u2, u3

  void validate() const;
};

// The mechanical data (psi = identity, P_inv = blockdiag(R(theta), 1),
// body-frame kinetic energy) without the m1 != m3 restriction; the circle
// case is still a valid mechanical system, it only defeats the
// singular-control solve.
MechanicalSystemSpec uuv_mechanical_spec(const UUVParams& params);

// Validates params and compiles through the mechanical builder. The drift
// comes out as
//   (cos th v1 + sin th v3, cos th v3 - sin th v1, omega,
//    -v3 omega m3/m1, v1 omega m1/m3, v1 v3 (m3 - m1)/I)
// with g_1 = e4/m1, g_2 = e5/m3, g_3 = e6/I.
AffineSystem build_uuv(const UUVParams& params);

// Closed-form 2-singular extremal generators. Kinds are indexed by the
// body velocity that stays at zero along the motion:
//   Rotation:         v1 = v3 = 0;      u1, u2 singular; bang channel u3
//   TranslationBody1: v1 = omega = 0;   u1, u3 singular; bang channel u2
//                     (motion along body axis 3)
//   TranslationBody3: v3 = omega = 0;   u2, u3 singular; bang channel u1
//                     (motion along body axis 1)
enum class PureMotionKind { Rotation, TranslationBody1, TranslationBody3 };

struct PureMotionSpec {
  PureMotionKind kind = PureMotionKind::Rotation;
  double x = 0.0, z = 0.0, theta = 0.0;  // initial pose
  // Adjoint seeds. seed_pos multiplies the costate of the moving coordinate
  // (lambda3 for rotation, the motion-direction position costate for
  // translations); seed_vel seeds the costate of the moving velocity
  // (lambda6(0) for rotation, lambda4/lambda5(0) for translations). The
  // seeded costate then decays linearly: lambda_vel(t) = seed_vel -
  // seed_pos * t.
  double seed_pos = 1.0;
  double seed_vel = 0.5;
  double T = 2.0;

  void validate() const;
};

// Singular channel pair and the bang channel for a pure-motion kind.
struct PureMotionChannels {
  std::size_t singular_a = 0, singular_b = 0, bang = 0;
};
PureMotionChannels pure_motion_channels(PureMotionKind kind);

// Builds lambda(0) in the invariant adjoint subspace of the motion (the
// subspace where the singular phis stay identically zero) and integrates
// through the extremal engine.
Extremal pure_motion_extremal(const AffineSystem& sys, LieTable& table,
                              const PureMotionSpec& spec,
                              const IntegratorOptions& opts);

// Checks a classified 2-singular extremal against the switching
// restrictions: the nonsingular channel switches at most once, any
// switching state lies in the motion's zero-velocity set, the singular
// controls vanish, and on abnormal extremals switchings happen only at
// rest.
struct SwitchingRestrictionReport {
  bool applicable = false;
  std::string reason;  // when not applicable
  std::size_t singular_a = 0, singular_b = 0, nonsingular = 0;
  int switching_count = 0;
  bool count_ok = false;
  std::vector<double> switch_times;
  bool switch_state_ok = false;      // |zero-set velocities| <= state_tol
  bool singular_controls_zero = false;
  bool abnormal = false;
  bool abnormal_rest_ok = true;      // switchings only at rest when abnormal
  bool pass = false;
};
SwitchingRestrictionReport verify_switching_restrictions(const Extremal& ext,
                                        const AffineSystem& sys,
                                        double sg_tol = 1e-9, int window = 10,
                                        double state_tol = 1e-8);

}  // namespace extremalkit

#endif  // EXTREMALKIT_UUV_HPP_
