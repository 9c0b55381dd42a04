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

#ifndef EXTREMALKIT_PMP_HPP_
#define EXTREMALKIT_PMP_HPP_

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "extremalkit/mechanical.hpp"

namespace extremalkit {

// Memoized bracket tables for one affine system: ad powers ad_f^w g_i,
// mixed brackets [g_k, ad_f^{l-1} g_i], and the Jacobians the adjoint
// equation needs. Caches mutate on first use; not safe to share across
// threads without external synchronization.
class LieTable {
 public:
  explicit LieTable(const AffineSystem& sys) : sys_(&sys) {}

  const AffineSystem& system() const { return *sys_; }
  const VectorField& ad(int w, std::size_t i);
  // [g_k, ad_f^{l-1} g_i], l >= 1.
  const VectorField& mixed(int l, std::size_t i, std::size_t k);
  const PolyMatrix& drift_jacobian();
  const PolyMatrix& control_jacobian(std::size_t i);

 private:
  const AffineSystem* sys_;
  std::map<std::pair<int, std::size_t>, VectorField> ad_;
  std::map<std::tuple<int, std::size_t, std::size_t>, VectorField> mixed_;
  std::optional<PolyMatrix> df_;
  std::map<std::size_t, PolyMatrix> dg_;
};

enum class InBandPolicy { HoldPrevious, Zero, SingularLaw };

struct IntegratorOptions {
  double step = 1e-3;              // fixed step h, time units
  double sw_tol = 0.0;             // early-accept |phi| threshold in bisection
  double sg_tol = 1e-9;            // singular band |phi_i| <= sg_tol
  int bisection_depth = 30;        // event time accuracy h * 2^-depth
  InBandPolicy policy = InBandPolicy::HoldPrevious;
  // Only read when policy == SingularLaw: u(t, x, lambda, prev_u).
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&,
                                const Eigen::VectorXd&, const Eigen::VectorXd&)>
      singular_law;
  std::vector<double> initial_control;  // hold-previous seed; zeros if empty
  int chatter_limit = 4;           // events in one step before aborting
  int singular_window = 10;        // nodes in band to call an arc singular
  double lambda_floor = 1e-12;     // relative ||lambda|| abort threshold
};

enum class EventKind { SignChange, SingularEntry, SingularExit };

struct Event {
  std::size_t channel = 0;  // 0-based
  double t = 0.0;
  EventKind kind = EventKind::SignChange;
};

// Sampled Pontryagin extremal: fixed-step grid with event-refined
// sub-points. u at a node is the control applied on [t_k, t_{k+1}).
struct Extremal {
  RegistryPtr reg;
  std::size_t m = 0;
  std::vector<double> t;
  std::vector<Eigen::VectorXd> x;       // n per node
  std::vector<Eigen::VectorXd> lam;     // n per node
  std::vector<Eigen::VectorXd> u;       // m per node
  std::vector<Eigen::VectorXd> phi;     // m per node
  std::vector<double> H;
  std::vector<Event> events;
  IntegratorOptions opts;
  // |H| stayed within sg_tol at every node; classify_extremal confirms.
  bool abnormal_candidate = false;

  std::size_t nodes() const { return t.size(); }
  std::vector<Event> events_of_kind(EventKind kind) const;
};

// H(lambda, x, u) = lambda^t f(x) + sum_i lambda^t g_i(x) u_i.
double hamiltonian(const AffineSystem& sys, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& lam, const Eigen::VectorXd& u);

// Pointwise maximum condition: u_i = beta_i when phi_i > sg_tol, alpha_i
// when phi_i < -sg_tol, and the in-band policy value otherwise.
Eigen::VectorXd bang_bang_control(const Eigen::VectorXd& phi,
                                  const std::vector<Bounds>& bounds,
                                  const Eigen::VectorXd& prev_u, double sg_tol,
                                  InBandPolicy policy = InBandPolicy::HoldPrevious,
                                  const Eigen::VectorXd* law_value = nullptr);

// Integrates the Hamiltonian system xdot = f + G u, lamdot = -(Df + sum
// u_i Dg_i)^t lam under bang-bang feedback with classical RK4 at fixed
// step; switching-function sign changes are localized by bisection and
// inserted as nodes. Throws IntegrationError on lambda -> 0, non-finite
// values, or chattering (>= chatter_limit events inside one step).
Extremal integrate_extremal(const AffineSystem& sys, LieTable& table,
                            const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& lam0, double T,
                            const IntegratorOptions& opts);

// phi, phidot, phiddot at one (x, lambda, u).
//
// phidot is lambda^t [f, g_i] when `commutative`; otherwise
// the control-dependent brackets [g_j, g_i] are included. phiddot is
// lambda^t ad_f^2 g_i + sum_j lambda^t [g_j, [f, g_i]] u_j; when an
// AlphaTable is supplied the alpha form lambda^t ad_f^2 g_i + sum_j (sum_k
// alpha_ijk phi_k) u_j is also reported for cross-checking.
struct SwitchingState {
  Eigen::VectorXd phi, phi_dot, phi_ddot;
  std::optional<Eigen::VectorXd> phi_ddot_alpha;
  std::vector<bool> in_band;
};
SwitchingState switching_derivatives(const AffineSystem& sys, LieTable& table,
                                     const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& lam,
                                     const Eigen::VectorXd& u,
                                     double sg_tol = 1e-9,
                                     const AlphaTable* alpha = nullptr,
                                     bool commutative = true);

// Exact-rational variant (angles come in as circle pairs).
struct ExactSwitchingState {
  std::vector<Rational> phi, phi_dot, phi_ddot;
  std::vector<Rational> phi_ddot_alpha;  // empty unless alpha supplied
};
ExactSwitchingState switching_derivatives_exact(
    const AffineSystem& sys, LieTable& table, const ExactPoint& x,
    const std::vector<Rational>& lam, const std::vector<Rational>& u,
    const AlphaTable* alpha = nullptr, bool commutative = true);

// Per-channel classification (Definition 5): singular sub-intervals are
// runs of >= window nodes with |phi_i| <= sg_tol; otherwise the channel is
// regular with its switching count. The abnormal flag is set iff |H| <=
// sg_tol at every node.
struct SingularInterval {
  double t_begin = 0.0, t_end = 0.0;
  std::size_t first_node = 0, last_node = 0;
};
struct ChannelClassification {
  bool singular = false;
  std::vector<SingularInterval> intervals;
  int switching_count = 0;
};
struct Classification {
  std::vector<ChannelClassification> channels;
  bool abnormal = false;
  double max_abs_H = 0.0;
};
Classification classify_extremal(const Extremal& ext, double sg_tol,
                                 int window);

}  // namespace extremalkit

#endif  // EXTREMALKIT_PMP_HPP_
