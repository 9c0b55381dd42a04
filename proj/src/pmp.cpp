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

#include "extremalkit/pmp.hpp"

#include <cmath>
#include <span>

#include "extremalkit/errors.hpp"

namespace extremalkit {

namespace {

std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

const VectorField& LieTable::ad(int w, std::size_t i) {
  if (w < 0) throw InvalidArgument("LieTable::ad: negative order");
  if (i >= sys_->m()) throw InvalidArgument("LieTable::ad: channel out of range");
  const auto key = std::make_pair(w, i);
  auto it = ad_.find(key);
  if (it != ad_.end()) return it->second;
  VectorField value = (w == 0)
                          ? sys_->controls[i]
                          : lie_bracket(sys_->drift, ad(w - 1, i));
  return ad_.emplace(key, std::move(value)).first->second;
}

const VectorField& LieTable::mixed(int l, std::size_t i, std::size_t k) {
  if (l < 1) throw InvalidArgument("LieTable::mixed: l must be >= 1");
  if (i >= sys_->m() || k >= sys_->m()) {
    throw InvalidArgument("LieTable::mixed: channel out of range");
  }
  const auto key = std::make_tuple(l, i, k);
  auto it = mixed_.find(key);
  if (it != mixed_.end()) return it->second;
  VectorField value = lie_bracket(sys_->controls[k], ad(l - 1, i));
  return mixed_.emplace(key, std::move(value)).first->second;
}

const PolyMatrix& LieTable::drift_jacobian() {
  if (!df_) df_ = jacobian(sys_->drift);
  return *df_;
}

const PolyMatrix& LieTable::control_jacobian(std::size_t i) {
  auto it = dg_.find(i);
  if (it != dg_.end()) return it->second;
  return dg_.emplace(i, jacobian(sys_->controls[i])).first->second;
}

double hamiltonian(const AffineSystem& sys, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& lam, const Eigen::VectorXd& u) {
  const std::size_t n = sys.n();
  if (static_cast<std::size_t>(x.size()) != n ||
      static_cast<std::size_t>(lam.size()) != n ||
      static_cast<std::size_t>(u.size()) != sys.m()) {
    throw InvalidArgument("hamiltonian: dimension mismatch");
  }
  double h = lam.dot(sys.drift.evaluate(as_span(x)));
  for (std::size_t i = 0; i < sys.m(); ++i) {
    h += u[static_cast<Eigen::Index>(i)] *
         lam.dot(sys.controls[i].evaluate(as_span(x)));
  }
  return h;
}

Eigen::VectorXd bang_bang_control(const Eigen::VectorXd& phi,
                                  const std::vector<Bounds>& bounds,
                                  const Eigen::VectorXd& prev_u, double sg_tol,
                                  InBandPolicy policy,
                                  const Eigen::VectorXd* law_value) {
  const Eigen::Index m = phi.size();
  if (prev_u.size() != m || bounds.size() != static_cast<std::size_t>(m)) {
    throw InvalidArgument("bang_bang_control: dimension mismatch");
  }
  Eigen::VectorXd u(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (phi[i] > sg_tol) {
      u[i] = bounds[i].hi_d();
    } else if (phi[i] < -sg_tol) {
      u[i] = bounds[i].lo_d();
    } else {
      switch (policy) {
        case InBandPolicy::HoldPrevious:
          u[i] = prev_u[i];
          break;
        case InBandPolicy::Zero:
          u[i] = 0.0;
          break;
        case InBandPolicy::SingularLaw:
          if (law_value == nullptr || law_value->size() != m) {
            throw InvalidArgument("bang_bang_control: missing singular-law value");
          }
          if ((*law_value)[i] < bounds[i].lo_d() ||
              (*law_value)[i] > bounds[i].hi_d()) {
            throw InvalidArgument(
                "bang_bang_control: singular-law control leaves the bounds");
          }
          u[i] = (*law_value)[i];
          break;
      }
    }
  }
  return u;
}

namespace {

// Integration workspace: evaluates the coupled right-hand side with the
// control frozen, which keeps RK4 at full order between events.
class HamiltonianFlow {
 public:
  HamiltonianFlow(const AffineSystem& sys, LieTable& table)
      : sys_(&sys), table_(&table), n_(sys.n()), m_(sys.m()) {
    table.drift_jacobian();
    for (std::size_t i = 0; i < m_; ++i) table.control_jacobian(i);
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

  // y = (x, lambda).
  Eigen::VectorXd deriv(const Eigen::VectorXd& y,
                        const Eigen::VectorXd& u) const {
    const auto x = y.head(static_cast<Eigen::Index>(n_));
    const auto lam = y.tail(static_cast<Eigen::Index>(n_));
    const Eigen::VectorXd xv(x);
    const std::span<const double> xs = as_span(xv);

    Eigen::VectorXd xdot = sys_->drift.evaluate(xs);
    for (std::size_t i = 0; i < m_; ++i) {
      xdot += u[static_cast<Eigen::Index>(i)] * sys_->controls[i].evaluate(xs);
    }

    Eigen::MatrixXd J(n_, n_);
    const PolyMatrix& df = table_->drift_jacobian();
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        double v = df[r][c].evaluate(xs);
        for (std::size_t i = 0; i < m_; ++i) {
          const TrigPoly& e = table_->control_jacobian(i)[r][c];
          if (!e.is_zero()) v += u[static_cast<Eigen::Index>(i)] * e.evaluate(xs);
        }
        J(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
      }
    }

    Eigen::VectorXd out(2 * n_);
    out.head(static_cast<Eigen::Index>(n_)) = xdot;
    out.tail(static_cast<Eigen::Index>(n_)) = -J.transpose() * lam;
    return out;
  }

  Eigen::VectorXd rk4(const Eigen::VectorXd& y, const Eigen::VectorXd& u,
                      double h) const {
    const Eigen::VectorXd k1 = deriv(y, u);
    const Eigen::VectorXd k2 = deriv(y + 0.5 * h * k1, u);
    const Eigen::VectorXd k3 = deriv(y + 0.5 * h * k2, u);
    const Eigen::VectorXd k4 = deriv(y + h * k3, u);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  Eigen::VectorXd phi(const Eigen::VectorXd& y) const {
    const auto x = y.head(static_cast<Eigen::Index>(n_));
    const auto lam = y.tail(static_cast<Eigen::Index>(n_));
    const Eigen::VectorXd xv(x);
    Eigen::VectorXd out(static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      out[static_cast<Eigen::Index>(i)] =
          lam.dot(sys_->controls[i].evaluate(as_span(xv)));
    }
    return out;
  }

  double hamiltonian_of(const Eigen::VectorXd& y,
                        const Eigen::VectorXd& u) const {
    const auto lam = y.tail(static_cast<Eigen::Index>(n_));
    Eigen::VectorXd d = deriv(y, u);
    return lam.dot(d.head(static_cast<Eigen::Index>(n_)));
  }

 private:
  const AffineSystem* sys_;
  LieTable* table_;
  std::size_t n_, m_;
};

bool crosses(double a, double b, double sg_tol) {
  return a * b < 0.0 && std::max(std::abs(a), std::abs(b)) > sg_tol;
}

}  // namespace

std::vector<Event> Extremal::events_of_kind(EventKind kind) const {
  std::vector<Event> out;
  for (const auto& e : events) {
    if (e.kind == kind) out.push_back(e);
  }
  return out;
}

Extremal integrate_extremal(const AffineSystem& sys, LieTable& table,
                            const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& lam0, double T,
                            const IntegratorOptions& opts) {
  const std::size_t n = sys.n();
  const std::size_t m = sys.m();
  if (static_cast<std::size_t>(x0.size()) != n ||
      static_cast<std::size_t>(lam0.size()) != n) {
    throw InvalidArgument("integrate_extremal: state/adjoint dimension mismatch");
  }
  if (lam0.norm() == 0.0) {
    throw InvalidArgument("adjoint must be nonzero (lambda(t) != 0 along an extremal)");
  }
  if (T <= 0.0) throw InvalidArgument("integrate_extremal: T must be positive");
  if (opts.step <= 0.0 || opts.sg_tol <= 0.0) {
    throw InvalidArgument("integrate_extremal: step and tolerances must be positive");
  }

  const HamiltonianFlow flow(sys, table);
  const double lambda_floor = opts.lambda_floor * lam0.norm();

  Extremal ext;
  ext.reg = sys.reg;
  ext.m = m;
  ext.opts = opts;

  Eigen::VectorXd y(2 * n);
  y.head(static_cast<Eigen::Index>(n)) = x0;
  y.tail(static_cast<Eigen::Index>(n)) = lam0;

  Eigen::VectorXd prev_u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  if (!opts.initial_control.empty()) {
    if (opts.initial_control.size() != m) {
      throw InvalidArgument("integrate_extremal: initial_control size mismatch");
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (opts.initial_control[i] < sys.bounds[i].lo_d() ||
          opts.initial_control[i] > sys.bounds[i].hi_d()) {
        throw InvalidArgument(
            "integrate_extremal: initial_control leaves the bounds");
      }
      prev_u[static_cast<Eigen::Index>(i)] = opts.initial_control[i];
    }
  }

  Eigen::VectorXd phi = flow.phi(y);
  auto control_at = [&](const Eigen::VectorXd& ph, double t,
                        const Eigen::VectorXd& prev) {
    if (opts.policy == InBandPolicy::SingularLaw) {
      if (!opts.singular_law) {
        throw InvalidArgument("SingularLaw policy requires singular_law");
      }
      const Eigen::VectorXd law = opts.singular_law(
          t, y.head(static_cast<Eigen::Index>(n)),
          y.tail(static_cast<Eigen::Index>(n)), prev);
      return bang_bang_control(ph, sys.bounds, prev, opts.sg_tol, opts.policy,
                               &law);
    }
    return bang_bang_control(ph, sys.bounds, prev, opts.sg_tol, opts.policy);
  };
  Eigen::VectorXd u = control_at(phi, 0.0, prev_u);

  auto push_node = [&](double t) {
    const auto x = y.head(static_cast<Eigen::Index>(n));
    const auto lam = y.tail(static_cast<Eigen::Index>(n));
    if (!y.allFinite()) {
      throw IntegrationError(IntegrationError::Kind::NonFinite,
                             "non-finite state or adjoint", t);
    }
    if (lam.norm() < lambda_floor) {
      throw IntegrationError(
          IntegrationError::Kind::AdjointVanished,
          "adjoint vector vanished: maximum-principle violation", t);
    }
    ext.t.push_back(t);
    ext.x.emplace_back(x);
    ext.lam.emplace_back(lam);
    ext.u.push_back(u);
    ext.phi.push_back(phi);
    ext.H.push_back(flow.hamiltonian_of(y, u));
    // Band-transition events (entry/exit of |phi_i| <= sg_tol).
    const std::size_t node = ext.t.size() - 1;
    if (node > 0) {
      const Eigen::VectorXd& prev_phi = ext.phi[node - 1];
      for (std::size_t i = 0; i < m; ++i) {
        const bool was =
            std::abs(prev_phi[static_cast<Eigen::Index>(i)]) <= opts.sg_tol;
        const bool now =
            std::abs(phi[static_cast<Eigen::Index>(i)]) <= opts.sg_tol;
        if (was != now) {
          ext.events.push_back(Event{
              i, t, now ? EventKind::SingularEntry : EventKind::SingularExit});
        }
      }
    }
  };

  double t = 0.0;
  push_node(t);

  const double h = opts.step;
  while (t < T - 1e-15 * T) {
    const double target = std::min(t + h, T);
    int events_this_step = 0;
    while (t < target - 1e-15 * std::max(1.0, target)) {
      const double dt = target - t;
      const Eigen::VectorXd y_try = flow.rk4(y, u, dt);
      const Eigen::VectorXd phi_try = flow.phi(y_try);

      // Earliest sign change over channels, localized by bisection of the
      // frozen-control flow from (t, y).
      int channel = -1;
      double tau = dt;
      double dest_sign = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double a = phi[static_cast<Eigen::Index>(i)];
        const double b = phi_try[static_cast<Eigen::Index>(i)];
        if (!crosses(a, b, opts.sg_tol)) continue;
        // A crossing only counts as a switching when the control value
        // would change; if the held value already matches the destination
        // bang (the zero slipped by inside the band), keep integrating.
        const double dest_bang =
            b > 0.0 ? sys.bounds[i].hi_d() : sys.bounds[i].lo_d();
        if (u[static_cast<Eigen::Index>(i)] == dest_bang) continue;
        double lo = 0.0, hi = dt;
        for (int it = 0; it < opts.bisection_depth; ++it) {
          const double mid = 0.5 * (lo + hi);
          const Eigen::VectorXd y_mid = flow.rk4(y, u, mid);
          const double pm =
              flow.phi(y_mid)[static_cast<Eigen::Index>(i)];
          if (opts.sw_tol > 0.0 && std::abs(pm) <= opts.sw_tol) {
            lo = hi = mid;
            break;
          }
          if ((a < 0.0) == (pm < 0.0)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        const double cross = 0.5 * (lo + hi);
        if (channel < 0 || cross < tau) {
          channel = static_cast<int>(i);
          tau = cross;
          dest_sign = b;
        }
      }

      if (channel < 0) {
        y = y_try;
        phi = phi_try;
        t = target;
        break;
      }

      // Step exactly to the event, switch the crossing channel to the
      // destination bang value, and continue the remainder of the step.
      y = flow.rk4(y, u, tau);
      phi = flow.phi(y);
      t += tau;
      ext.events.push_back(Event{static_cast<std::size_t>(channel), t,
                                 EventKind::SignChange});
      Eigen::VectorXd next_u = control_at(phi, t, u);
      next_u[channel] = dest_sign > 0.0 ? sys.bounds[channel].hi_d()
                                        : sys.bounds[channel].lo_d();
      u = next_u;
      push_node(t);
      if (++events_this_step >= opts.chatter_limit) {
        throw IntegrationError(
            IntegrationError::Kind::Chattering,
            "possible singular arc / chattering: " +
                std::to_string(events_this_step) +
                " switching events within one step",
            t);
      }
    }
    // Control refresh at the grid node (band dwellers keep the policy
    // value). A value change here means the zero slipped past inside the
    // band; book it as a switching at the node.
    if (ext.t.empty() || ext.t.back() != t) {
      const Eigen::VectorXd refreshed = control_at(phi, t, u);
      for (std::size_t i = 0; i < m; ++i) {
        const double prev = u[static_cast<Eigen::Index>(i)];
        const double next = refreshed[static_cast<Eigen::Index>(i)];
        const bool bang_flip =
            (prev == sys.bounds[i].lo_d() && next == sys.bounds[i].hi_d()) ||
            (prev == sys.bounds[i].hi_d() && next == sys.bounds[i].lo_d());
        if (bang_flip) {
          ext.events.push_back(Event{i, t, EventKind::SignChange});
        }
      }
      u = refreshed;
      push_node(t);
    }
  }
  ext.abnormal_candidate = true;
  for (double hv : ext.H) {
    if (std::abs(hv) > opts.sg_tol) {
      ext.abnormal_candidate = false;
      break;
    }
  }
  return ext;
}

SwitchingState switching_derivatives(const AffineSystem& sys, LieTable& table,
                                     const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& lam,
                                     const Eigen::VectorXd& u, double sg_tol,
                                     const AlphaTable* alpha,
                                     bool commutative) {
  const std::size_t m = sys.m();
  const std::span<const double> xs = as_span(x);
  SwitchingState st;
  st.phi.resize(static_cast<Eigen::Index>(m));
  st.phi_dot.resize(static_cast<Eigen::Index>(m));
  st.phi_ddot.resize(static_cast<Eigen::Index>(m));
  st.in_band.resize(m);

  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index ii = static_cast<Eigen::Index>(i);
    st.phi[ii] = lam.dot(sys.controls[i].evaluate(xs));
    st.in_band[i] = std::abs(st.phi[ii]) <= sg_tol;

    double pd = lam.dot(table.ad(1, i).evaluate(xs));
    if (!commutative) {
      for (std::size_t j = 0; j < m; ++j) {
        pd += u[static_cast<Eigen::Index>(j)] *
              lam.dot(table.mixed(1, i, j).evaluate(xs));
      }
    }
    st.phi_dot[ii] = pd;

    double pdd = lam.dot(table.ad(2, i).evaluate(xs));
    for (std::size_t j = 0; j < m; ++j) {
      pdd += u[static_cast<Eigen::Index>(j)] *
             lam.dot(table.mixed(2, i, j).evaluate(xs));
    }
    st.phi_ddot[ii] = pdd;
  }

  if (alpha != nullptr) {
    const std::size_t r = alpha->r();
    if (r != m) throw InvalidArgument("switching_derivatives: alpha table size");
    Eigen::VectorXd pa(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      double v = lam.dot(table.ad(2, i).evaluate(xs));
      for (std::size_t j = 0; j < m; ++j) {
        double coeff = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          coeff += alpha->at(i, j, k).evaluate(xs) *
                   st.phi[static_cast<Eigen::Index>(k)];
        }
        v += coeff * u[static_cast<Eigen::Index>(j)];
      }
      pa[static_cast<Eigen::Index>(i)] = v;
    }
    st.phi_ddot_alpha = std::move(pa);
  }
  return st;
}

ExactSwitchingState switching_derivatives_exact(
    const AffineSystem& sys, LieTable& table, const ExactPoint& x,
    const std::vector<Rational>& lam, const std::vector<Rational>& u,
    const AlphaTable* alpha, bool commutative) {
  const std::size_t m = sys.m();
  const std::size_t n = sys.n();
  if (lam.size() != n || u.size() != m) {
    throw InvalidArgument("switching_derivatives_exact: dimension mismatch");
  }
  auto dot = [&](const std::vector<Rational>& values) {
    Rational s(0);
    for (std::size_t k = 0; k < n; ++k) s += lam[k] * values[k];
    return s;
  };

  ExactSwitchingState st;
  st.phi.reserve(m);
  st.phi_dot.reserve(m);
  st.phi_ddot.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    st.phi.push_back(dot(sys.controls[i].evaluate(x)));

    Rational pd = dot(table.ad(1, i).evaluate(x));
    if (!commutative) {
      for (std::size_t j = 0; j < m; ++j) {
        pd += u[j] * dot(table.mixed(1, i, j).evaluate(x));
      }
    }
    st.phi_dot.push_back(std::move(pd));

    Rational pdd = dot(table.ad(2, i).evaluate(x));
    for (std::size_t j = 0; j < m; ++j) {
      pdd += u[j] * dot(table.mixed(2, i, j).evaluate(x));
    }
    st.phi_ddot.push_back(std::move(pdd));
  }

  if (alpha != nullptr) {
    st.phi_ddot_alpha.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational v = dot(table.ad(2, i).evaluate(x));
      for (std::size_t j = 0; j < m; ++j) {
        Rational coeff(0);
        for (std::size_t k = 0; k < m; ++k) {
          coeff += alpha->at(i, j, k).evaluate(x) * st.phi[k];
        }
        v += coeff * u[j];
      }
      st.phi_ddot_alpha.push_back(std::move(v));
    }
  }
  return st;
}

Classification classify_extremal(const Extremal& ext, double sg_tol,
                                 int window) {
  Classification out;
  out.channels.resize(ext.m);
  const std::size_t N = ext.nodes();

  for (std::size_t i = 0; i < ext.m; ++i) {
    auto& ch = out.channels[i];
    for (const auto& e : ext.events) {
      if (e.channel == i && e.kind == EventKind::SignChange) {
        ++ch.switching_count;
      }
    }
    std::size_t run_start = 0;
    bool in_run = false;
    for (std::size_t k = 0; k <= N; ++k) {
      const bool banded =
          k < N && std::abs(ext.phi[k][static_cast<Eigen::Index>(i)]) <= sg_tol;
      if (banded && !in_run) {
        in_run = true;
        run_start = k;
      } else if (!banded && in_run) {
        in_run = false;
        if (k - run_start >= static_cast<std::size_t>(window)) {
          ch.intervals.push_back(SingularInterval{
              ext.t[run_start], ext.t[k - 1], run_start, k - 1});
        }
      }
    }
    ch.singular = !ch.intervals.empty();
  }

  out.max_abs_H = 0.0;
  for (double h : ext.H) out.max_abs_H = std::max(out.max_abs_H, std::abs(h));
  out.abnormal = out.max_abs_H <= sg_tol;
  return out;
}

}  // namespace extremalkit
