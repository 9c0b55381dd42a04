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

#include "extremalkit/singular.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "extremalkit/errors.hpp"
#include "extremalkit/linalg.hpp"

namespace extremalkit {

namespace {

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

std::vector<int> sorted_union(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::set<int> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  return {s.begin(), s.end()};
}

bool subset_of(const std::set<int>& a, const std::set<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void check_channels(const std::vector<int>& v, std::size_t m,
                    const std::string& name) {
  for (int i : v) {
    if (i < 0 || static_cast<std::size_t>(i) >= m) {
      throw InvalidArgument(name + ": channel index out of range");
    }
  }
}

// One evaluation site (either representation).
struct Site {
  const ExactPoint* exact = nullptr;
  const std::vector<double>* approx = nullptr;
};

std::vector<Site> sites_of(const SamplePoints& points) {
  std::vector<Site> out;
  for (const auto& p : points.exact) out.push_back(Site{&p, nullptr});
  for (const auto& s : points.approx) out.push_back(Site{nullptr, &s});
  return out;
}

MembershipEvidence membership_at(const VectorField& target,
                                 const std::vector<VectorField>& candidates,
                                 const Site& site, double tol) {
  MembershipEvidence ev;
  if (candidates.empty()) {
    // Span of the empty family is {0}: membership means the value vanishes.
    if (site.exact) {
      const auto v = target.evaluate(*site.exact);
      bool zero = true;
      double norm = 0.0;
      for (const auto& q : v) {
        zero = zero && q == 0;
        const double d = to_double(q);
        norm += d * d;
      }
      ev.exact_zero = zero;
      ev.residual = std::sqrt(norm) / std::max(1.0, std::sqrt(norm));
      ev.pass = zero;
    } else {
      const Eigen::VectorXd v = target.evaluate(std::span<const double>(
          site.approx->data(), site.approx->size()));
      ev.residual = v.norm() / std::max(1.0, v.norm());
      ev.pass = ev.residual <= tol;
    }
    return ev;
  }
  SpanReport rep =
      site.exact
          ? span_membership(target, candidates, *site.exact)
          : span_membership(target, candidates,
                            std::span<const double>(site.approx->data(),
                                                    site.approx->size()),
                            tol);
  ev.residual = rep.membership_residual;
  ev.exact_zero = rep.membership_exact_zero;
  ev.pass = rep.exact ? rep.membership_exact_zero : rep.membership_residual <= tol;
  return ev;
}

SpanReport rank_at(const std::vector<VectorField>& fields, const Site& site,
                   double tol) {
  return site.exact
             ? span_rank(fields, *site.exact)
             : span_rank(fields,
                         std::span<const double>(site.approx->data(),
                                                 site.approx->size()),
                         tol);
}

std::vector<double> site_echo(const AffineSystem& sys, const Site& site) {
  if (site.exact) return site.exact->to_doubles(*sys.reg);
  return *site.approx;
}

}  // namespace

SamplePoints sample_extremal_states(const Extremal& ext,
                                    std::size_t max_points, double tol) {
  SamplePoints out;
  out.tol = tol;
  std::set<double> event_times;
  for (const auto& e : ext.events) event_times.insert(e.t);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < ext.nodes(); ++k) {
    if (!event_times.count(ext.t[k])) keep.push_back(k);
  }
  const std::size_t stride =
      keep.empty() ? 1 : std::max<std::size_t>(1, keep.size() / std::max<std::size_t>(1, max_points));
  for (std::size_t idx = 0; idx < keep.size(); idx += stride) {
    if (out.approx.size() >= max_points) break;
    const Eigen::VectorXd& x = ext.x[keep[idx]];
    out.approx.emplace_back(x.data(), x.data() + x.size());
  }
  return out;
}

void SpanConditionQuery::validate(std::size_t m) const {
  check_channels(K1, m, "K1");
  check_channels(K2, m, "K2");
  const std::set<int> k1 = as_set(K1), k2 = as_set(K2);
  for (int i : k1) {
    if (k2.count(i)) throw InvalidArgument("K1 and K2 must be disjoint");
  }
  if (J.empty()) throw InvalidArgument("chain must contain J_0");
  if (as_set(J[0]) != as_set(sorted_union(K1, K2))) {
    throw InvalidArgument("J_0 must equal K1 union K2");
  }
  std::set<int> prev = as_set(J[0]);
  if (prev.empty()) throw InvalidArgument("J_0 is empty");
  const std::size_t s = J.size() - 1;
  if (!Jprime.empty() && Jprime.size() + 2 != J.size()) {
    throw InvalidArgument("Jprime must have one set per level 1..s-1");
  }
  for (std::size_t l = 1; l <= s; ++l) {
    check_channels(J[l], m, "J");
    const std::set<int> cur = as_set(J[l]);
    if (cur.empty()) throw InvalidArgument("chain sets must be nonempty");
    if (!subset_of(cur, prev)) {
      throw InvalidArgument("chain nesting violated: J_" + std::to_string(l) +
                            " is not contained in the previous set");
    }
    if (!Jprime.empty() && l < s) {
      check_channels(Jprime[l - 1], m, "Jprime");
      const std::set<int> jp = as_set(Jprime[l - 1]);
      if (jp.empty()) throw InvalidArgument("chain sets must be nonempty");
      if (!subset_of(jp, cur)) {
        throw InvalidArgument("J'_l must be contained in J_l");
      }
      prev = jp;
    } else {
      prev = cur;
    }
  }
}

std::vector<int> SpanConditionQuery::jprime(int l) const {
  if (Jprime.empty()) return J[static_cast<std::size_t>(l)];
  return Jprime[static_cast<std::size_t>(l - 1)];
}

namespace {

// Shared engine for conditions 1-2 of the chain at one site. Appends
// evidence rows; returns false if any membership fails.
//
// `extra_cond1` augments the condition-1 candidate family; the companion
// no-common-zero checker passes {g_u : u in K} there, since those
// switching values also vanish at the accumulation time.
bool check_chain_conditions(const AffineSystem& sys, LieTable& table,
                            const SpanConditionQuery& query, const Site& site,
                            double tol, bool* l1_auto,
                            std::vector<MembershipEvidence>* evidence,
                            const std::vector<VectorField>* extra_cond1 = nullptr) {
  const std::size_t m = sys.m();
  const int s = query.chain_length();
  const std::set<int> k2 = as_set(query.K2);
  bool ok = true;

  for (int l = 1; l <= s; ++l) {
    const bool auto_l1 = l == 1 && sys.mechanical();
    if (auto_l1 && l1_auto) *l1_auto = true;
    if (auto_l1 && !query.debug_l1) continue;

    // Candidate families for conditions 1 and 2.
    std::vector<VectorField> span1, span2;
    for (int w = 0; w < l; ++w) {
      for (int v : query.J[static_cast<std::size_t>(w)]) {
        span1.push_back(table.ad(w, static_cast<std::size_t>(v)));
        if (!k2.count(v)) {
          span2.push_back(table.ad(w, static_cast<std::size_t>(v)));
        }
      }
    }
    if (extra_cond1 != nullptr) {
      span1.insert(span1.end(), extra_cond1->begin(), extra_cond1->end());
    }

    for (int j : query.J[static_cast<std::size_t>(l)]) {
      for (std::size_t k = 0; k < m; ++k) {
        const VectorField& bracket =
            table.mixed(l, static_cast<std::size_t>(j), k);
        MembershipEvidence ev;
        if (auto_l1 && query.debug_l1) {
          // Mechanical shortcut justification: [g_k, g_j] is the zero field.
          ev.exact_zero = bracket.is_zero();
          ev.pass = ev.exact_zero;
        } else {
          ev = membership_at(bracket, span1, site, tol);
        }
        ev.l = l;
        ev.j = j;
        ev.k = static_cast<int>(k);
        ev.condition = 1;
        ok = ok && ev.pass;
        if (evidence) evidence->push_back(ev);
      }
    }

    // Condition 2 exists for levels 1..s-1 only (it feeds the next
    // derivative) and is skipped entirely when K2 is empty, where it is
    // equivalent to condition 1.
    if (!query.K2.empty() && l < s) {
      for (int j : query.jprime(l)) {
        for (std::size_t k = 0; k < m; ++k) {
          const VectorField& bracket =
              table.mixed(l, static_cast<std::size_t>(j), k);
          MembershipEvidence ev;
          if (auto_l1 && query.debug_l1) {
            ev.exact_zero = bracket.is_zero();
            ev.pass = ev.exact_zero;
          } else {
            ev = membership_at(bracket, span2, site, tol);
          }
          ev.l = l;
          ev.j = j;
          ev.k = static_cast<int>(k);
          ev.condition = 2;
          ok = ok && ev.pass;
          if (evidence) evidence->push_back(ev);
        }
      }
    }
  }
  return ok;
}

std::string channel_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += "u" + std::to_string(v[i] + 1);
  }
  return out;
}

std::string phi_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += "phi" + std::to_string(v[i] + 1);
  }
  return out;
}

}  // namespace

SpanConditionVerdict check_span_conditions(const AffineSystem& sys, LieTable& table,
                                    const SpanConditionQuery& query,
                                    const SamplePoints& points) {
  query.validate(sys.m());
  if (points.count() == 0) {
    throw InvalidArgument("check_span_conditions: no evaluation points supplied");
  }
  const int s = query.chain_length();

  SpanConditionVerdict verdict;
  verdict.dimension = static_cast<int>(sys.n());

  std::vector<VectorField> cond3;
  for (int w = 0; w <= s; ++w) {
    for (int v : query.J[static_cast<std::size_t>(w)]) {
      cond3.push_back(table.ad(w, static_cast<std::size_t>(v)));
    }
  }

  bool all_pass = true;
  for (const Site& site : sites_of(points)) {
    PointEvidence ev;
    ev.state = site_echo(sys, site);
    ev.exact = site.exact != nullptr;
    const bool chain_ok = check_chain_conditions(
        sys, table, query, site, points.tol, &verdict.l1_auto_passed,
        &ev.memberships);
    SpanReport rank = rank_at(cond3, site, points.tol);
    ev.span_matrix = std::move(rank.matrix);
    ev.final_rank = rank.rank;
    ev.final_rank_full = rank.full_rank();
    ev.all_pass = chain_ok && ev.final_rank_full;
    all_pass = all_pass && ev.all_pass;
    verdict.evidence.push_back(std::move(ev));
  }

  verdict.conditions_hold = all_pass;
  if (all_pass) {
    const bool k1e = query.K1.empty(), k2e = query.K2.empty();
    if (!k1e && !k2e) {
      verdict.conclusion =
          "either (a) the extremal is not u_i-singular for some i in {" +
          channel_list(query.K1) + "}, or (b) the zeroes of {" +
          phi_list(query.K2) +
          "} have no common accumulation point [pointwise-verified]";
    } else if (k1e) {
      verdict.conclusion = "no common accumulation point of zeroes of {" +
                           phi_list(query.K2) + "} [pointwise-verified]";
    } else {
      verdict.conclusion =
          "the extremal is not u_i-singular for some i in {" +
          channel_list(query.K1) + "} [pointwise-verified]";
      if (as_set(query.K1).size() == sys.m()) {
        verdict.conclusion += " (no totally singular extremal)";
      }
    }
  }
  return verdict;
}

NoCommonZeroVerdict check_no_common_zero(const AffineSystem& sys, LieTable& table,
                                const SpanConditionQuery& query,
                                const std::vector<int>& K,
                                const SamplePoints& points) {
  query.validate(sys.m());
  check_channels(K, sys.m(), "K");
  const std::set<int> base = as_set(sorted_union(query.K1, query.K2));
  for (int k : K) {
    if (base.count(k)) {
      throw InvalidArgument("K must be disjoint from K1 union K2");
    }
  }
  if (points.count() == 0) {
    throw InvalidArgument("check_no_common_zero: no evaluation points supplied");
  }

  NoCommonZeroVerdict verdict;
  verdict.dimension = static_cast<int>(sys.n());
  const int s = query.chain_length();

  std::vector<VectorField> span_fields;
  std::vector<int> gs = sorted_union(sorted_union(query.K1, query.K2), K);
  for (int u : gs) span_fields.push_back(table.ad(0, static_cast<std::size_t>(u)));
  for (int w = 1; w <= s; ++w) {
    for (int v : query.J[static_cast<std::size_t>(w)]) {
      span_fields.push_back(table.ad(w, static_cast<std::size_t>(v)));
    }
  }

  // Condition-1 memberships may additionally use g_u, u in K: at the
  // hypothesized common zero those switching values vanish as well.
  std::vector<VectorField> k_fields;
  for (int u : K) k_fields.push_back(table.ad(0, static_cast<std::size_t>(u)));

  bool chain_ok = true;
  bool rank_ok = true;
  bool l1_auto = false;
  for (const Site& site : sites_of(points)) {
    PointEvidence ev;
    ev.state = site_echo(sys, site);
    ev.exact = site.exact != nullptr;
    const bool site_chain =
        check_chain_conditions(sys, table, query, site, points.tol, &l1_auto,
                               &ev.memberships, &k_fields);
    SpanReport rank = rank_at(span_fields, site, points.tol);
    ev.span_matrix = std::move(rank.matrix);
    ev.final_rank = rank.rank;
    ev.final_rank_full = rank.full_rank();
    ev.all_pass = site_chain && ev.final_rank_full;
    chain_ok = chain_ok && site_chain;
    rank_ok = rank_ok && ev.final_rank_full;
    verdict.evidence.push_back(std::move(ev));
  }

  verdict.chain_ok = chain_ok;
  verdict.asserted = chain_ok && rank_ok;
  if (verdict.asserted) {
    verdict.conclusion = "the switching functions {" + phi_list(K) +
                         "} have no common zero " +
                         (query.K2.empty() ? "along the whole sampled extremal"
                                           : "at the accumulation time t0") +
                         " [pointwise-verified]";
  } else {
    verdict.conclusion = "inconclusive";
  }
  return verdict;
}

AbnormalSpanVerdict abnormal_span_check(const AffineSystem& sys,
                                        LieTable& table, int k,
                                        const SamplePoints& points) {
  if (k < 0 || static_cast<std::size_t>(k) >= sys.m()) {
    throw InvalidArgument("abnormal_span_check: channel out of range");
  }
  if (points.count() == 0) {
    throw InvalidArgument("abnormal_span_check: no evaluation points supplied");
  }
  std::vector<VectorField> fields;
  fields.push_back(sys.drift);
  for (std::size_t i = 0; i < sys.m(); ++i) fields.push_back(sys.controls[i]);
  for (std::size_t j = 0; j < sys.m(); ++j) {
    if (j == static_cast<std::size_t>(k)) continue;
    fields.push_back(table.ad(1, j));
  }

  AbnormalSpanVerdict verdict;
  bool ok = true;
  for (const Site& site : sites_of(points)) {
    PointEvidence ev;
    ev.state = site_echo(sys, site);
    ev.exact = site.exact != nullptr;
    SpanReport rank = rank_at(fields, site, points.tol);
    ev.span_matrix = std::move(rank.matrix);
    ev.final_rank = rank.rank;
    ev.final_rank_full = rank.full_rank();
    ev.all_pass = ev.final_rank_full;
    ok = ok && ev.all_pass;
    verdict.evidence.push_back(std::move(ev));
  }
  verdict.asserted = ok;
  verdict.conclusion =
      ok ? "on an abnormal extremal, u" + std::to_string(k + 1) +
               " is constant [pointwise-verified]"
         : "inconclusive";
  return verdict;
}

SingularControlSolution singular_control_solve(
    const AffineSystem& sys, LieTable& table, const AlphaTable& alpha,
    const Eigen::VectorXd& x, const Eigen::VectorXd& lam, std::size_t k,
    double u_k, double det_tol, double phi_tol) {
  if (!sys.fully_actuated_mechanical()) {
    throw InvalidArgument(
        "singular_control_solve requires a fully actuated mechanical build");
  }
  const std::size_t m = sys.m();
  if (k >= m) throw InvalidArgument("singular_control_solve: bad channel");
  const std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));

  const double phi_k = lam.dot(sys.controls[k].evaluate(xs));
  if (std::abs(phi_k) <= phi_tol) {
    throw InvalidArgument(
        "singular_control_solve: phi_k vanishes; the solve formula needs an "
        "interval where phi_k is nonzero");
  }

  SingularControlSolution sol;
  sol.k = k;
  sol.system_matrix = alpha.reduced_matrix(k, xs);

  const std::size_t d = m - 1;
  Eigen::MatrixXd A(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          sol.system_matrix[i][j];
    }
  }
  sol.determinant = A.determinant();
  if (std::abs(sol.determinant) <= det_tol) {
    throw SingularMatrixError(
        "singular_control_solve: det(alpha_ijk) = " +
        std::to_string(sol.determinant) +
        " is (numerically) zero; the solve formula does not apply");
  }

  Eigen::VectorXd rhs(d);
  std::size_t row = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == k) continue;
    const double adf2 = lam.dot(table.ad(2, i).evaluate(xs));
    const double aikk = alpha.at(i, k, k).evaluate(xs);
    rhs[static_cast<Eigen::Index>(row)] = -(adf2 + aikk * phi_k * u_k) / phi_k;
    ++row;
  }
  sol.rhs.assign(rhs.data(), rhs.data() + rhs.size());

  const Eigen::VectorXd u_reduced = A.partialPivLu().solve(rhs);
  sol.solve_residual =
      (A * u_reduced - rhs).norm() / std::max(1.0, rhs.norm());

  sol.u.assign(m, 0.0);
  sol.u[k] = u_k;
  row = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == k) continue;
    const double uj = u_reduced[static_cast<Eigen::Index>(row)];
    sol.u[j] = uj;
    const bool feasible =
        uj >= sys.bounds[j].lo_d() - 1e-12 && uj <= sys.bounds[j].hi_d() + 1e-12;
    sol.bound_feasible.push_back(feasible);
    sol.all_feasible = sol.all_feasible && feasible;
    ++row;
  }
  return sol;
}

ExactSingularControlSolution singular_control_solve_exact(
    const AffineSystem& sys, LieTable& table, const AlphaTable& alpha,
    const ExactPoint& x, const std::vector<Rational>& lam, std::size_t k,
    const Rational& u_k) {
  if (!sys.fully_actuated_mechanical()) {
    throw InvalidArgument(
        "singular_control_solve requires a fully actuated mechanical build");
  }
  const std::size_t m = sys.m();
  const std::size_t n = sys.n();
  if (k >= m || lam.size() != n) {
    throw InvalidArgument("singular_control_solve_exact: dimension mismatch");
  }
  auto dot = [&](const std::vector<Rational>& v) {
    Rational s(0);
    for (std::size_t i = 0; i < n; ++i) s += lam[i] * v[i];
    return s;
  };
  const Rational phi_k = dot(sys.controls[k].evaluate(x));
  if (phi_k == 0) {
    throw InvalidArgument("singular_control_solve: phi_k vanishes");
  }
  const RationalMatrix A = alpha.reduced_matrix(k, x);
  ExactSingularControlSolution sol;
  sol.determinant = rational_det(A);
  if (sol.determinant == 0) {
    throw SingularMatrixError(
        "singular_control_solve: det(alpha_ijk) is exactly zero");
  }
  std::vector<Rational> rhs;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == k) continue;
    const Rational adf2 = dot(table.ad(2, i).evaluate(x));
    const Rational aikk = alpha.at(i, k, k).evaluate(x);
    rhs.push_back(-(adf2 + aikk * phi_k * u_k) / phi_k);
  }
  auto solved = rational_solve(A, rhs);
  if (!solved) {
    throw SingularMatrixError("singular_control_solve: singular system");
  }
  sol.u.assign(m, Rational(0));
  sol.u[k] = u_k;
  std::size_t row = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == k) continue;
    sol.u[j] = (*solved)[row++];
  }
  return sol;
}

ConcatVerdict concat_check(const AffineSystem& sys, LieTable& table,
                           const std::vector<int>& S1,
                           const std::vector<int>& S2,
                           const SamplePoints& junction,
                           const std::vector<std::vector<int>>* chain1,
                           const std::vector<std::vector<int>>* chain2,
                           bool allow_fast_path) {
  if (S1.empty() || S2.empty()) {
    throw InvalidArgument("concat_check: S1 and S2 must be nonempty");
  }
  check_channels(S1, sys.m(), "S1");
  check_channels(S2, sys.m(), "S2");

  ConcatVerdict verdict;

  const std::set<int> uni = as_set(sorted_union(S1, S2));
  if (allow_fast_path && sys.fully_actuated_mechanical() &&
      uni.size() == sys.m()) {
    verdict.path = ConcatVerdict::Path::FastFullyActuated;
    verdict.outcome = ConcatVerdict::Outcome::NotOptimal;
    verdict.conclusion =
        "not optimal: a fully actuated mechanical system admits no optimal "
        "concatenation of an S1-singular and an S2-singular extremal with "
        "S1 u S2 = I (chains J_0 = J_1 = S_a)";
    return verdict;
  }

  if (junction.count() == 0) {
    throw InvalidArgument("concat_check: no junction points supplied");
  }

  const std::vector<std::vector<int>> default1{S1, S1};
  const std::vector<std::vector<int>> default2{S2, S2};
  const std::vector<std::vector<int>>& J1 = chain1 ? *chain1 : default1;
  const std::vector<std::vector<int>>& J2 = chain2 ? *chain2 : default2;
  if (J1.empty() || J2.empty() || J1.size() != J2.size()) {
    throw InvalidArgument("concat_check: per-side chains must have equal length");
  }
  const int s = static_cast<int>(J1.size()) - 1;

  // Condition 1 per side reuses the chain engine with K1 = S_a, K2 empty.
  SpanConditionQuery q1, q2;
  q1.K1 = S1;
  q1.J = J1;
  q2.K1 = S2;
  q2.J = J2;
  q1.validate(sys.m());
  q2.validate(sys.m());

  std::vector<VectorField> junction_fields;
  for (int w = 0; w <= s; ++w) {
    std::set<int> vs(J1[static_cast<std::size_t>(w)].begin(),
                     J1[static_cast<std::size_t>(w)].end());
    vs.insert(J2[static_cast<std::size_t>(w)].begin(),
              J2[static_cast<std::size_t>(w)].end());
    for (int v : vs) junction_fields.push_back(table.ad(w, static_cast<std::size_t>(v)));
  }

  bool ok = true;
  bool l1_auto = false;
  for (const Site& site : sites_of(junction)) {
    PointEvidence ev;
    ev.state = site_echo(sys, site);
    ev.exact = site.exact != nullptr;
    const bool c1 = check_chain_conditions(sys, table, q1, site, junction.tol,
                                           &l1_auto, &ev.memberships);
    const bool c2 = check_chain_conditions(sys, table, q2, site, junction.tol,
                                           &l1_auto, &ev.memberships);
    SpanReport rank = rank_at(junction_fields, site, junction.tol);
    ev.span_matrix = std::move(rank.matrix);
    ev.final_rank = rank.rank;
    ev.final_rank_full = rank.full_rank();
    ev.all_pass = c1 && c2 && ev.final_rank_full;
    ok = ok && ev.all_pass;
    verdict.junction_rank = rank.rank;
    verdict.evidence.push_back(std::move(ev));
  }

  verdict.path = ConcatVerdict::Path::JunctionSpan;
  if (ok) {
    verdict.outcome = ConcatVerdict::Outcome::NotExtremal;
    verdict.conclusion =
        "the concatenation is not an extremal: per-side span conditions hold "
        "and the junction span is full rank [pointwise-verified]";
  } else {
    verdict.outcome = ConcatVerdict::Outcome::Inconclusive;
    verdict.conclusion = "inconclusive";
  }
  return verdict;
}

}  // namespace extremalkit
