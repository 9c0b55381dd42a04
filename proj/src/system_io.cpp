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

#include "extremalkit/system_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "extremalkit/errors.hpp"
#include "extremalkit/parser.hpp"

namespace extremalkit {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  throw InvalidArgument("expected a rational (string or number)");
}

std::vector<TrigPoly> parse_vector(const json& j, const RegistryPtr& reg,
                                   const std::string& name) {
  if (!j.is_array()) throw InvalidArgument(name + " must be an array");
  std::vector<TrigPoly> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    out.push_back(parse_expr(e.get<std::string>(), reg));
  }
  return out;
}

PolyMatrix parse_matrix(const json& j, const RegistryPtr& reg,
                        const std::string& name) {
  if (!j.is_array()) throw InvalidArgument(name + " must be a matrix");
  PolyMatrix out;
  out.reserve(j.size());
  for (const auto& row : j) {
    out.push_back(parse_vector(row, reg, name));
  }
  return out;
}

json point_evidence_json(const PointEvidence& ev) {
  json out;
  out["state"] = ev.state;
  out["exact"] = ev.exact;
  out["span_matrix"] = ev.span_matrix;
  out["rank"] = ev.final_rank;
  out["rank_full"] = ev.final_rank_full;
  out["pass"] = ev.all_pass;
  json ms = json::array();
  for (const auto& m : ev.memberships) {
    ms.push_back({{"l", m.l},
                  {"j", m.j + 1},
                  {"k", m.k + 1},
                  {"condition", m.condition},
                  {"residual", m.residual},
                  {"exact_zero", m.exact_zero},
                  {"pass", m.pass}});
  }
  out["memberships"] = std::move(ms);
  return out;
}

std::vector<int> channels_from_json(const json& j, std::size_t m,
                                    const std::string& name) {
  if (!j.is_array()) throw InvalidArgument(name + " must be an array");
  std::vector<int> out;
  for (const auto& e : j) {
    const int one_based = e.get<int>();
    if (one_based < 1 || static_cast<std::size_t>(one_based) > m) {
      throw InvalidArgument(name + ": channel out of range (1-based)");
    }
    out.push_back(one_based - 1);
  }
  return out;
}

}  // namespace

AffineSystem load_system_definition(const json& j) {
  if (!j.is_object()) throw InvalidArgument("system definition must be an object");
  if (!j.contains("variables")) throw InvalidArgument("missing 'variables'");

  std::vector<std::pair<std::string, VarKind>> vars;
  std::size_t split = 0;
  bool seen_x2 = false;
  for (const auto& v : j.at("variables")) {
    const std::string name = v.at("name").get<std::string>();
    const std::string kind = v.at("kind").get<std::string>();
    const std::string block = v.value("block", "x1");
    if (kind != "poly" && kind != "angle") {
      throw InvalidArgument("variable kind must be 'poly' or 'angle'");
    }
    if (block == "x1") {
      if (seen_x2) {
        throw InvalidArgument("x1 variables must precede x2 variables");
      }
      ++split;
    } else if (block == "x2") {
      seen_x2 = true;
    } else {
      throw InvalidArgument("variable block must be 'x1' or 'x2'");
    }
    vars.emplace_back(name, kind == "poly" ? VarKind::Polynomial : VarKind::Angle);
  }
  RegistryPtr reg = VariableRegistry::create(std::move(vars), split);

  std::vector<Bounds> bounds;
  if (!j.contains("bounds")) throw InvalidArgument("missing 'bounds'");
  for (const auto& b : j.at("bounds")) {
    if (!b.is_array() || b.size() != 2) {
      throw InvalidArgument("each bound must be a [lo, hi] pair");
    }
    bounds.push_back(Bounds{rational_from_json(b[0]), rational_from_json(b[1])});
  }

  const bool has_raw = j.contains("drift") && j.contains("controls");
  if (j.contains("mechanical")) {
    const json& mech = j.at("mechanical");
    const std::size_t r = reg->split_index();
    MechanicalSystemSpec spec = MechanicalSystemSpec::trivial(reg);
    spec.M = parse_matrix(mech.at("M"), reg, "M");
    spec.M_inv = parse_matrix(mech.at("M_inv"), reg, "M_inv");
    spec.N = parse_vector(mech.at("N"), reg, "N");
    spec.Q = parse_matrix(mech.at("Q"), reg, "Q");
    spec.m = spec.Q.empty() ? 0 : spec.Q[0].size();
    if (mech.contains("dpsi_dq")) {
      spec.dpsi_dq = parse_matrix(mech.at("dpsi_dq"), reg, "dpsi_dq");
    }
    if (mech.contains("P")) spec.P = parse_matrix(mech.at("P"), reg, "P");
    if (mech.contains("P_inv")) {
      spec.P_inv = parse_matrix(mech.at("P_inv"), reg, "P_inv");
    }
    if (mech.contains("dP_dq")) {
      spec.dP_dq.clear();
      for (const auto& dp : mech.at("dP_dq")) {
        spec.dP_dq.push_back(parse_matrix(dp, reg, "dP_dq"));
      }
      if (spec.dP_dq.size() != r) {
        throw InvalidArgument("dP_dq must contain r matrices");
      }
    }
    AffineSystem sys = build_affine(spec, bounds);
    if (has_raw) {
      // Cross-check the mechanical build against the raw expressions.
      const auto drift = parse_vector(j.at("drift"), reg, "drift");
      if (!(VectorField(reg, drift) == sys.drift)) {
        throw InvalidArgument(
            "mechanical build disagrees with the supplied drift expressions");
      }
    }
    return sys;
  }

  if (!has_raw) {
    throw InvalidArgument(
        "system definition needs either drift+controls or a mechanical block");
  }
  VectorField drift(reg, parse_vector(j.at("drift"), reg, "drift"));
  std::vector<VectorField> controls;
  for (const auto& g : j.at("controls")) {
    controls.emplace_back(reg, parse_vector(g, reg, "controls"));
  }
  return make_raw_system(reg, std::move(drift), std::move(controls),
                         std::move(bounds));
}

AffineSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open system file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("invalid JSON in '" + path + "': " + e.what());
  }
  return load_system_definition(j);
}

json dump_system_definition(const AffineSystem& sys) {
  json j;
  j["schema_version"] = kSchemaVersion;
  json vars = json::array();
  for (std::size_t i = 0; i < sys.reg->size(); ++i) {
    vars.push_back({{"name", sys.reg->name(i)},
                    {"kind", sys.reg->is_angle(i) ? "angle" : "poly"},
                    {"block", i < sys.reg->split_index() ? "x1" : "x2"}});
  }
  j["variables"] = std::move(vars);
  json drift = json::array();
  for (const auto& c : sys.drift.components()) drift.push_back(c.to_string());
  j["drift"] = std::move(drift);
  json controls = json::array();
  for (const auto& g : sys.controls) {
    json comps = json::array();
    for (const auto& c : g.components()) comps.push_back(c.to_string());
    controls.push_back(std::move(comps));
  }
  j["controls"] = std::move(controls);
  json bounds = json::array();
  for (const auto& b : sys.bounds) {
    bounds.push_back({rational_string(b.lo), rational_string(b.hi)});
  }
  j["bounds"] = std::move(bounds);
  return j;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void write_trajectory_csv(const Extremal& ext, std::ostream& os) {
  const std::size_t n = ext.reg->size();
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
  for (std::size_t i = 1; i <= n; ++i) os << ",lam" << i;
  for (std::size_t i = 1; i <= ext.m; ++i) os << ",u" << i;
  for (std::size_t i = 1; i <= ext.m; ++i) os << ",phi" << i;
  os << ",H\n";
  for (std::size_t k = 0; k < ext.nodes(); ++k) {
    os << format_double(ext.t[k]);
    for (Eigen::Index i = 0; i < ext.x[k].size(); ++i) {
      os << "," << format_double(ext.x[k][i]);
    }
    for (Eigen::Index i = 0; i < ext.lam[k].size(); ++i) {
      os << "," << format_double(ext.lam[k][i]);
    }
    for (Eigen::Index i = 0; i < ext.u[k].size(); ++i) {
      os << "," << format_double(ext.u[k][i]);
    }
    for (Eigen::Index i = 0; i < ext.phi[k].size(); ++i) {
      os << "," << format_double(ext.phi[k][i]);
    }
    os << "," << format_double(ext.H[k]) << "\n";
  }
}

std::string trajectory_csv(const Extremal& ext) {
  std::ostringstream os;
  write_trajectory_csv(ext, os);
  return os.str();
}

std::vector<std::vector<double>> read_states_csv(const std::string& path,
                                                 std::size_t n) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open trajectory file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty trajectory file");
  std::vector<std::vector<double>> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> state;
    std::size_t pos = 0;
    std::size_t field = 0;
    while (pos <= line.size() && state.size() < n) {
      const std::size_t next = line.find(',', pos);
      const std::string cell =
          line.substr(pos, next == std::string::npos ? next : next - pos);
      if (field >= 1) {  // skip the t column
        state.push_back(std::stod(cell));
      }
      if (next == std::string::npos) break;
      pos = next + 1;
      ++field;
    }
    if (state.size() == n) out.push_back(std::move(state));
  }
  return out;
}

std::string plot_data_csv(const Extremal& ext) {
  std::string out = "t,series,value\n";
  const std::size_t n = ext.reg->size();
  for (std::size_t k = 0; k < ext.nodes(); ++k) {
    const std::string tk = format_double(ext.t[k]);
    for (std::size_t i = 0; i < n; ++i) {
      out += tk + "," + ext.reg->name(i) + "," +
             format_double(ext.x[k][static_cast<Eigen::Index>(i)]) + "\n";
    }
    for (std::size_t i = 0; i < ext.m; ++i) {
      out += tk + ",u" + std::to_string(i + 1) + "," +
             format_double(ext.u[k][static_cast<Eigen::Index>(i)]) + "\n";
      out += tk + ",phi" + std::to_string(i + 1) + "," +
             format_double(ext.phi[k][static_cast<Eigen::Index>(i)]) + "\n";
    }
    out += tk + ",H," + format_double(ext.H[k]) + "\n";
  }
  return out;
}

json events_json(const Extremal& ext) {
  json out = json::array();
  for (const auto& e : ext.events) {
    const char* kind = e.kind == EventKind::SignChange     ? "sign-change"
                       : e.kind == EventKind::SingularEntry ? "singular-entry"
                                                            : "singular-exit";
    out.push_back({{"channel", e.channel + 1}, {"t", e.t}, {"kind", kind}});
  }
  return out;
}

json classification_json(const Classification& cls) {
  json channels = json::array();
  for (std::size_t i = 0; i < cls.channels.size(); ++i) {
    const auto& ch = cls.channels[i];
    json intervals = json::array();
    for (const auto& iv : ch.intervals) {
      intervals.push_back({{"t_begin", iv.t_begin}, {"t_end", iv.t_end}});
    }
    channels.push_back({{"channel", i + 1},
                        {"kind", ch.singular ? "singular" : "regular"},
                        {"switching_count", ch.switching_count},
                        {"singular_intervals", std::move(intervals)}});
  }
  return {{"channels", std::move(channels)},
          {"abnormal", cls.abnormal},
          {"max_abs_H", cls.max_abs_H},
          {"in_band_policy_note",
           "control values inside the singular band follow the configured "
           "in-band policy (default: hold previous value)"}};
}

json span_verdict_json(const SpanConditionVerdict& verdict) {
  json ev = json::array();
  for (const auto& e : verdict.evidence) ev.push_back(point_evidence_json(e));
  return {{"conditions_hold", verdict.conditions_hold},
          {"l1_auto_passed", verdict.l1_auto_passed},
          {"conclusion", verdict.conclusion},
          {"dimension", verdict.dimension},
          {"points", std::move(ev)}};
}

json no_common_zero_json(const NoCommonZeroVerdict& verdict) {
  json ev = json::array();
  for (const auto& e : verdict.evidence) ev.push_back(point_evidence_json(e));
  return {{"chain_ok", verdict.chain_ok},
          {"asserted", verdict.asserted},
          {"conclusion", verdict.conclusion},
          {"dimension", verdict.dimension},
          {"points", std::move(ev)}};
}

json concat_json(const ConcatVerdict& verdict) {
  json ev = json::array();
  for (const auto& e : verdict.evidence) ev.push_back(point_evidence_json(e));
  const char* outcome =
      verdict.outcome == ConcatVerdict::Outcome::NotOptimal    ? "not-optimal"
      : verdict.outcome == ConcatVerdict::Outcome::NotExtremal ? "not-extremal"
                                                               : "inconclusive";
  const char* path = verdict.path == ConcatVerdict::Path::FastFullyActuated
                         ? "fully-actuated-union"
                         : "junction-span";
  return {{"outcome", outcome},
          {"path", path},
          {"conclusion", verdict.conclusion},
          {"junction_rank", verdict.junction_rank},
          {"points", std::move(ev)}};
}

json singular_solution_json(const SingularControlSolution& sol) {
  return {{"u", sol.u},
          {"nonsingular_channel", sol.k + 1},
          {"system_matrix", sol.system_matrix},
          {"determinant", sol.determinant},
          {"rhs", sol.rhs},
          {"solve_residual", sol.solve_residual},
          {"bound_feasible", sol.bound_feasible},
          {"all_feasible", sol.all_feasible}};
}

json switching_restrictions_json(const SwitchingRestrictionReport& report) {
  return {{"applicable", report.applicable},
          {"reason", report.reason},
          {"singular_channels",
           {report.singular_a + 1, report.singular_b + 1}},
          {"nonsingular_channel", report.nonsingular + 1},
          {"switching_count", report.switching_count},
          {"count_ok", report.count_ok},
          {"switch_times", report.switch_times},
          {"switch_state_ok", report.switch_state_ok},
          {"singular_controls_zero", report.singular_controls_zero},
          {"abnormal", report.abnormal},
          {"abnormal_rest_ok", report.abnormal_rest_ok},
          {"pass", report.pass}};
}

json commutativity_json(const CommutativityReport& report) {
  json pairs = json::array();
  for (const auto& [i, j] : report.nonzero_pairs) {
    pairs.push_back({i + 1, j + 1});
  }
  return {{"all_brackets_zero", report.all_brackets_zero},
          {"nonzero_pairs", std::move(pairs)},
          {"independence_rank", report.independence_rank},
          {"independence_ok", report.independence_ok},
          {"pass", report.pass()}};
}

json degree_audit_json(const DegreeAuditReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"s", r.s},
                    {"ad_class", {r.ad_class.a, r.ad_class.b}},
                    {"ad_bound", {r.ad_bound.a, r.ad_bound.b}},
                    {"ad_ok", r.ad_ok},
                    {"mixed_class", {r.mixed_class.a, r.mixed_class.b}},
                    {"mixed_bound", {r.mixed_bound.a, r.mixed_bound.b}},
                    {"mixed_ok", r.mixed_ok}});
  }
  return {{"b", report.b},
          {"b_formula", report.b_formula},
          {"drift_upper_linear", report.drift_upper_linear},
          {"rows", std::move(rows)},
          {"pass", report.pass}};
}

SpanConditionQuery query_from_json(const json& j, std::size_t m) {
  SpanConditionQuery q;
  if (j.contains("K1")) q.K1 = channels_from_json(j.at("K1"), m, "K1");
  if (j.contains("K2")) q.K2 = channels_from_json(j.at("K2"), m, "K2");
  if (!j.contains("J")) throw InvalidArgument("query needs a chain 'J'");
  for (const auto& level : j.at("J")) {
    q.J.push_back(channels_from_json(level, m, "J"));
  }
  if (j.contains("Jprime")) {
    for (const auto& level : j.at("Jprime")) {
      q.Jprime.push_back(channels_from_json(level, m, "Jprime"));
    }
  }
  q.debug_l1 = j.value("debug_l1", false);
  return q;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const json& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(config.dump())));
  return std::string(buf);
}

}  // namespace extremalkit
