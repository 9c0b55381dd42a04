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

// extremalkit — batch front end for time-optimal control analysis of
// affine/mechanical systems: exact Lie bracket tables, structural audits,
// Pontryagin extremal integration with bang-bang feedback, span-condition
// checkers for singular extremals, the singular-control solve, and the
// packaged planar-vehicle scenarios.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "extremalkit/acceptance.hpp"
#include "extremalkit/errors.hpp"
#include "extremalkit/presets.hpp"
#include "extremalkit/singular.hpp"
#include "extremalkit/system_io.hpp"
#include "extremalkit/uuv.hpp"
#include "extremalkit/witness.hpp"

namespace {

using nlohmann::json;
using namespace extremalkit;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> g_argv;

Eigen::VectorXd parse_vector_arg(const std::string& text, std::size_t n,
                                 const std::string& name) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      vals.push_back(std::stod(cell));
    } catch (...) {
      throw InvalidArgument(name + ": cannot parse '" + cell + "'");
    }
  }
  if (vals.size() != n) {
    throw InvalidArgument(name + ": expected " + std::to_string(n) +
                          " comma-separated values");
  }
  return Eigen::Map<const Eigen::VectorXd>(vals.data(),
                                           static_cast<Eigen::Index>(vals.size()));
}

std::vector<int> parse_channels_arg(const std::string& text, std::size_t m,
                                    const std::string& name) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const int v = std::stoi(cell);
    if (v < 1 || static_cast<std::size_t>(v) > m) {
      throw InvalidArgument(name + ": channel " + cell + " out of range");
    }
    out.push_back(v - 1);
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + out_path + "'");
    out << report.dump(2) << "\n";
  }
}

json base_report(const json& config) {
  json report;
  report["schema_version"] = kSchemaVersion;
  report["tool_version"] = kToolVersion;
  report["command"] = g_argv;
  report["config_hash"] = config_hash(config);
  return report;
}

SamplePoints points_from_query(const json& q, std::size_t n, double tol) {
  SamplePoints pts;
  pts.tol = tol;
  if (q.contains("points")) {
    for (const auto& p : q.at("points")) {
      std::vector<double> state = p.get<std::vector<double>>();
      if (state.size() != n) {
        throw InvalidArgument("query point dimension mismatch");
      }
      pts.approx.push_back(std::move(state));
    }
  }
  if (q.contains("points_csv")) {
    const std::size_t cap = q.value("max_points", 200);
    auto states = read_states_csv(q.at("points_csv").get<std::string>(), n);
    const std::size_t stride = std::max<std::size_t>(1, states.size() / cap);
    for (std::size_t i = 0; i < states.size() && pts.approx.size() < cap;
         i += stride) {
      pts.approx.push_back(states[i]);
    }
  }
  if (pts.count() == 0) {
    throw InvalidArgument("query supplies no evaluation points");
  }
  return pts;
}

// ---- subcommand bodies ------------------------------------------------

int cmd_brackets(const std::string& system_path, int depth, bool echo_system,
                 const std::string& out_path) {
  AffineSystem sys = load_system_file(system_path);
  LieTable table(sys);
  json config{{"system", system_path}, {"depth", depth}};
  json report = base_report(config);
  if (echo_system) report["system"] = dump_system_definition(sys);

  json ad = json::array();
  for (int w = 0; w <= depth; ++w) {
    json row = json::array();
    for (std::size_t i = 0; i < sys.m(); ++i) {
      json comps = json::array();
      for (const auto& c : table.ad(w, i).components()) {
        comps.push_back(c.to_string());
      }
      row.push_back(std::move(comps));
    }
    ad.push_back(std::move(row));
  }
  report["ad_powers"] = std::move(ad);

  json mixed = json::array();
  for (int l = 1; l <= depth; ++l) {
    json per_l = json::array();
    for (std::size_t i = 0; i < sys.m(); ++i) {
      json per_i = json::array();
      for (std::size_t k = 0; k < sys.m(); ++k) {
        json comps = json::array();
        for (const auto& c : table.mixed(l, i, k).components()) {
          comps.push_back(c.to_string());
        }
        per_i.push_back(std::move(comps));
      }
      per_l.push_back(std::move(per_i));
    }
    mixed.push_back(std::move(per_l));
  }
  report["mixed_brackets"] = std::move(mixed);
  emit(report, out_path);
  return kExitOk;
}

int cmd_audit(const std::string& system_path, int max_s,
              const std::string& out_path) {
  AffineSystem sys = load_system_file(system_path);
  json config{{"system", system_path}, {"max_s", max_s}};
  json report = base_report(config);

  const CommutativityReport comm = check_commutativity(sys);
  report["commutativity"] = commutativity_json(comm);
  bool pass = comm.pass();

  if (sys.mechanical()) {
    const DegreeAuditReport audit = structural_degree_audit(sys, max_s);
    report["degree_audit"] = degree_audit_json(audit);
    pass = pass && audit.pass;
    if (sys.fully_actuated_mechanical()) {
      const AlphaTable alpha = alpha_decomposition(sys);
      report["alpha"] = {{"residuals_zero", alpha.residuals_zero()},
                         {"depends_only_on_x1", alpha.depends_only_on_x1()}};
      pass = pass && alpha.residuals_zero();
    }
  }
  report["pass"] = pass;
  emit(report, out_path);
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_simulate(const std::string& system_path, const std::string& x0_text,
                 const std::string& lam0_text, double T, double step,
                 double sg_tol, const std::string& out_dir,
                 bool emit_plot_data) {
  AffineSystem sys = load_system_file(system_path);
  const Eigen::VectorXd x0 = parse_vector_arg(x0_text, sys.n(), "--x0");
  const Eigen::VectorXd lam0 = parse_vector_arg(lam0_text, sys.n(), "--lam0");
  if (lam0.norm() == 0.0) {
    std::cerr << "error: adjoint must be nonzero\n";
    return kExitCheckFailed;
  }

  LieTable table(sys);
  IntegratorOptions opts;
  opts.step = step;
  opts.sg_tol = sg_tol;
  Extremal ext;
  try {
    ext = integrate_extremal(sys, table, x0, lam0, T, opts);
  } catch (const IntegrationError& e) {
    std::cerr << "integration aborted: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  std::filesystem::create_directories(out_dir);
  const auto path_of = [&](const std::string& leaf) {
    return (std::filesystem::path(out_dir) / leaf).string();
  };
  {
    std::ofstream csv(path_of("trajectory.csv"), std::ios::binary);
    write_trajectory_csv(ext, csv);
  }
  {
    json events_file{{"schema_version", kSchemaVersion},
                     {"events", events_json(ext)}};
    std::ofstream ev(path_of("events.json"), std::ios::binary);
    ev << events_file.dump(2) << "\n";
  }
  json config{{"system", system_path}, {"T", T},      {"step", step},
              {"sg_tol", sg_tol},      {"x0", x0_text}, {"lam0", lam0_text}};
  json report = base_report(config);
  report["classification"] =
      classification_json(classify_extremal(ext, sg_tol, opts.singular_window));
  report["events"] = events_json(ext);
  report["artifacts"] = {"trajectory.csv", "events.json"};
  if (emit_plot_data) {
    std::ofstream plot(path_of("plot.csv"), std::ios::binary);
    plot << plot_data_csv(ext);
    report["artifacts"].push_back("plot.csv");
  }
  {
    std::ofstream rep(path_of("report.json"), std::ios::binary);
    rep << report.dump(2) << "\n";
  }
  std::cout << "wrote " << path_of("trajectory.csv") << ", events.json, report.json\n";
  return kExitOk;
}

int cmd_theorem1(const std::string& system_path, const std::string& query_path,
                 double tol, const std::string& out_path) {
  AffineSystem sys = load_system_file(system_path);
  LieTable table(sys);
  const json q = load_json_file(query_path);
  const SpanConditionQuery query = query_from_json(q, sys.m());
  const SamplePoints points = points_from_query(q, sys.n(), tol);

  const SpanConditionVerdict verdict = check_span_conditions(sys, table, query, points);
  json report = base_report(json{{"system", system_path}, {"query", q}});
  report["verdict"] = span_verdict_json(verdict);
  emit(report, out_path);
  return verdict.conditions_hold ? kExitOk : kExitCheckFailed;
}

int cmd_prop1(const std::string& system_path, const std::string& query_path,
              double tol, const std::string& out_path) {
  AffineSystem sys = load_system_file(system_path);
  LieTable table(sys);
  const json q = load_json_file(query_path);
  const SpanConditionQuery query = query_from_json(q, sys.m());
  if (!q.contains("K")) throw InvalidArgument("prop1 query needs 'K'");
  std::vector<int> K;
  for (const auto& e : q.at("K")) K.push_back(e.get<int>() - 1);
  const SamplePoints points = points_from_query(q, sys.n(), tol);

  const NoCommonZeroVerdict verdict = check_no_common_zero(sys, table, query, K, points);
  json report = base_report(json{{"system", system_path}, {"query", q}});
  report["verdict"] = no_common_zero_json(verdict);
  emit(report, out_path);
  return verdict.asserted ? kExitOk : kExitCheckFailed;
}

int cmd_singular_control(const std::string& system_path,
                         const std::string& x_text, const std::string& lam_text,
                         int k, double u_k, const std::string& out_path) {
  AffineSystem sys = load_system_file(system_path);
  LieTable table(sys);
  const Eigen::VectorXd x = parse_vector_arg(x_text, sys.n(), "--x");
  const Eigen::VectorXd lam = parse_vector_arg(lam_text, sys.n(), "--lam");
  if (k < 1 || static_cast<std::size_t>(k) > sys.m()) {
    throw InvalidArgument("--k: channel out of range");
  }
  json report = base_report(json{{"system", system_path},
                                 {"x", x_text},
                                 {"lam", lam_text},
                                 {"k", k},
                                 {"u_k", u_k}});
  try {
    const AlphaTable alpha = alpha_decomposition(sys);
    const SingularControlSolution sol = singular_control_solve(
        sys, table, alpha, x, lam, static_cast<std::size_t>(k - 1), u_k);
    report["solution"] = singular_solution_json(sol);
    emit(report, out_path);
    return kExitOk;
  } catch (const SingularMatrixError& e) {
    report["error"] = e.what();
    emit(report, out_path);
    std::cerr << "solve failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

int cmd_concat(const std::string& system_path, const std::string& s1_text,
               const std::string& s2_text, const std::string& junction_text,
               bool no_fast_path, double tol, const std::string& out_path) {
  AffineSystem sys = load_system_file(system_path);
  LieTable table(sys);
  const std::vector<int> S1 = parse_channels_arg(s1_text, sys.m(), "--s1");
  const std::vector<int> S2 = parse_channels_arg(s2_text, sys.m(), "--s2");
  SamplePoints junction;
  junction.tol = tol;
  if (!junction_text.empty()) {
    const Eigen::VectorXd x =
        parse_vector_arg(junction_text, sys.n(), "--junction");
    junction.approx.emplace_back(x.data(), x.data() + x.size());
  } else {
    // Default: the deterministic witness point.
    const ExactPoint w = default_witness_point(*sys.reg);
    junction.exact.push_back(w);
  }

  const ConcatVerdict verdict = concat_check(sys, table, S1, S2, junction,
                                             nullptr, nullptr, !no_fast_path);
  json report = base_report(json{{"system", system_path},
                                 {"S1", s1_text},
                                 {"S2", s2_text}});
  report["verdict"] = concat_json(verdict);
  emit(report, out_path);
  return verdict.outcome == ConcatVerdict::Outcome::Inconclusive
             ? kExitCheckFailed
             : kExitOk;
}

int cmd_preset(const std::string& name, const PresetOptions& opts) {
  const PresetResult result = run_preset(name, opts, g_argv);
  std::cout << "wrote " << result.csv_path << ", " << result.events_path << ", "
            << result.report_path << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& self_path) {
  const auto results = run_acceptance(self_path);
  const bool all = print_acceptance(std::cout, results);
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) g_argv.emplace_back(argv[i]);

  CLI::App app{
      "extremalkit — Lie-bracket analysis and Pontryagin extremals for "
      "affine/mechanical control systems"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // brackets
  std::string system_path, out_path;
  int depth = 2;
  bool echo_system = false;
  auto* brackets = app.add_subcommand("brackets", "emit the bracket table");
  brackets->add_option("--system", system_path, "system definition JSON")
      ->required();
  brackets->add_option("--depth", depth, "maximum ad-power depth");
  brackets->add_flag("--echo-system", echo_system,
                     "embed the canonical system definition");
  brackets->add_option("-o,--out", out_path, "output file (default stdout)");
  brackets->callback([&] {
    exit_code = cmd_brackets(system_path, depth, echo_system, out_path);
  });

  // audit
  int max_s = 3;
  auto* audit = app.add_subcommand(
      "audit", "structural checks (commutativity, degree classes, alpha)");
  audit->add_option("--system", system_path, "system definition JSON")
      ->required();
  audit->add_option("--max-s", max_s, "maximum ad-power depth audited");
  audit->add_option("-o,--out", out_path, "output file (default stdout)");
  audit->callback([&] { exit_code = cmd_audit(system_path, max_s, out_path); });

  // simulate
  std::string x0_text, lam0_text, out_dir = ".";
  double T = 1.0, step = 1e-3, sg_tol = 1e-9;
  auto* simulate =
      app.add_subcommand("simulate", "integrate a Pontryagin extremal");
  simulate->add_option("--system", system_path, "system definition JSON")
      ->required();
  simulate->add_option("--x0", x0_text, "initial state, comma-separated")
      ->required();
  simulate->add_option("--lam0", lam0_text, "initial adjoint, comma-separated")
      ->required();
  simulate->add_option("--T", T, "horizon");
  simulate->add_option("--step", step, "fixed step h");
  simulate->add_option("--sg-tol", sg_tol, "singular-band tolerance");
  simulate->add_option("--out-dir", out_dir, "artifact directory");
  bool emit_plot = false;
  simulate->add_flag("--emit-plot-data", emit_plot,
                     "also write tidy long-format plot CSV");
  simulate->callback([&] {
    exit_code = cmd_simulate(system_path, x0_text, lam0_text, T, step, sg_tol,
                             out_dir, emit_plot);
  });

  // theorem1 / prop1
  std::string query_path;
  double tol = kDefaultRankTol;
  auto* theorem1 =
      app.add_subcommand("theorem1", "span-condition chain checker");
  theorem1->add_option("--system", system_path, "system definition JSON")
      ->required();
  theorem1->add_option("--query", query_path, "query JSON (K1, K2, J, points)")
      ->required();
  theorem1->add_option("--tol", tol, "float-path rank tolerance");
  theorem1->add_option("-o,--out", out_path, "output file (default stdout)");
  theorem1->callback(
      [&] { exit_code = cmd_theorem1(system_path, query_path, tol, out_path); });

  auto* prop1 =
      app.add_subcommand("prop1", "no-common-zero companion checker");
  prop1->add_option("--system", system_path, "system definition JSON")
      ->required();
  prop1->add_option("--query", query_path, "query JSON (K1, K2, J, K, points)")
      ->required();
  prop1->add_option("--tol", tol, "float-path rank tolerance");
  prop1->add_option("-o,--out", out_path, "output file (default stdout)");
  prop1->callback(
      [&] { exit_code = cmd_prop1(system_path, query_path, tol, out_path); });

  // singular-control
  std::string x_text, lam_text;
  int k_channel = 1;
  double u_k = 1.0;
  auto* sing = app.add_subcommand("singular-control",
                                  "solve the singular components at a state");
  sing->add_option("--system", system_path, "system definition JSON")->required();
  sing->add_option("--x", x_text, "state, comma-separated")->required();
  sing->add_option("--lam", lam_text, "adjoint, comma-separated")->required();
  sing->add_option("--k", k_channel, "nonsingular channel (1-based)")->required();
  sing->add_option("--u-k", u_k, "value of the nonsingular control");
  sing->add_option("-o,--out", out_path, "output file (default stdout)");
  sing->callback([&] {
    exit_code = cmd_singular_control(system_path, x_text, lam_text, k_channel,
                                     u_k, out_path);
  });

  // concat-check
  std::string s1_text, s2_text, junction_text;
  bool no_fast_path = false;
  auto* concat = app.add_subcommand("concat-check",
                                    "singular-concatenation rejection test");
  concat->add_option("--system", system_path, "system definition JSON")
      ->required();
  concat->add_option("--s1", s1_text, "first singular set, e.g. 1,3")->required();
  concat->add_option("--s2", s2_text, "second singular set")->required();
  concat->add_option("--junction", junction_text, "junction state");
  concat->add_flag("--no-fast-path", no_fast_path,
                   "force the junction-span path");
  concat->add_option("--tol", tol, "float-path rank tolerance");
  concat->add_option("-o,--out", out_path, "output file (default stdout)");
  concat->callback([&] {
    exit_code = cmd_concat(system_path, s1_text, s2_text, junction_text,
                           no_fast_path, tol, out_path);
  });

  // preset
  PresetOptions preset_opts;
  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "run a packaged scenario");
  preset->add_option("name", preset_name, "uuv-rotation | uuv-translate-1 | "
                                          "uuv-translate-3 | uuv-bangbang")
      ->required();
  preset->add_option("--T", preset_opts.T, "horizon");
  preset->add_option("--step", preset_opts.step, "fixed step h");
  preset->add_option("--sg-tol", preset_opts.sg_tol, "singular-band tolerance");
  preset->add_option("--seed-pos", preset_opts.seed_pos,
                     "position-costate seed (pure motions)");
  preset->add_option("--seed-vel", preset_opts.seed_vel,
                     "velocity-costate seed (pure motions)");
  preset->add_option("--out-dir", preset_opts.out_dir, "artifact directory");
  preset->add_flag("--emit-plot-data", preset_opts.emit_plot_data,
                   "also write tidy long-format plot CSV");
  preset->callback([&] { exit_code = cmd_preset(preset_name, preset_opts); });

  // verify
  auto* verify =
      app.add_subcommand("verify", "run the full acceptance suite");
  verify->callback([&] { exit_code = cmd_verify(g_argv.empty() ? "" : g_argv[0]); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return exit_code;
}
