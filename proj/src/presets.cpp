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

#include "extremalkit/presets.hpp"

#include <filesystem>
#include <fstream>

#include "extremalkit/errors.hpp"

namespace extremalkit {

namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << content;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"uuv-rotation", "uuv-translate-1", "uuv-translate-3", "uuv-bangbang"};
}

PresetResult run_preset(const std::string& name, const PresetOptions& opts,
                        const std::vector<std::string>& command_echo) {
  const UUVParams params;
  AffineSystem sys = build_uuv(params);
  LieTable table(sys);

  IntegratorOptions iopts;
  iopts.step = opts.step;
  iopts.sg_tol = opts.sg_tol;

  PresetResult result;
  json scenario;
  scenario["name"] = name;
  scenario["T"] = opts.T;
  scenario["step"] = opts.step;
  scenario["sg_tol"] = opts.sg_tol;

  if (name == "uuv-rotation" || name == "uuv-translate-1" ||
      name == "uuv-translate-3") {
    PureMotionSpec spec;
    spec.kind = name == "uuv-rotation"
                    ? PureMotionKind::Rotation
                    : (name == "uuv-translate-1" ? PureMotionKind::TranslationBody1
                                                 : PureMotionKind::TranslationBody3);
    spec.seed_pos = opts.seed_pos;
    spec.seed_vel = opts.seed_vel;
    spec.T = opts.T;
    scenario["seed_pos"] = opts.seed_pos;
    scenario["seed_vel"] = opts.seed_vel;
    result.extremal = pure_motion_extremal(sys, table, spec, iopts);
  } else if (name == "uuv-bangbang") {
    Eigen::VectorXd x0(6), lam0(6);
    x0 << 0.0, 0.0, 0.0, 0.4, -0.3, 0.2;
    lam0 << 0.3, -0.5, 0.7, 0.4, -0.6, 0.2;
    scenario["x0"] = std::vector<double>(x0.data(), x0.data() + 6);
    scenario["lam0"] = std::vector<double>(lam0.data(), lam0.data() + 6);
    result.extremal = integrate_extremal(sys, table, x0, lam0, opts.T, iopts);
  } else {
    throw InvalidArgument("unknown preset '" + name + "'");
  }

  const Classification cls =
      classify_extremal(result.extremal, opts.sg_tol, iopts.singular_window);

  std::filesystem::create_directories(opts.out_dir);
  const auto path_of = [&](const std::string& leaf) {
    return (std::filesystem::path(opts.out_dir) / leaf).string();
  };
  result.csv_path = path_of(name + ".csv");
  result.events_path = path_of(name + "_events.json");
  result.report_path = path_of(name + "_report.json");

  write_file(result.csv_path, trajectory_csv(result.extremal));
  json events_file;
  events_file["schema_version"] = kSchemaVersion;
  events_file["events"] = events_json(result.extremal);
  write_file(result.events_path, events_file.dump(2) + "\n");

  json report;
  report["schema_version"] = kSchemaVersion;
  report["tool_version"] = kToolVersion;
  report["command"] = command_echo;
  report["scenario"] = scenario;
  report["config_hash"] = config_hash(scenario);
  report["classification"] = classification_json(cls);
  if (name != "uuv-bangbang") {
    report["switching_restrictions"] =
        switching_restrictions_json(verify_switching_restrictions(result.extremal, sys, opts.sg_tol));
  }
  report["artifacts"] = {name + ".csv", name + "_events.json"};
  if (opts.emit_plot_data) {
    result.plot_path = path_of(name + "_plot.csv");
    write_file(result.plot_path, plot_data_csv(result.extremal));
    report["artifacts"].push_back(name + "_plot.csv");
  }
  result.report = report;
  write_file(result.report_path, report.dump(2) + "\n");
  return result;
}

}  // namespace extremalkit
