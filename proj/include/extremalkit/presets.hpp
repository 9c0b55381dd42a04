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

#ifndef EXTREMALKIT_PRESETS_HPP_
#define EXTREMALKIT_PRESETS_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "extremalkit/system_io.hpp"

namespace extremalkit {

// Packaged UUV scenarios: uuv-rotation, uuv-translate-1, uuv-translate-3,
// uuv-bangbang. Artifacts (trajectory CSV, events JSON, report JSON) are
// deterministic for identical options.
struct PresetOptions {
  double T = 2.0;
  double step = 1e-3;
  double sg_tol = 1e-9;
  double seed_pos = 1.0;   // pure-motion scenarios
  double seed_vel = 0.5;
  std::string out_dir = ".";
  bool emit_plot_data = false;  // tidy long-format CSV for external plotters
};

struct PresetResult {
  std::string csv_path;
  std::string events_path;
  std::string report_path;
  std::string plot_path;  // empty unless requested
  Extremal extremal;
  nlohmann::json report;
};

std::vector<std::string> preset_names();

PresetResult run_preset(const std::string& name, const PresetOptions& opts,
                        const std::vector<std::string>& command_echo = {});

}  // namespace extremalkit

#endif  // EXTREMALKIT_PRESETS_HPP_
