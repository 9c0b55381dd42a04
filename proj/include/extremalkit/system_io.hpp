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

#ifndef EXTREMALKIT_SYSTEM_IO_HPP_
#define EXTREMALKIT_SYSTEM_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "extremalkit/singular.hpp"
#include "extremalkit/uuv.hpp"

namespace extremalkit {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// System-definition schema: variables (name, kind: poly|angle, block:
// x1|x2), bounds as rational strings or numbers, and either raw
// drift/controls expression strings or a "mechanical" block (M, M_inv, N,
// Q and the optional change-of-variables matrices, identity/zero
// defaults). When both raw and mechanical data are present the built
// system is cross-checked against the raw expressions.
AffineSystem load_system_definition(const nlohmann::json& j);
AffineSystem load_system_file(const std::string& path);

// Raw-form echo (canonical expression strings); re-parses to an identical
// system.
nlohmann::json dump_system_definition(const AffineSystem& sys);

// Trajectory CSV: header t,x1..xn,lam1..lamn,u1..um,phi1..phim,H, floats
// printed as shortest round-trip decimals.
void write_trajectory_csv(const Extremal& ext, std::ostream& os);
std::string trajectory_csv(const Extremal& ext);

// Reads the x-block columns of a trajectory CSV back as states.
std::vector<std::vector<double>> read_states_csv(const std::string& path,
                                                 std::size_t n);

// Tidy long-format series (t,series,value) for external plotters.
std::string plot_data_csv(const Extremal& ext);

nlohmann::json events_json(const Extremal& ext);
nlohmann::json classification_json(const Classification& cls);
nlohmann::json span_verdict_json(const SpanConditionVerdict& verdict);
nlohmann::json no_common_zero_json(const NoCommonZeroVerdict& verdict);
nlohmann::json concat_json(const ConcatVerdict& verdict);
nlohmann::json singular_solution_json(const SingularControlSolution& sol);
nlohmann::json switching_restrictions_json(const SwitchingRestrictionReport& report);
nlohmann::json commutativity_json(const CommutativityReport& report);
nlohmann::json degree_audit_json(const DegreeAuditReport& report);

// Chain/query parsing (channels are 1-based in files, 0-based in the API).
SpanConditionQuery query_from_json(const nlohmann::json& j, std::size_t m);

// Stable 64-bit FNV-1a over a string, for config hashes in reports.
std::uint64_t fnv1a(const std::string& data);
std::string config_hash(const nlohmann::json& config);

// Shortest round-trip decimal for a double.
std::string format_double(double v);

}  // namespace extremalkit

#endif  // EXTREMALKIT_SYSTEM_IO_HPP_
