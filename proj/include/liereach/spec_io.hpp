// spec_io.hpp - JSON spec files, reports and trajectories.
//
// Canonical output: keys sorted, two-space indentation, floats printed with 17
// significant digits, so write(read(file)) reproduces a canonical file byte for byte.

#pragma once

#include <string>

#include <json.hpp>

#include "liereach/controllability.hpp"
#include "liereach/propagator.hpp"
#include "liereach/steering.hpp"
#include "liereach/system.hpp"

namespace liereach::io {

using Json = nlohmann::json;

std::string canonical_dump(const Json& j);

// Throws InputError("", ...) when the file is unreadable or not JSON.
Json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Validated system; states within 1e-8 of unit norm are renormalized.
SystemSpec parse_spec(const Json& j);
SystemSpec load_spec(const std::string& path);
Json spec_to_json(const SystemSpec& sys);

ControlSchedule parse_schedule(const Json& j, int num_controls);
Json schedule_to_json(const ControlSchedule& sched);

// {"state": [[re, im], ...]} or the bare array.
ComplexVector parse_state(const Json& j, const std::string& path = "state");
Json state_to_json(const ComplexVector& v);

Json report_to_json(const ControllabilityReport& report);
Json trajectory_to_json(const Trajectory& traj);
Json steering_to_json(const SteeringResult& result);

void write_report(const ControllabilityReport& report, const std::string& path);

const char* tool_version();

}  // namespace liereach::io
