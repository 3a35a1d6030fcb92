#pragma once

// Synthetic sensor traces with seeded fault injection, for exercising the
// monitor end to end.  The nominal world is a vehicle cruising a straight
// road at constant speed with a static obstacle scene, so every consistency
// test passes until a fault is injected.

#include <cstdint>
#include <optional>
#include <vector>

#include "persys/monitor.hpp"
#include "persys/trace.hpp"

namespace persys {

enum class ScenarioKind {
  GpsSpoof,           // GPS position offset; fused pose drags along
  ObstacleOmission,   // camera drops an in-lane obstacle
  PhantomObstacle,    // camera invents an off-lane obstacle
};

std::optional<ScenarioKind> scenario_from_string(std::string_view text);
std::string to_string(ScenarioKind kind);

struct ScenarioParams {
  ScenarioKind kind = ScenarioKind::GpsSpoof;
  double duration = 3.0;        // trace length [s]
  double tick_period = 0.1;     // [s]; cruise_speed·tick_period must stay ≤ τ_p
  double cruise_speed = 2.5;    // [m/s]
  std::size_t imu_per_tick = 5;
  // Fault window: drawn uniformly in [fault_duration_min, fault_duration_max]
  // and placed at a seeded interior start unless fault_start pins it.
  double fault_duration_min = 0.1;
  double fault_duration_max = 0.4;
  std::optional<double> fault_start;
  bool inject_fault = true;
  // GPS spoof shape.
  double gps_offset = 10.0;     // lateral offset [m]
  double pose_follow = 0.6;     // fraction of the offset the fused pose adopts
};

struct SynthesizedTrace {
  std::vector<TraceRecord> records;
  ScenarioKind kind = ScenarioKind::GpsSpoof;
  double fault_begin = 0.0;     // [begin, end); begin == end when no fault
  double fault_end = 0.0;
  std::vector<std::int64_t> faulty_ticks;  // ticks whose records are faulted
};

SynthesizedTrace synth_trace(const ScenarioParams& params, std::uint64_t seed);

// Road geometry shared by the object-detection scenarios: a straight lane
// flanked by mapped shoulder/sidewalk strips, sensors with a common wide FOV.
LaneMap scenario_lane_map();
std::map<std::string, FieldOfView> scenario_fovs();

// Object-detection monitor config wired to the scenario geometry.
MonitorConfig scenario_object_detection_config();

}  // namespace persys
