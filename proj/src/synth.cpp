#include "persys/synth.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

namespace persys {

namespace {

using Kind = ValidationError::Kind;

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

ConvexPolygon box(double x0, double y0, double x1, double y1) {
  return ConvexPolygon::axis_aligned_box(Vec2{x0, y0}, Vec2{x1, y1});
}

Obstacle truck_obstacle() {
  return Obstacle{"truck", box(37.0, -1.25, 43.0, 1.25), 1.0};
}

Obstacle phantom_obstacle() {
  return Obstacle{"ghost", box(44.5, 5.5, 45.5, 6.5), 0.7};
}

}  // namespace

std::optional<ScenarioKind> scenario_from_string(std::string_view text) {
  if (text == "gps-spoof") return ScenarioKind::GpsSpoof;
  if (text == "obstacle-omission") return ScenarioKind::ObstacleOmission;
  if (text == "phantom-obstacle") return ScenarioKind::PhantomObstacle;
  return std::nullopt;
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::GpsSpoof: return "gps-spoof";
    case ScenarioKind::ObstacleOmission: return "obstacle-omission";
    case ScenarioKind::PhantomObstacle: return "phantom-obstacle";
  }
  throw ValidationError(Kind::InvalidArgument, "unknown ScenarioKind");
}

LaneMap scenario_lane_map() {
  return LaneMap{box(0.0, -1.75, 200.0, 1.75), {box(0.0, -8.0, 200.0, 8.0)}};
}

std::map<std::string, FieldOfView> scenario_fovs() {
  std::map<std::string, FieldOfView> fovs;
  for (const std::string& sensor : object_detection_modules())
    fovs.emplace(sensor, FieldOfView{box(0.0, -30.0, 200.0, 30.0)});
  return fovs;
}

MonitorConfig scenario_object_detection_config() {
  MonitorConfig config;
  config.pipeline = PipelineKind::ObjectDetection;
  config.tick_period = 0.1;
  config.window_length = 2;
  config.lanes = scenario_lane_map();
  config.fovs = scenario_fovs();
  return config;
}

SynthesizedTrace synth_trace(const ScenarioParams& params, std::uint64_t seed) {
  if (params.tick_period <= 0.0 || params.duration <= 0.0)
    throw ValidationError(Kind::InvalidArgument,
                          "duration and tick_period must be positive");
  if (params.fault_duration_min > params.fault_duration_max ||
      params.fault_duration_min < 0.0)
    throw ValidationError(Kind::InvalidArgument, "bad fault duration range");

  const std::size_t ticks =
      static_cast<std::size_t>(std::floor(params.duration / params.tick_period + 1e-9));
  if (ticks < 2)
    throw ValidationError(Kind::InvalidArgument, "trace shorter than two ticks");

  std::mt19937_64 rng(seed);

  SynthesizedTrace trace;
  trace.kind = params.kind;

  if (params.inject_fault) {
    double fault_duration =
        uniform_real(rng, params.fault_duration_min, params.fault_duration_max);
    double lead = 4.0 * params.tick_period;
    double tail = 2.0 * params.tick_period;
    double latest = params.duration - fault_duration - tail;
    if (params.fault_start) {
      trace.fault_begin = *params.fault_start;
    } else {
      if (latest < lead)
        throw ValidationError(Kind::InvalidArgument,
                              "trace too short to place the fault interval");
      trace.fault_begin = uniform_real(rng, lead, latest);
    }
    trace.fault_end = trace.fault_begin + fault_duration;
  }

  auto faulted = [&](double t) {
    return params.inject_fault && t >= trace.fault_begin && t < trace.fault_end;
  };

  const bool localization = params.kind == ScenarioKind::GpsSpoof;
  for (std::size_t k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * params.tick_period;
    const bool in_fault = faulted(t);
    if (in_fault) trace.faulty_ticks.push_back(static_cast<std::int64_t>(k));

    if (localization) {
      Vec2 truth{1.0 + params.cruise_speed * t, 0.0};
      Vec2 gps_p = truth;
      Vec2 pose_p = truth;
      if (in_fault) {
        gps_p.y += params.gps_offset;
        pose_p.y += params.pose_follow * params.gps_offset;
      }
      trace.records.emplace_back(GpsRecord{t, gps_p, params.cruise_speed});
      trace.records.emplace_back(PoseRecord{t, pose_p, params.cruise_speed});
      for (std::size_t i = 0; i < params.imu_per_tick; ++i) {
        double ts = t + static_cast<double>(i) * params.tick_period /
                            static_cast<double>(params.imu_per_tick);
        trace.records.emplace_back(ImuRecord{ts, 0.0});
      }
      continue;
    }

    for (const std::string& sensor : object_detection_modules()) {
      ObstaclesRecord rec;
      rec.sensor = sensor;
      rec.t = t;
      bool omit_truck = in_fault &&
                        params.kind == ScenarioKind::ObstacleOmission && sensor == "C";
      if (!omit_truck) rec.obstacles.push_back(truck_obstacle());
      if (in_fault && params.kind == ScenarioKind::PhantomObstacle && sensor == "C")
        rec.obstacles.push_back(phantom_obstacle());
      trace.records.emplace_back(std::move(rec));
    }
  }
  return trace;
}

}  // namespace persys
