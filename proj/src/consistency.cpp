#include "persys/consistency.hpp"

#include <algorithm>

namespace persys {

namespace {
using Kind = ValidationError::Kind;
}

bool lane_map_valid(const LaneMap& lanes) {
  if (lanes.drivable_map.empty()) return false;
  // Approximate containment: every lane vertex lies in some mapped piece.
  for (Vec2 v : lanes.current_lane.vertices()) {
    bool inside = false;
    for (const ConvexPolygon& piece : lanes.drivable_map)
      if (piece.contains(v)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

std::string to_string(Severity severity) {
  switch (severity) {
    case Severity::None: return "NONE";
    case Severity::Low: return "LOW";
    case Severity::High: return "HIGH";
  }
  throw ValidationError(Kind::InvalidArgument, "unknown Severity value");
}

bool approx_member(const Obstacle& obstacle, const std::vector<Obstacle>& others,
                   const MatchConfig& config) {
  for (const Obstacle& other : others) {
    if (config.overlap_mode == OverlapMode::CentroidDistance) {
      double threshold = config.dist_threshold;
      if (config.size_adaptive)
        threshold = std::max(threshold,
                             0.5 * std::max(obstacle.footprint.diameter(),
                                            other.footprint.diameter()));
      if (distance(obstacle.footprint.centroid(), other.footprint.centroid()) <=
          threshold)
        return true;
    } else {
      if (1.0 - iou(obstacle.footprint, other.footprint) <= config.dist_threshold)
        return true;
    }
  }
  return false;
}

Severity severity_of(const std::vector<Obstacle>& unmatched, const LaneMap& lanes) {
  bool low = false;
  for (const Obstacle& o : unmatched) {
    if (intersects(o.footprint, lanes.current_lane)) return Severity::High;
    for (const ConvexPolygon& piece : lanes.drivable_map)
      if (intersects(o.footprint, piece)) {
        low = true;
        break;
      }
  }
  return low ? Severity::Low : Severity::None;
}

ObjectTestResult object_detection_test(const std::vector<Obstacle>& obstacles_a,
                                       const std::vector<Obstacle>& obstacles_b,
                                       const FieldOfView& fov_a,
                                       const FieldOfView& fov_b,
                                       const LaneMap& lanes,
                                       const MatchConfig& config) {
  ObjectTestResult result;
  // U_a^b: a's obstacles inside b's FOV that b cannot explain, and vice versa.
  for (const Obstacle& o : obstacles_a)
    if (fov_b.region.contains(o.footprint.centroid()) &&
        !approx_member(o, obstacles_b, config))
      result.unmatched.push_back(o);
  for (const Obstacle& o : obstacles_b)
    if (fov_a.region.contains(o.footprint.centroid()) &&
        !approx_member(o, obstacles_a, config))
      result.unmatched.push_back(o);
  result.bit = result.unmatched.empty() ? 0 : 1;
  result.severity = severity_of(result.unmatched, lanes);
  return result;
}

double integrate_acceleration(std::span<const ImuSample> samples) {
  double integral = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].t < samples[i - 1].t)
      throw ValidationError(Kind::InvalidArgument,
                            "IMU samples out of order");
    integral += 0.5 * (samples[i].a + samples[i - 1].a) *
                (samples[i].t - samples[i - 1].t);
  }
  return integral;
}

std::uint8_t pose_gps_test(const PoseSample& pose, const GpsSample& gps,
                           const KinematicLimits& limits, double position_gate) {
  bool r = distance(pose.p, gps.p) <= position_gate &&
           std::abs(pose.v - gps.v) <= limits.tau_v &&
           pose.v <= limits.v_hat && gps.v <= limits.v_hat;
  return r ? 0 : 1;
}

std::uint8_t imu_pose_test(const PoseSample& first, const PoseSample& second,
                           std::span<const ImuSample> imu,
                           const KinematicLimits& limits) {
  if (imu.empty())
    throw ValidationError(Kind::InvalidArgument, "imu_pose_test: empty IMU span");
  bool r = distance(second.p, first.p) <= limits.v_hat * (second.t - first.t) &&
           std::abs((second.v - first.v) - integrate_acceleration(imu)) <=
               limits.tau_v &&
           first.v <= limits.v_hat && second.v <= limits.v_hat;
  for (const ImuSample& s : imu) r = r && s.a <= limits.a_hat;
  return r ? 0 : 1;
}

std::uint8_t gps_imu_test(const GpsSample& first, const GpsSample& second,
                          std::span<const ImuSample> imu,
                          const KinematicLimits& limits) {
  if (imu.empty())
    throw ValidationError(Kind::InvalidArgument, "gps_imu_test: empty IMU span");
  bool r = distance(second.p, first.p) <= limits.v_hat * (second.t - first.t) &&
           std::abs((second.v - first.v) - integrate_acceleration(imu)) <=
               limits.tau_v &&
           first.v <= limits.v_hat && second.v <= limits.v_hat;
  return r ? 0 : 1;
}

std::uint8_t gps_gps_test(const GpsSample& first, const GpsSample& second,
                          const KinematicLimits& limits) {
  bool r = distance(second.p, first.p) <= limits.tau_p &&
           std::abs(second.v - first.v) <= limits.tau_v &&
           first.v <= limits.v_hat && second.v <= limits.v_hat;
  return r ? 0 : 1;
}

std::uint8_t pose_pose_test(const PoseSample& first, const PoseSample& second,
                            const KinematicLimits& limits) {
  bool r = distance(second.p, first.p) <= limits.tau_p &&
           std::abs(second.v - first.v) <= limits.tau_v &&
           first.v <= limits.v_hat && second.v <= limits.v_hat;
  return r ? 0 : 1;
}

std::uint8_t imu_imu_test(const ImuSample& first, const ImuSample& second,
                          const KinematicLimits& limits) {
  if (second.t == first.t)
    throw ValidationError(Kind::InvalidArgument,
                          "imu_imu_test: samples share a timestamp");
  double jerk = (second.a - first.a) / (second.t - first.t);
  bool r = jerk <= limits.j_hat && first.a <= limits.a_hat &&
           second.a <= limits.a_hat;
  return r ? 0 : 1;
}

}  // namespace persys
