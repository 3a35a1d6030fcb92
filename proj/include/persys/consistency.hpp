#pragma once

// Concrete consistency tests for the two reference perception pipelines.
//
// Every function returns the syndrome bit convention: 0 = pass (consistent),
// 1 = fail.  The kinematic tests implement their acceptance predicates
// literally — one-sided comparisons stay one-sided (no absolute values are
// inserted where the predicate does not have them).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "persys/geometry.hpp"

namespace persys {

// ---------------------------------------------------------------------------
// Object detection.
// ---------------------------------------------------------------------------

struct Obstacle {
  std::string id;
  ConvexPolygon footprint;
  double confidence = 1.0;
};

// A sensor's field of view.  An obstacle is considered inside the FOV when
// its footprint centroid lies in the region.
struct FieldOfView {
  ConvexPolygon region;
};

// Lane geometry for severity grading.  drivable_map is the mapped region as
// a set of convex pieces (roadway and adjacent mapped strips); current_lane
// must lie inside it.
struct LaneMap {
  ConvexPolygon current_lane;
  std::vector<ConvexPolygon> drivable_map;
};

bool lane_map_valid(const LaneMap& lanes);

enum class Severity { None = 0, Low = 1, High = 2 };

std::string to_string(Severity severity);

enum class OverlapMode {
  CentroidDistance,  // match when centroid distance ≤ threshold
  AreaOverlap,       // match when 1 − IoU ≤ threshold
};

struct MatchConfig {
  double dist_threshold = 0.5;
  OverlapMode overlap_mode = OverlapMode::CentroidDistance;
  // When true (centroid mode only), the effective threshold for a pair is
  // max(dist_threshold, half the larger footprint diameter), so two
  // detections of the same physical object match even with sensor offset.
  bool size_adaptive = true;
};

// Approximate membership: does `obstacle` match some element of `others`?
bool approx_member(const Obstacle& obstacle, const std::vector<Obstacle>& others,
                   const MatchConfig& config);

// Severity of a set of unexplained obstacles: High if any touches the
// current lane, else Low if any touches the mapped region, else None.
Severity severity_of(const std::vector<Obstacle>& unmatched, const LaneMap& lanes);

struct ObjectTestResult {
  std::uint8_t bit = 0;  // 1 iff some obstacle is unexplained
  Severity severity = Severity::None;
  std::vector<Obstacle> unmatched;
};

// Cross-checks two obstacle sets: an obstacle reported by one side is
// unexplained when it lies inside the other side's FOV but matches nothing
// the other side reported.  Symmetric in (a, b).
ObjectTestResult object_detection_test(const std::vector<Obstacle>& obstacles_a,
                                       const std::vector<Obstacle>& obstacles_b,
                                       const FieldOfView& fov_a,
                                       const FieldOfView& fov_b,
                                       const LaneMap& lanes,
                                       const MatchConfig& config);

// ---------------------------------------------------------------------------
// Localization.
// ---------------------------------------------------------------------------

// Physical-limit and tolerance constants shared by the kinematic tests.
struct KinematicLimits {
  double tau_p = 0.30;   // position tolerance [m]
  double tau_v = 0.5;    // speed tolerance [m/s]
  double v_hat = 25.0;   // max speed [m/s]
  double a_hat = 10.0;   // max acceleration [m/s²]
  double j_hat = 15.0;   // max jerk [m/s³]
};

struct PoseSample {
  Vec2 p;
  double v = 0.0;  // speed [m/s]
  double t = 0.0;  // [s]
};

struct GpsSample {
  Vec2 p;
  double v = 0.0;
  double t = 0.0;
};

struct ImuSample {
  double a = 0.0;  // longitudinal acceleration [m/s²]
  double t = 0.0;
};

// Trapezoidal integral of acceleration over the sample sequence (0 for
// fewer than two samples).  Sample times must be nondecreasing.
double integrate_acceleration(std::span<const ImuSample> samples);

// POSE vs GPS at the same tick.  Passes when the position gap is within
// `position_gate`, the speed gap within τ_v, and both speeds within v̂.
// The deployed gate (1 m) is wider than τ_p to absorb GPS noise.
std::uint8_t pose_gps_test(const PoseSample& pose, const GpsSample& gps,
                           const KinematicLimits& limits, double position_gate = 1.0);

// IMU checks the pose evolution from `first` to `second` (first.t < second.t):
// displacement within v̂·Δt, speed change within τ_v of ∫a dt, every sampled
// acceleration within â, both speeds within v̂.  `imu` must be non-empty.
std::uint8_t imu_pose_test(const PoseSample& first, const PoseSample& second,
                           std::span<const ImuSample> imu,
                           const KinematicLimits& limits);

// GPS evolution vs the IMU: as imu_pose_test but without the per-sample
// acceleration bound.
std::uint8_t gps_imu_test(const GpsSample& first, const GpsSample& second,
                          std::span<const ImuSample> imu,
                          const KinematicLimits& limits);

// Consecutive fixes of the same sensor: displacement within τ_p, speed
// change within τ_v, both speeds within v̂.
std::uint8_t gps_gps_test(const GpsSample& first, const GpsSample& second,
                          const KinematicLimits& limits);
std::uint8_t pose_pose_test(const PoseSample& first, const PoseSample& second,
                            const KinematicLimits& limits);

// Consecutive accelerations: implied jerk (a₂−a₁)/(t₂−t₁) within ĵ and both
// accelerations within â.  Throws when first.t == second.t.
std::uint8_t imu_imu_test(const ImuSample& first, const ImuSample& second,
                          const KinematicLimits& limits);

}  // namespace persys
