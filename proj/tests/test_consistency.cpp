#include "persys/consistency.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace persys {
namespace {

Obstacle box_obstacle(std::string id, Vec2 center, double half = 0.5,
                      double confidence = 1.0) {
  return Obstacle{std::move(id),
                  ConvexPolygon::axis_aligned_box(
                      {center.x - half, center.y - half},
                      {center.x + half, center.y + half}),
                  confidence};
}

LaneMap test_lane_map() {
  return LaneMap{ConvexPolygon::axis_aligned_box({0, -1.75}, {50, 1.75}),
                 {ConvexPolygon::axis_aligned_box({0, -8}, {50, 8})}};
}

FieldOfView wide_fov() {
  return FieldOfView{ConvexPolygon::axis_aligned_box({0, -30}, {50, 30})};
}

std::vector<std::string> sorted_ids(const std::vector<Obstacle>& obstacles) {
  std::vector<std::string> ids;
  for (const Obstacle& o : obstacles) ids.push_back(o.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// ---------------------------------------------------------------------------
// Obstacle matching.
// ---------------------------------------------------------------------------

TEST(ApproxMember, ExactMemberMatches) {
  Obstacle o = box_obstacle("x", {3, 4});
  EXPECT_TRUE(approx_member(o, {o}, MatchConfig{}));
}

TEST(ApproxMember, FarDisjointDoesNotMatch) {
  Obstacle a = box_obstacle("a", {0, 0});
  Obstacle b = box_obstacle("b", {10, 0});
  EXPECT_FALSE(approx_member(a, {b}, MatchConfig{0.5}));
}

TEST(ApproxMember, CentroidModeWithinThreshold) {
  Obstacle a = box_obstacle("a", {0, 0});
  Obstacle b = box_obstacle("b", {0.2, 0});
  MatchConfig cfg{0.3, OverlapMode::CentroidDistance, /*size_adaptive=*/false};
  EXPECT_TRUE(approx_member(a, {b}, cfg));
}

TEST(ApproxMember, CentroidThresholdIsInclusive) {
  // Pin the threshold to the exact computed gap: equality must match, one
  // ulp less must not.
  Obstacle a = box_obstacle("a", {0, 0});
  Obstacle b = box_obstacle("b", {0.3, 0});
  const double gap = distance(a.footprint.centroid(), b.footprint.centroid());
  MatchConfig at{gap, OverlapMode::CentroidDistance, /*size_adaptive=*/false};
  MatchConfig below{std::nextafter(gap, 0.0), OverlapMode::CentroidDistance, false};
  EXPECT_TRUE(approx_member(a, {b}, at));
  EXPECT_FALSE(approx_member(a, {b}, below));
}

TEST(ApproxMember, SizeAdaptiveWidensTheGate) {
  // Unit squares 0.6 m apart: beyond the raw 0.5 m threshold, but half the
  // footprint diameter (√2/2 ≈ 0.707) dominates when adaptation is on.
  Obstacle a = box_obstacle("a", {0, 0});
  Obstacle b = box_obstacle("b", {0.6, 0});
  MatchConfig fixed{0.5, OverlapMode::CentroidDistance, false};
  MatchConfig adaptive{0.5, OverlapMode::CentroidDistance, true};
  EXPECT_FALSE(approx_member(a, {b}, fixed));
  EXPECT_TRUE(approx_member(a, {b}, adaptive));
}

TEST(ApproxMember, AreaOverlapMode) {
  Obstacle a = box_obstacle("a", {0, 0});
  Obstacle shifted = box_obstacle("b", {0.5, 0});  // IoU = 1/3
  MatchConfig strict{0.5, OverlapMode::AreaOverlap};
  MatchConfig loose{0.7, OverlapMode::AreaOverlap};
  EXPECT_TRUE(approx_member(a, {a}, strict));  // 1 − IoU = 0
  EXPECT_FALSE(approx_member(a, {shifted}, strict));
  EXPECT_TRUE(approx_member(a, {shifted}, loose));
}

TEST(ApproxMember, EmptySetNeverMatches) {
  EXPECT_FALSE(approx_member(box_obstacle("a", {0, 0}), {}, MatchConfig{}));
}

// ---------------------------------------------------------------------------
// Lane map and severity.
// ---------------------------------------------------------------------------

TEST(LaneMapValid, AcceptsContainedLaneRejectsEscapees) {
  EXPECT_TRUE(lane_map_valid(test_lane_map()));

  LaneMap escaping = test_lane_map();
  escaping.current_lane = ConvexPolygon::axis_aligned_box({0, -1.75}, {80, 1.75});
  EXPECT_FALSE(lane_map_valid(escaping));

  LaneMap empty_map = test_lane_map();
  empty_map.drivable_map.clear();
  EXPECT_FALSE(lane_map_valid(empty_map));
}

TEST(SeverityOf, LaneBeatsMapBeatsNothing) {
  LaneMap lanes = test_lane_map();
  Obstacle in_lane = box_obstacle("lane", {10, 0});
  Obstacle on_map = box_obstacle("side", {10, 6});    // mapped strip, off lane
  Obstacle off_map = box_obstacle("far", {10, 20});   // outside the map

  EXPECT_EQ(severity_of({}, lanes), Severity::None);
  EXPECT_EQ(severity_of({off_map}, lanes), Severity::None);
  EXPECT_EQ(severity_of({on_map}, lanes), Severity::Low);
  EXPECT_EQ(severity_of({on_map, off_map}, lanes), Severity::Low);
  EXPECT_EQ(severity_of({in_lane, on_map, off_map}, lanes), Severity::High);
}

TEST(SeverityOf, RemovingObstaclesNeverRaisesSeverity) {
  LaneMap lanes = test_lane_map();
  std::vector<Obstacle> all = {box_obstacle("lane", {10, 0}),
                               box_obstacle("side", {10, 6}),
                               box_obstacle("far", {10, 20})};
  Severity full = severity_of(all, lanes);
  for (std::size_t drop = 0; drop < all.size(); ++drop) {
    std::vector<Obstacle> fewer = all;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
    EXPECT_LE(static_cast<int>(severity_of(fewer, lanes)),
              static_cast<int>(full));
  }
}

TEST(SeverityOf, ToStringNames) {
  EXPECT_EQ(to_string(Severity::None), "NONE");
  EXPECT_EQ(to_string(Severity::Low), "LOW");
  EXPECT_EQ(to_string(Severity::High), "HIGH");
}

// ---------------------------------------------------------------------------
// Object detection cross-check.
// ---------------------------------------------------------------------------

TEST(ObjectDetectionTest, IdenticalSetsAreConsistent) {
  std::vector<Obstacle> obs = {box_obstacle("car", {10, 0}),
                               box_obstacle("bike", {20, 5})};
  ObjectTestResult r = object_detection_test(obs, obs, wide_fov(), wide_fov(),
                                             test_lane_map(), MatchConfig{});
  EXPECT_EQ(r.bit, 0);
  EXPECT_EQ(r.severity, Severity::None);
  EXPECT_TRUE(r.unmatched.empty());
}

TEST(ObjectDetectionTest, MissedTruckInLaneIsHighSeverity) {
  // The LIDAR reports a truck blocking the lane; the camera misses it even
  // though the truck sits inside the camera FOV.
  std::vector<Obstacle> lidar = {box_obstacle("truck", {12, 0}, 1.0)};
  std::vector<Obstacle> camera = {};
  ObjectTestResult r = object_detection_test(lidar, camera, wide_fov(),
                                             wide_fov(), test_lane_map(),
                                             MatchConfig{});
  EXPECT_EQ(r.bit, 1);
  EXPECT_EQ(r.severity, Severity::High);
  ASSERT_EQ(r.unmatched.size(), 1u);
  EXPECT_EQ(r.unmatched[0].id, "truck");
}

TEST(ObjectDetectionTest, PhantomOnSidewalkIsLowSeverity) {
  std::vector<Obstacle> camera = {box_obstacle("ghost", {12, 6})};
  std::vector<Obstacle> lidar = {};
  ObjectTestResult r = object_detection_test(camera, lidar, wide_fov(),
                                             wide_fov(), test_lane_map(),
                                             MatchConfig{});
  EXPECT_EQ(r.bit, 1);
  EXPECT_EQ(r.severity, Severity::Low);
}

TEST(ObjectDetectionTest, UnexplainedOffMapObstacleDetectedWithoutSeverity) {
  std::vector<Obstacle> a = {box_obstacle("bird", {12, 20})};
  ObjectTestResult r = object_detection_test(a, {}, wide_fov(), wide_fov(),
                                             test_lane_map(), MatchConfig{});
  EXPECT_EQ(r.bit, 1);
  EXPECT_EQ(r.severity, Severity::None);
}

TEST(ObjectDetectionTest, ObstacleOutsideOtherFovIsExcused) {
  // The disagreement is excused because the other sensor cannot see there.
  FieldOfView narrow{ConvexPolygon::axis_aligned_box({0, -2}, {50, 2})};
  std::vector<Obstacle> lidar = {box_obstacle("side", {12, 6})};
  ObjectTestResult r = object_detection_test(lidar, {}, wide_fov(), narrow,
                                             test_lane_map(), MatchConfig{});
  EXPECT_EQ(r.bit, 0);
  EXPECT_EQ(r.severity, Severity::None);
}

TEST(ObjectDetectionTest, SymmetricInArguments) {
  FieldOfView fov_a = wide_fov();
  FieldOfView fov_b{ConvexPolygon::axis_aligned_box({0, -10}, {50, 10})};
  std::vector<Obstacle> a = {box_obstacle("p", {10, 0}),
                             box_obstacle("q", {20, 6})};
  std::vector<Obstacle> b = {box_obstacle("r", {10.1, 0}),
                             box_obstacle("s", {30, 0})};
  ObjectTestResult ab = object_detection_test(a, b, fov_a, fov_b,
                                              test_lane_map(), MatchConfig{});
  ObjectTestResult ba = object_detection_test(b, a, fov_b, fov_a,
                                              test_lane_map(), MatchConfig{});
  EXPECT_EQ(ab.bit, ba.bit);
  EXPECT_EQ(ab.severity, ba.severity);
  EXPECT_EQ(sorted_ids(ab.unmatched), sorted_ids(ba.unmatched));
}

TEST(ObjectDetectionTest, WideningThresholdNeverTurnsPassIntoFail) {
  std::mt19937_64 rng(20260814);
  std::uniform_real_distribution<double> coord(1.0, 49.0);
  MatchConfig tight{0.3, OverlapMode::CentroidDistance, false};
  MatchConfig loose{0.9, OverlapMode::CentroidDistance, false};
  LaneMap lanes = test_lane_map();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Obstacle> a = {
        box_obstacle("a0", {coord(rng), coord(rng) / 8}, 0.1)};
    std::vector<Obstacle> b = {
        box_obstacle("b0", {coord(rng), coord(rng) / 8}, 0.1)};
    std::uint8_t tight_bit =
        object_detection_test(a, b, wide_fov(), wide_fov(), lanes, tight).bit;
    std::uint8_t loose_bit =
        object_detection_test(a, b, wide_fov(), wide_fov(), lanes, loose).bit;
    EXPECT_LE(loose_bit, tight_bit);
  }
}

// ---------------------------------------------------------------------------
// Kinematic helpers.
// ---------------------------------------------------------------------------

TEST(IntegrateAcceleration, TrapezoidalRule) {
  EXPECT_DOUBLE_EQ(integrate_acceleration({}), 0.0);
  std::vector<ImuSample> single = {{2.0, 0.0}};
  EXPECT_DOUBLE_EQ(integrate_acceleration(single), 0.0);

  std::vector<ImuSample> ramp = {{0.0, 0.0}, {2.0, 1.0}};
  EXPECT_DOUBLE_EQ(integrate_acceleration(ramp), 1.0);

  std::vector<ImuSample> multi = {{1.0, 0.0}, {1.0, 0.5}, {3.0, 1.0}};
  EXPECT_DOUBLE_EQ(integrate_acceleration(multi), 1.5);
}

TEST(IntegrateAcceleration, RejectsOutOfOrderSamples) {
  std::vector<ImuSample> bad = {{0.0, 1.0}, {0.0, 0.5}};
  EXPECT_THROW(integrate_acceleration(bad), ValidationError);
}

// ---------------------------------------------------------------------------
// POSE ↔ GPS.
// ---------------------------------------------------------------------------

TEST(PoseGpsTest, IdenticalSamplesPass) {
  PoseSample pose{{5, 5}, 10.0, 1.0};
  GpsSample gps{{5, 5}, 10.0, 1.0};
  EXPECT_EQ(pose_gps_test(pose, gps, KinematicLimits{}), 0);
}

TEST(PoseGpsTest, LargePositionGapFails) {
  PoseSample pose{{0, 0}, 10.0, 1.0};
  GpsSample gps{{2, 0}, 10.0, 1.0};
  EXPECT_EQ(pose_gps_test(pose, gps, KinematicLimits{}), 1);
}

TEST(PoseGpsTest, OverspeedGpsFails) {
  PoseSample pose{{0, 0}, 24.0, 1.0};
  GpsSample gps{{0, 0}, 30.0, 1.0};
  EXPECT_EQ(pose_gps_test(pose, gps, KinematicLimits{}), 1);
}

TEST(PoseGpsTest, GateBoundaries) {
  KinematicLimits lim;
  PoseSample pose{{0, 0}, 10.0, 1.0};
  // Position gate (deployed value 1 m) is inclusive.
  EXPECT_EQ(pose_gps_test(pose, GpsSample{{1.0, 0}, 10.0, 1.0}, lim), 0);
  EXPECT_EQ(pose_gps_test(pose, GpsSample{{1.0000001, 0}, 10.0, 1.0}, lim), 1);
  // Speed-gap tolerance τ_v.
  EXPECT_EQ(pose_gps_test(pose, GpsSample{{0, 0}, 10.5, 1.0}, lim), 0);
  EXPECT_EQ(pose_gps_test(pose, GpsSample{{0, 0}, 10.51, 1.0}, lim), 1);
  // Speed ceiling v̂.
  PoseSample fast{{0, 0}, 25.0, 1.0};
  EXPECT_EQ(pose_gps_test(fast, GpsSample{{0, 0}, 25.0, 1.0}, lim), 0);
  PoseSample too_fast{{0, 0}, 25.01, 1.0};
  EXPECT_EQ(pose_gps_test(too_fast, GpsSample{{0, 0}, 25.01, 1.0}, lim), 1);
}

TEST(PoseGpsTest, CustomGateIsHonored) {
  PoseSample pose{{0, 0}, 10.0, 1.0};
  GpsSample gps{{0.4, 0}, 10.0, 1.0};
  EXPECT_EQ(pose_gps_test(pose, gps, KinematicLimits{}, 0.3), 1);
  EXPECT_EQ(pose_gps_test(pose, gps, KinematicLimits{}, 0.5), 0);
}

// ---------------------------------------------------------------------------
// IMU → POSE and GPS → IMU.
// ---------------------------------------------------------------------------

TEST(ImuPoseTest, ConsistentEvolutionPasses) {
  // Constant 1 m/s² for one second: speed 5 → 6, displacement ~5.5 m.
  PoseSample first{{0, 0}, 5.0, 0.0};
  PoseSample second{{5.5, 0}, 6.0, 1.0};
  std::vector<ImuSample> imu = {{1.0, 0.0}, {1.0, 0.5}, {1.0, 1.0}};
  EXPECT_EQ(imu_pose_test(first, second, imu, KinematicLimits{}), 0);
}

TEST(ImuPoseTest, SpeedResidualBeyondToleranceFails) {
  PoseSample first{{0, 0}, 5.0, 0.0};
  PoseSample second{{7, 0}, 9.0, 1.0};  // Δv = 4 but ∫a dt = 1
  std::vector<ImuSample> imu = {{1.0, 0.0}, {1.0, 1.0}};
  EXPECT_EQ(imu_pose_test(first, second, imu, KinematicLimits{}), 1);
}

TEST(ImuPoseTest, OverAccelerationSampleFails) {
  PoseSample first{{0, 0}, 5.0, 0.0};
  PoseSample second{{11, 0}, 17.0, 1.0};
  std::vector<ImuSample> imu = {{12.0, 0.0}, {12.0, 1.0}};  // a > â
  EXPECT_EQ(imu_pose_test(first, second, imu, KinematicLimits{}), 1);
}

TEST(ImuPoseTest, DisplacementBoundIsVhatTimesDt) {
  KinematicLimits lim;
  std::vector<ImuSample> imu = {{0.0, 0.0}, {0.0, 1.0}};
  PoseSample first{{0, 0}, 25.0, 0.0};
  EXPECT_EQ(imu_pose_test(first, PoseSample{{25.0, 0}, 25.0, 1.0}, imu, lim), 0);
  EXPECT_EQ(imu_pose_test(first, PoseSample{{25.1, 0}, 25.0, 1.0}, imu, lim), 1);
}

TEST(ImuPoseTest, AccelerationBoundIsOneSided) {
  // Hard braking: a = −12 m/s² exceeds â in magnitude but the formula only
  // bounds a from above, so the test accepts it.
  PoseSample first{{0, 0}, 20.0, 0.0};
  PoseSample second{{14, 0}, 8.0, 1.0};
  std::vector<ImuSample> imu = {{-12.0, 0.0}, {-12.0, 1.0}};
  EXPECT_EQ(imu_pose_test(first, second, imu, KinematicLimits{}), 0);
}

TEST(ImuPoseTest, EmptyImuSpanThrows) {
  PoseSample s{{0, 0}, 5.0, 0.0};
  EXPECT_THROW(imu_pose_test(s, s, {}, KinematicLimits{}), ValidationError);
}

TEST(GpsImuTest, StationaryPasses) {
  GpsSample first{{3, 3}, 0.0, 0.0};
  GpsSample second{{3, 3}, 0.0, 1.0};
  std::vector<ImuSample> imu = {{0.0, 0.0}, {0.0, 1.0}};
  EXPECT_EQ(gps_imu_test(first, second, imu, KinematicLimits{}), 0);
}

TEST(GpsImuTest, TeleportingFixFails) {
  // 50 m in 0.2 s is far beyond v̂·Δt = 5 m — the spoofing signature.
  GpsSample first{{0, 0}, 10.0, 0.0};
  GpsSample second{{50, 0}, 10.0, 0.2};
  std::vector<ImuSample> imu = {{0.0, 0.0}, {0.0, 0.2}};
  EXPECT_EQ(gps_imu_test(first, second, imu, KinematicLimits{}), 1);
}

TEST(GpsImuTest, IntegratedSpeedChangeWithinTolerancePasses) {
  GpsSample first{{0, 0}, 5.0, 0.0};
  GpsSample second{{5.7, 0}, 6.4, 1.0};  // Δv = 1.4, ∫a dt = 1.0, residual 0.4
  std::vector<ImuSample> imu = {{1.0, 0.0}, {1.0, 1.0}};
  EXPECT_EQ(gps_imu_test(first, second, imu, KinematicLimits{}), 0);
}

TEST(GpsImuTest, NoPerSampleAccelerationBound) {
  // The same over-â samples that fail IMU→POSE are fine for GPS→IMU, whose
  // formula has no a ≤ â conjunct.
  GpsSample gfirst{{0, 0}, 5.0, 0.0};
  GpsSample gsecond{{11, 0}, 17.0, 1.0};
  std::vector<ImuSample> imu = {{12.0, 0.0}, {12.0, 1.0}};
  EXPECT_EQ(gps_imu_test(gfirst, gsecond, imu, KinematicLimits{}), 0);
  PoseSample pfirst{{0, 0}, 5.0, 0.0};
  PoseSample psecond{{11, 0}, 17.0, 1.0};
  EXPECT_EQ(imu_pose_test(pfirst, psecond, imu, KinematicLimits{}), 1);
}

// ---------------------------------------------------------------------------
// Same-module temporal tests.
// ---------------------------------------------------------------------------

TEST(GpsGpsTest, ConsecutiveFixes) {
  KinematicLimits lim;
  GpsSample base{{10, 0}, 2.0, 0.0};
  EXPECT_EQ(gps_gps_test(base, base, lim), 0);
  EXPECT_EQ(gps_gps_test(base, GpsSample{{10.2, 0}, 2.0, 0.1}, lim), 0);
  EXPECT_EQ(gps_gps_test(base, GpsSample{{110, 0}, 2.0, 0.1}, lim), 1);
}

TEST(GpsGpsTest, Boundaries) {
  KinematicLimits lim;
  GpsSample base{{0, 0}, 2.0, 0.0};
  // τ_p inclusive.
  EXPECT_EQ(gps_gps_test(base, GpsSample{{0.3, 0}, 2.0, 0.1}, lim), 0);
  EXPECT_EQ(gps_gps_test(base, GpsSample{{0.301, 0}, 2.0, 0.1}, lim), 1);
  // τ_v inclusive.
  EXPECT_EQ(gps_gps_test(base, GpsSample{{0, 0}, 2.5, 0.1}, lim), 0);
  EXPECT_EQ(gps_gps_test(base, GpsSample{{0, 0}, 2.51, 0.1}, lim), 1);
  // v̂ inclusive (keep Δv within τ_v so only the ceiling is at stake).
  GpsSample fast{{0, 0}, 25.0, 0.0};
  EXPECT_EQ(gps_gps_test(fast, GpsSample{{0, 0}, 25.0, 0.1}, lim), 0);
  GpsSample too_fast{{0, 0}, 25.5, 0.0};
  EXPECT_EQ(gps_gps_test(too_fast, GpsSample{{0, 0}, 25.5, 0.1}, lim), 1);
}

TEST(PosePoseTest, MirrorsGpsGps) {
  KinematicLimits lim;
  PoseSample base{{10, 0}, 2.0, 0.0};
  EXPECT_EQ(pose_pose_test(base, PoseSample{{10.2, 0}, 2.0, 0.1}, lim), 0);
  EXPECT_EQ(pose_pose_test(base, PoseSample{{10.4, 0}, 2.0, 0.1}, lim), 1);
  EXPECT_EQ(pose_pose_test(base, PoseSample{{10.0, 0}, 2.6, 0.1}, lim), 1);
}

TEST(ImuImuTest, JerkAndMagnitudeBounds) {
  KinematicLimits lim;
  EXPECT_EQ(imu_imu_test({2.0, 0.0}, {2.0, 0.1}, lim), 0);   // zero jerk
  EXPECT_EQ(imu_imu_test({0.0, 0.0}, {2.0, 0.1}, lim), 1);   // jerk 20 > ĵ
  EXPECT_EQ(imu_imu_test({11.0, 0.0}, {11.0, 0.1}, lim), 1); // a > â
}

TEST(ImuImuTest, Boundaries) {
  KinematicLimits lim;
  // Jerk exactly ĵ passes: Δa = 7.5 over Δt = 0.5 → 15 m/s³.
  EXPECT_EQ(imu_imu_test({0.0, 0.0}, {7.5, 0.5}, lim), 0);
  EXPECT_EQ(imu_imu_test({0.0, 0.0}, {7.6, 0.5}, lim), 1);
  // a exactly â passes.
  EXPECT_EQ(imu_imu_test({10.0, 0.0}, {10.0, 0.5}, lim), 0);
}

TEST(ImuImuTest, NegativeJerkIsUnbounded) {
  // The formula bounds jerk from above only; an abrupt brake onset passes.
  EXPECT_EQ(imu_imu_test({10.0, 0.0}, {-10.0, 0.1}, KinematicLimits{}), 0);
}

TEST(ImuImuTest, EqualTimestampsThrow) {
  EXPECT_THROW(imu_imu_test({1.0, 0.5}, {2.0, 0.5}, KinematicLimits{}),
               ValidationError);
}

// ---------------------------------------------------------------------------
// Pipeline-level sanity: ground truth is silent.
// ---------------------------------------------------------------------------

TEST(ConsistencySuite, FaultFreeGroundTruthYieldsAllZeroBits) {
  KinematicLimits lim;
  double v = 2.5;
  double dt = 0.1;
  PoseSample pose1{{0, 0}, v, 0.0};
  PoseSample pose2{{v * dt, 0}, v, dt};
  GpsSample gps1{{0, 0}, v, 0.0};
  GpsSample gps2{{v * dt, 0}, v, dt};
  std::vector<ImuSample> imu = {{0.0, 0.0}, {0.0, 0.05}, {0.0, 0.1}};

  EXPECT_EQ(pose_gps_test(pose2, gps2, lim), 0);
  EXPECT_EQ(imu_pose_test(pose1, pose2, imu, lim), 0);
  EXPECT_EQ(gps_imu_test(gps1, gps2, imu, lim), 0);
  EXPECT_EQ(gps_gps_test(gps1, gps2, lim), 0);
  EXPECT_EQ(pose_pose_test(pose1, pose2, lim), 0);
  EXPECT_EQ(imu_imu_test(imu[0], imu[2], lim), 0);

  std::vector<Obstacle> obs = {box_obstacle("car", {12, 0})};
  ObjectTestResult r = object_detection_test(obs, obs, wide_fov(), wide_fov(),
                                             test_lane_map(), MatchConfig{});
  EXPECT_EQ(r.bit, 0);
}

// Each test function must agree with a direct transcription of its formula;
// the full randomized sweep lives in the acceptance suite, this is a smoke
// version pinned to one representative predicate.
TEST(ConsistencySuite, GpsGpsMatchesFormulaOnRandomInputs) {
  KinematicLimits lim;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> pos(-0.5, 0.5);
  std::uniform_real_distribution<double> spd(24.0, 26.0);
  for (int trial = 0; trial < 2000; ++trial) {
    GpsSample a{{pos(rng), pos(rng)}, spd(rng), 0.0};
    GpsSample b{{pos(rng), pos(rng)}, spd(rng), 0.1};
    bool formula = distance(b.p, a.p) <= lim.tau_p &&
                   std::abs(b.v - a.v) <= lim.tau_v && a.v <= lim.v_hat &&
                   b.v <= lim.v_hat;
    EXPECT_EQ(gps_gps_test(a, b, lim), formula ? 0 : 1);
  }
}

}  // namespace
}  // namespace persys
