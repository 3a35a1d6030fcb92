#include "persys/trace.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

namespace persys {
namespace {

TraceRecord sample_gps() { return GpsRecord{1.5, {2.0, -3.25}, 2.5}; }

TraceRecord sample_obstacles() {
  return ObstaclesRecord{
      "C",
      0.5,
      {Obstacle{"truck",
                ConvexPolygon::axis_aligned_box({37, -1.25}, {43, 1.25}), 1.0}}};
}

TEST(TraceRecordIo, GpsRoundTrip) {
  std::string line = serialize_record(sample_gps());
  auto parsed = parse_record(line);
  ASSERT_TRUE(parsed.has_value());
  const auto* gps = std::get_if<GpsRecord>(&*parsed);
  ASSERT_NE(gps, nullptr);
  EXPECT_DOUBLE_EQ(gps->t, 1.5);
  EXPECT_DOUBLE_EQ(gps->p.x, 2.0);
  EXPECT_DOUBLE_EQ(gps->p.y, -3.25);
  EXPECT_DOUBLE_EQ(gps->v, 2.5);
  // Canonical form: re-serializing the parse reproduces the bytes.
  EXPECT_EQ(serialize_record(*parsed), line);
}

TEST(TraceRecordIo, ImuAndPoseRoundTrip) {
  TraceRecord imu = ImuRecord{0.02, -9.5};
  auto imu_back = parse_record(serialize_record(imu));
  ASSERT_TRUE(imu_back.has_value());
  EXPECT_DOUBLE_EQ(std::get<ImuRecord>(*imu_back).a, -9.5);

  TraceRecord pose = PoseRecord{3.0, {1.0, 1.0}, 24.0};
  auto pose_back = parse_record(serialize_record(pose));
  ASSERT_TRUE(pose_back.has_value());
  EXPECT_DOUBLE_EQ(std::get<PoseRecord>(*pose_back).v, 24.0);
}

TEST(TraceRecordIo, ObstaclesRoundTrip) {
  std::string line = serialize_record(sample_obstacles());
  auto parsed = parse_record(line);
  ASSERT_TRUE(parsed.has_value());
  const auto& rec = std::get<ObstaclesRecord>(*parsed);
  EXPECT_EQ(rec.sensor, "C");
  ASSERT_EQ(rec.obstacles.size(), 1u);
  EXPECT_EQ(rec.obstacles[0].id, "truck");
  EXPECT_DOUBLE_EQ(rec.obstacles[0].confidence, 1.0);
  EXPECT_DOUBLE_EQ(rec.obstacles[0].footprint.area(), 6.0 * 2.5);
  EXPECT_EQ(serialize_record(*parsed), line);
}

TEST(TraceRecordIo, RecordTime) {
  EXPECT_DOUBLE_EQ(record_time(sample_gps()), 1.5);
  EXPECT_DOUBLE_EQ(record_time(ImuRecord{0.25, 0.0}), 0.25);
  EXPECT_DOUBLE_EQ(record_time(sample_obstacles()), 0.5);
}

TEST(TraceRecordIo, TypeFieldComesFirst) {
  EXPECT_EQ(serialize_record(sample_gps()).rfind("{\"type\":\"gps\"", 0), 0u);
  EXPECT_EQ(serialize_record(sample_obstacles()).rfind("{\"type\":\"obstacles\"", 0),
            0u);
}

TEST(TraceRecordIo, MalformedLinesAreRejected) {
  EXPECT_FALSE(parse_record("not json"));
  EXPECT_FALSE(parse_record("{\"type\":\"sonar\",\"t\":0}"));
  EXPECT_FALSE(parse_record("{\"t\":0.5,\"a\":1.0}"));              // no type
  EXPECT_FALSE(parse_record("{\"type\":\"gps\",\"t\":0.5}"));       // no p/v
  EXPECT_FALSE(parse_record("{\"type\":\"imu\",\"a\":1.0}"));       // no t
  // Two-point "polygon" is degenerate.
  EXPECT_FALSE(parse_record(
      "{\"type\":\"obstacles\",\"sensor\":\"C\",\"t\":0,\"obstacles\":"
      "[{\"id\":\"x\",\"polygon\":[[0,0],[1,1]],\"confidence\":1.0}]}"));
}

TEST(TraceStreamIo, RoundTripAndMalformedCounting) {
  std::vector<TraceRecord> records = {
      sample_gps(), ImuRecord{1.5, 0.1}, PoseRecord{1.5, {2.0, 0.0}, 2.5},
      sample_obstacles()};

  std::ostringstream out;
  write_trace(out, records);
  std::string text = out.str();

  // Inject noise: a blank line and a corrupt line.
  std::string noisy = "\n" + text + "garbage line\n";
  std::istringstream in(noisy);
  std::uint64_t malformed = 0;
  std::vector<TraceRecord> back = read_trace(in, &malformed);

  EXPECT_EQ(malformed, 1u);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    EXPECT_EQ(serialize_record(back[i]), serialize_record(records[i]));
}

TEST(TraceStreamIo, MalformedCounterIsOptional) {
  std::istringstream in("oops\n");
  EXPECT_TRUE(read_trace(in).empty());
}

}  // namespace
}  // namespace persys
