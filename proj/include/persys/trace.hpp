#pragma once

// Line-delimited JSON sensor traces.
//
// One record per line:
//   {"type":"gps","t":1.0,"p":[x,y],"v":2.5}
//   {"type":"imu","t":1.0,"a":0.0}
//   {"type":"pose","t":1.0,"p":[x,y],"v":2.5}
//   {"type":"obstacles","sensor":"C","t":1.0,
//    "obstacles":[{"id":"truck","polygon":[[x,y],...],"confidence":1.0}]}
//
// serialize_record emits a canonical field order so equal records are
// byte-identical.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "persys/consistency.hpp"

namespace persys {

struct GpsRecord {
  double t = 0.0;
  Vec2 p;
  double v = 0.0;
};

struct ImuRecord {
  double t = 0.0;
  double a = 0.0;
};

struct PoseRecord {
  double t = 0.0;
  Vec2 p;
  double v = 0.0;
};

struct ObstaclesRecord {
  std::string sensor;
  double t = 0.0;
  std::vector<Obstacle> obstacles;
};

using TraceRecord = std::variant<GpsRecord, ImuRecord, PoseRecord, ObstaclesRecord>;

double record_time(const TraceRecord& record);

std::string serialize_record(const TraceRecord& record);

// One line -> record; nullopt for malformed lines (bad JSON, unknown type,
// missing fields, degenerate polygons) so stream consumers can count skips.
std::optional<TraceRecord> parse_record(const std::string& line);

// Whole stream; blank lines are ignored, malformed lines are skipped and
// counted into *malformed when provided.
std::vector<TraceRecord> read_trace(std::istream& in, std::uint64_t* malformed = nullptr);

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records);

}  // namespace persys
