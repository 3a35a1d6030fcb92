#include "persys/trace.hpp"

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace persys {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json polygon_json(const ConvexPolygon& polygon) {
  ordered_json verts = ordered_json::array();
  for (Vec2 v : polygon.vertices()) verts.push_back({v.x, v.y});
  return verts;
}

}  // namespace

double record_time(const TraceRecord& record) {
  return std::visit([](const auto& r) { return r.t; }, record);
}

std::string serialize_record(const TraceRecord& record) {
  ordered_json j;
  if (const auto* gps = std::get_if<GpsRecord>(&record)) {
    j["type"] = "gps";
    j["t"] = gps->t;
    j["p"] = {gps->p.x, gps->p.y};
    j["v"] = gps->v;
  } else if (const auto* imu = std::get_if<ImuRecord>(&record)) {
    j["type"] = "imu";
    j["t"] = imu->t;
    j["a"] = imu->a;
  } else if (const auto* pose = std::get_if<PoseRecord>(&record)) {
    j["type"] = "pose";
    j["t"] = pose->t;
    j["p"] = {pose->p.x, pose->p.y};
    j["v"] = pose->v;
  } else {
    const auto& obs = std::get<ObstaclesRecord>(record);
    j["type"] = "obstacles";
    j["sensor"] = obs.sensor;
    j["t"] = obs.t;
    ordered_json list = ordered_json::array();
    for (const Obstacle& o : obs.obstacles) {
      ordered_json entry;
      entry["id"] = o.id;
      entry["polygon"] = polygon_json(o.footprint);
      entry["confidence"] = o.confidence;
      list.push_back(std::move(entry));
    }
    j["obstacles"] = std::move(list);
  }
  return j.dump();
}

std::optional<TraceRecord> parse_record(const std::string& line) {
  ordered_json j = ordered_json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    const std::string type = j.at("type").get<std::string>();
    const double t = j.at("t").get<double>();
    if (type == "gps" || type == "pose") {
      const auto& p = j.at("p");
      if (!p.is_array() || p.size() != 2) return std::nullopt;
      Vec2 pos{p[0].get<double>(), p[1].get<double>()};
      double v = j.at("v").get<double>();
      if (type == "gps") return TraceRecord(GpsRecord{t, pos, v});
      return TraceRecord(PoseRecord{t, pos, v});
    }
    if (type == "imu") return TraceRecord(ImuRecord{t, j.at("a").get<double>()});
    if (type == "obstacles") {
      ObstaclesRecord rec;
      rec.sensor = j.at("sensor").get<std::string>();
      rec.t = t;
      for (const auto& entry : j.at("obstacles")) {
        std::vector<Vec2> verts;
        for (const auto& v : entry.at("polygon")) {
          if (!v.is_array() || v.size() != 2) return std::nullopt;
          verts.push_back(Vec2{v[0].get<double>(), v[1].get<double>()});
        }
        rec.obstacles.push_back(Obstacle{
            entry.at("id").get<std::string>(), ConvexPolygon(std::move(verts)),
            entry.value("confidence", 1.0)});
      }
      return TraceRecord(std::move(rec));
    }
    return std::nullopt;
  } catch (const ordered_json::exception&) {
    return std::nullopt;
  } catch (const ValidationError&) {
    return std::nullopt;  // e.g. degenerate polygon
  }
}

std::vector<TraceRecord> read_trace(std::istream& in, std::uint64_t* malformed) {
  std::vector<TraceRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (auto rec = parse_record(line))
      records.push_back(std::move(*rec));
    else if (malformed)
      ++*malformed;
  }
  return records;
}

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records) {
  for (const TraceRecord& rec : records) out << serialize_record(rec) << '\n';
}

}  // namespace persys
