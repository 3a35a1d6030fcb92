#include "persys/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "persys/diagnosability.hpp"

namespace persys {

namespace {

using Kind = ValidationError::Kind;
using ordered_json = nlohmann::ordered_json;

std::vector<std::string> pipeline_modules(PipelineKind pipeline) {
  return pipeline == PipelineKind::Localization ? localization_modules()
                                                : object_detection_modules();
}

std::vector<TestTemplate> pipeline_templates(PipelineKind pipeline) {
  return pipeline == PipelineKind::Localization ? localization_templates()
                                                : object_detection_templates();
}

ordered_json label_json(const NodeLabel& label) {
  return ordered_json::array({label.module_id, label.timestamp});
}

ordered_json labels_json(const std::vector<NodeLabel>& labels) {
  ordered_json arr = ordered_json::array();
  for (const NodeLabel& label : labels) arr.push_back(label_json(label));
  return arr;
}

std::string status_string(IdentificationStatus status) {
  switch (status) {
    case IdentificationStatus::Unique: return "unique";
    case IdentificationStatus::Ambiguous: return "ambiguous";
    case IdentificationStatus::Infeasible: return "infeasible";
  }
  throw ValidationError(Kind::InvalidArgument, "unknown IdentificationStatus");
}

}  // namespace

MonitorConfig default_localization_config() {
  MonitorConfig config;
  config.pipeline = PipelineKind::Localization;
  config.tick_period = 0.1;
  config.window_length = 2;
  return config;
}

MonitorConfig apply_config(MonitorConfig base, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream iss(body);
    std::string key;
    if (!(iss >> key)) continue;
    std::string value;
    if (!(iss >> value))
      throw ValidationError(Kind::Parse,
                            fmt::format("config line {}: key '{}' has no value",
                                        line_no, key));
    std::string extra;
    if (iss >> extra)
      throw ValidationError(Kind::Parse,
                            fmt::format("config line {}: trailing tokens", line_no));
    try {
      if (key == "pipeline") {
        if (value == "localization") base.pipeline = PipelineKind::Localization;
        else if (value == "object-detection") base.pipeline = PipelineKind::ObjectDetection;
        else throw std::invalid_argument(value);
      } else if (key == "period") {
        base.tick_period = std::stod(value);
      } else if (key == "window") {
        base.window_length = static_cast<std::size_t>(std::stoul(value));
      } else if (key == "kappa") {
        base.kappa = static_cast<std::size_t>(std::stoul(value));
      } else if (key == "tau_p") {
        base.limits.tau_p = std::stod(value);
      } else if (key == "tau_v") {
        base.limits.tau_v = std::stod(value);
      } else if (key == "v_hat") {
        base.limits.v_hat = std::stod(value);
      } else if (key == "a_hat") {
        base.limits.a_hat = std::stod(value);
      } else if (key == "j_hat") {
        base.limits.j_hat = std::stod(value);
      } else if (key == "pose_gps_gate") {
        base.pose_gps_gate = std::stod(value);
      } else if (key == "dist_threshold") {
        base.match.dist_threshold = std::stod(value);
      } else if (key == "overlap_mode") {
        if (value == "centroid") base.match.overlap_mode = OverlapMode::CentroidDistance;
        else if (value == "area") base.match.overlap_mode = OverlapMode::AreaOverlap;
        else throw std::invalid_argument(value);
      } else if (key == "size_adaptive") {
        if (value == "0" || value == "false") base.match.size_adaptive = false;
        else if (value == "1" || value == "true") base.match.size_adaptive = true;
        else throw std::invalid_argument(value);
      } else {
        throw ValidationError(Kind::Parse,
                              fmt::format("config line {}: unknown key '{}'",
                                          line_no, key));
      }
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw ValidationError(Kind::Parse,
                            fmt::format("config line {}: bad value '{}' for key '{}'",
                                        line_no, value, key));
    }
  }
  if (base.tick_period <= 0.0)
    throw ValidationError(Kind::InvalidArgument, "period must be positive");
  if (base.window_length == 0)
    throw ValidationError(Kind::InvalidArgument, "window must be positive");
  return base;
}

MonitorConfig apply_config(MonitorConfig base, const std::string& text) {
  std::istringstream in(text);
  return apply_config(std::move(base), in);
}

std::string serialize_report(const FaultReport& report, bool include_timing) {
  ordered_json j;
  j["window"] = {report.window_begin, report.window_end};
  j["detected"] = report.detected;
  j["severity"] = to_string(report.severity);

  ordered_json ident;
  ident["status"] = status_string(report.identification.status);
  ident["faults"] = labels_json(report.fault_labels);
  ordered_json candidates = ordered_json::array();
  for (const auto& candidate : report.candidate_labels)
    candidates.push_back(labels_json(candidate));
  ident["candidates"] = std::move(candidates);
  ident["candidates_total"] = report.identification.candidates_total;
  ident["elapsed_us"] =
      include_timing ? report.identification.elapsed.count() : 0;
  j["identification"] = std::move(ident);

  ordered_json edges = ordered_json::array();
  for (const EdgeFinding& finding : report.failing_edges) {
    ordered_json e;
    e["tester"] = label_json(finding.tester);
    e["tested"] = label_json(finding.tested);
    e["outcome"] = finding.outcome;
    e["severity"] = to_string(finding.severity);
    edges.push_back(std::move(e));
  }
  j["failing_edges"] = std::move(edges);
  return j.dump();
}

Monitor::Monitor(MonitorConfig config)
    : config_(std::move(config)),
      modules_(pipeline_modules(config_.pipeline)),
      assembler_(modules_, pipeline_templates(config_.pipeline),
                 config_.window_length) {
  if (config_.tick_period <= 0.0)
    throw ValidationError(Kind::InvalidArgument, "tick_period must be positive");
  if (config_.pipeline == PipelineKind::ObjectDetection) {
    if (!config_.lanes)
      throw ValidationError(Kind::InvalidArgument,
                            "object-detection monitor needs a LaneMap");
    if (!lane_map_valid(*config_.lanes))
      throw ValidationError(Kind::InvalidArgument,
                            "current_lane is not inside the drivable map");
    for (const std::string& m : modules_)
      if (config_.fovs.find(m) == config_.fovs.end())
        throw ValidationError(Kind::InvalidArgument,
                              fmt::format("missing field of view for sensor '{}'", m));
  }
}

std::int64_t Monitor::tick_of(double t) const {
  return static_cast<std::int64_t>(std::floor(t / config_.tick_period + 1e-9));
}

std::vector<FaultReport> Monitor::consume(const TraceRecord& record) {
  if (config_.pipeline == PipelineKind::Localization) {
    if (const auto* gps = std::get_if<GpsRecord>(&record))
      return feed("GPS", tick_of(gps->t), Payload(*gps));
    if (const auto* pose = std::get_if<PoseRecord>(&record))
      return feed("POSE", tick_of(pose->t), Payload(*pose));
    if (const auto* imu = std::get_if<ImuRecord>(&record)) {
      std::int64_t tick = tick_of(imu->t);
      auto& accum = imu_accum_[tick];
      accum.push_back(ImuSample{imu->a, imu->t});
      // Drop accumulators that have fallen behind the reachable window.
      while (imu_accum_.size() > config_.window_length + 4)
        imu_accum_.erase(imu_accum_.begin());
      return feed("IMU", tick, Payload(ImuSlot{accum}));
    }
    ++ignored_;
    return {};
  }
  if (const auto* obs = std::get_if<ObstaclesRecord>(&record)) {
    auto pos = std::find(modules_.begin(), modules_.end(), obs->sensor);
    if (pos == modules_.end()) {
      ++ignored_;
      return {};
    }
    return feed(obs->sensor, tick_of(obs->t), Payload(*obs));
  }
  ++ignored_;
  return {};
}

std::vector<FaultReport> Monitor::feed(const std::string& module_id,
                                       std::int64_t tick, Payload payload) {
  std::vector<FaultReport> reports;
  history_[module_id][tick] = payload;
  // Prune history beyond what boundary tests can reach.
  auto& hist = history_[module_id];
  while (!hist.empty() &&
         hist.begin()->first + static_cast<std::int64_t>(config_.window_length) + 4 <
             tick)
    hist.erase(hist.begin());

  auto emitted = assembler_.push(module_id, tick, std::move(payload));
  if (emitted) {
    if (pending_ && pending_->shape.window_end < emitted->shape.window_end)
      reports.push_back(evaluate(*pending_));
    pending_ = std::move(emitted);
  }
  return reports;
}

std::optional<FaultReport> Monitor::flush() {
  if (!pending_) return std::nullopt;
  FaultReport report = evaluate(*pending_);
  pending_.reset();
  return report;
}

std::vector<FaultReport> Monitor::run(const std::vector<TraceRecord>& trace) {
  std::vector<FaultReport> reports;
  for (const TraceRecord& record : trace) {
    auto batch = consume(record);
    reports.insert(reports.end(), std::make_move_iterator(batch.begin()),
                   std::make_move_iterator(batch.end()));
  }
  if (auto last = flush()) reports.push_back(std::move(*last));
  return reports;
}

const Monitor::Payload* Monitor::history(const std::string& module_id,
                                         std::int64_t tick) const {
  auto mod = history_.find(module_id);
  if (mod == history_.end()) return nullptr;
  auto it = mod->second.find(tick);
  return it == mod->second.end() ? nullptr : &it->second;
}

FaultReport Monitor::evaluate(const TemporalGraphInstance<Payload>& instance) {
  const DiagnosticGraph& graph = instance.shape.graph;

  FaultReport report;
  report.window_begin = instance.shape.window_begin;
  report.window_end = instance.shape.window_end;

  std::vector<std::uint8_t> bits(graph.edge_count(), 0);
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    Severity severity = Severity::None;
    bits[e] = evaluate_edge(instance, e, severity);
    if (bits[e]) {
      const Edge& edge = graph.edges()[e];
      report.failing_edges.push_back(EdgeFinding{graph.node(edge.tester),
                                                 graph.node(edge.tested), 1, severity});
      report.severity = std::max(report.severity, severity);
    }
  }
  Syndrome syndrome{std::move(bits)};
  report.detected = detect(syndrome);

  if (!kappa_cache_)
    kappa_cache_ = config_.kappa ? *config_.kappa : max_diagnosability(graph).kappa;
  report.identification = identify_faults(graph, syndrome, *kappa_cache_);

  auto resolve = [&](const FaultSet& fs) {
    std::vector<NodeLabel> labels;
    labels.reserve(fs.size());
    for (std::size_t idx : fs.members()) labels.push_back(graph.node(idx));
    return labels;
  };
  report.fault_labels = resolve(report.identification.fault_set);
  for (const FaultSet& candidate : report.identification.candidates)
    report.candidate_labels.push_back(resolve(candidate));
  return report;
}

std::uint8_t Monitor::evaluate_edge(const TemporalGraphInstance<Payload>& instance,
                                    std::size_t edge_index, Severity& severity) {
  const DiagnosticGraph& graph = instance.shape.graph;
  const Edge& edge = graph.edges()[edge_index];
  const NodeLabel& tester = graph.node(edge.tester);
  const NodeLabel& tested = graph.node(edge.tested);
  const Payload& tester_payload = instance.payloads[edge.tester];
  const Payload& tested_payload = instance.payloads[edge.tested];

  if (config_.pipeline == PipelineKind::ObjectDetection) {
    const auto& a = std::get<ObstaclesRecord>(tester_payload);
    const auto& b = std::get<ObstaclesRecord>(tested_payload);
    ObjectTestResult result = object_detection_test(
        a.obstacles, b.obstacles, config_.fovs.at(tester.module_id),
        config_.fovs.at(tested.module_id), *config_.lanes, config_.match);
    severity = result.severity;
    return result.bit;
  }

  const KinematicLimits& limits = config_.limits;
  const std::string& src = tester.module_id;
  const std::string& dst = tested.module_id;

  // IMU samples relevant to the interval (prev_tick, tick]: the accumulated
  // slots of both ticks, filtered to the sample times of the endpoints.
  auto imu_between = [&](double t0, double t1, std::int64_t tick) {
    std::vector<ImuSample> samples;
    for (std::int64_t k = tick - 1; k <= tick; ++k)
      if (const Payload* p = history("IMU", k))
        for (const ImuSample& s : std::get<ImuSlot>(*p).samples)
          if (s.t >= t0 - 1e-12 && s.t <= t1 + 1e-12) samples.push_back(s);
    std::sort(samples.begin(), samples.end(),
              [](const ImuSample& a, const ImuSample& b) { return a.t < b.t; });
    return samples;
  };

  if (src == "POSE" && dst == "GPS") {
    const auto& pose = std::get<PoseRecord>(tester_payload);
    const auto& gps = std::get<GpsRecord>(tested_payload);
    return pose_gps_test(PoseSample{pose.p, pose.v, pose.t},
                         GpsSample{gps.p, gps.v, gps.t}, limits,
                         config_.pose_gps_gate);
  }

  if (src == "IMU" && dst == "POSE") {
    const auto& cur = std::get<PoseRecord>(tested_payload);
    const Payload* prev = history("POSE", tested.timestamp - 1);
    if (!prev) return 0;  // not enough history yet
    const auto& prv = std::get<PoseRecord>(*prev);
    auto samples = imu_between(prv.t, cur.t, tested.timestamp);
    if (samples.empty()) return 0;
    return imu_pose_test(PoseSample{prv.p, prv.v, prv.t},
                         PoseSample{cur.p, cur.v, cur.t}, samples, limits);
  }

  if (src == "GPS" && dst == "IMU") {
    const Payload* cur = history("GPS", tested.timestamp);
    const Payload* prev = history("GPS", tested.timestamp - 1);
    if (!cur || !prev) return 0;
    const auto& c = std::get<GpsRecord>(*cur);
    const auto& p = std::get<GpsRecord>(*prev);
    auto samples = imu_between(p.t, c.t, tested.timestamp);
    if (samples.empty()) return 0;
    return gps_imu_test(GpsSample{p.p, p.v, p.t}, GpsSample{c.p, c.v, c.t}, samples,
                        limits);
  }

  if (src == "GPS" && dst == "GPS") {
    const auto& first = std::get<GpsRecord>(tester_payload);
    const auto& second = std::get<GpsRecord>(tested_payload);
    return gps_gps_test(GpsSample{first.p, first.v, first.t},
                        GpsSample{second.p, second.v, second.t}, limits);
  }

  if (src == "POSE" && dst == "POSE") {
    const auto& first = std::get<PoseRecord>(tester_payload);
    const auto& second = std::get<PoseRecord>(tested_payload);
    return pose_pose_test(PoseSample{first.p, first.v, first.t},
                          PoseSample{second.p, second.v, second.t}, limits);
  }

  if (src == "IMU" && dst == "IMU") {
    const auto& first = std::get<ImuSlot>(tester_payload).samples;
    const auto& second = std::get<ImuSlot>(tested_payload).samples;
    if (first.empty() || second.empty()) return 0;
    const ImuSample& a = first.back();
    const ImuSample& b = second.front();
    if (b.t == a.t) return 0;
    return imu_imu_test(a, b, limits);
  }

  throw ValidationError(Kind::InvalidArgument,
                        fmt::format("no consistency test for edge {}→{}", src, dst));
}

}  // namespace persys
