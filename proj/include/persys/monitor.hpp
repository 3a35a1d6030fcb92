#pragma once

// Online monitor: buckets a sensor trace into ticks, assembles sliding
// windows, evaluates the pipeline's consistency tests into a syndrome, and
// decodes the syndrome into a fault report per window position.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "persys/consistency.hpp"
#include "persys/identification.hpp"
#include "persys/temporal.hpp"
#include "persys/trace.hpp"

namespace persys {

enum class PipelineKind { Localization, ObjectDetection };

struct MonitorConfig {
  PipelineKind pipeline = PipelineKind::Localization;
  double tick_period = 0.1;      // seconds per tick
  std::size_t window_length = 2; // ticks per diagnostic window
  // Fault-hypothesis bound handed to identify_faults; defaults to κ of the
  // window graph.  Raise it to reason about more simultaneous faults than
  // the graph can uniquely pin down (status turns Ambiguous instead of
  // Infeasible when the bound is too small).
  std::optional<std::size_t> kappa;
  KinematicLimits limits;
  double pose_gps_gate = 1.0;    // POSE↔GPS position gate [m]
  MatchConfig match;
  std::optional<LaneMap> lanes;              // object detection only
  std::map<std::string, FieldOfView> fovs;   // object detection only
};

MonitorConfig default_localization_config();

// Applies `key value` overrides to a config.  Recognized keys: pipeline,
// period, window, kappa, tau_p, tau_v, v_hat, a_hat, j_hat, pose_gps_gate,
// dist_threshold, overlap_mode, size_adaptive.  '#' comments allowed.
MonitorConfig apply_config(MonitorConfig base, std::istream& in);
MonitorConfig apply_config(MonitorConfig base, const std::string& text);

struct EdgeFinding {
  NodeLabel tester;
  NodeLabel tested;
  std::uint8_t outcome = 0;
  Severity severity = Severity::None;
};

struct FaultReport {
  std::int64_t window_begin = 0;
  std::int64_t window_end = 0;
  bool detected = false;
  Severity severity = Severity::None;       // max over failing edges
  IdentificationResult identification;      // over window-graph node indices
  // identification.fault_set / .candidates resolved to node labels.
  std::vector<NodeLabel> fault_labels;
  std::vector<std::vector<NodeLabel>> candidate_labels;
  std::vector<EdgeFinding> failing_edges;   // outcome-1 edges only
};

// One line of JSON; include_timing=false zeroes elapsed_us so repeated runs
// serialize identically.
std::string serialize_report(const FaultReport& report, bool include_timing = true);

class Monitor {
 public:
  explicit Monitor(MonitorConfig config);

  // Feeds one record.  Returns the reports of any window positions this
  // record finalized (a window finalizes when a newer tick starts).
  std::vector<FaultReport> consume(const TraceRecord& record);

  // Evaluates and returns the still-open window, if any.
  std::optional<FaultReport> flush();

  // consume() over the whole trace, then flush().
  std::vector<FaultReport> run(const std::vector<TraceRecord>& trace);

  std::uint64_t stale_dropped() const { return assembler_.stale_dropped(); }
  std::uint64_t ignored_records() const { return ignored_; }
  const MonitorConfig& config() const { return config_; }

 private:
  struct ImuSlot {
    std::vector<ImuSample> samples;
  };
  using Payload = std::variant<GpsRecord, PoseRecord, ImuSlot, ObstaclesRecord>;

  std::int64_t tick_of(double t) const;
  std::optional<FaultReport> take_pending();
  std::vector<FaultReport> feed(const std::string& module_id, std::int64_t tick,
                                Payload payload);
  FaultReport evaluate(const TemporalGraphInstance<Payload>& instance);
  std::uint8_t evaluate_edge(const TemporalGraphInstance<Payload>& instance,
                             std::size_t edge_index, Severity& severity);
  const Payload* history(const std::string& module_id, std::int64_t tick) const;

  MonitorConfig config_;
  std::vector<std::string> modules_;
  StreamAssembler<Payload> assembler_;
  std::optional<TemporalGraphInstance<Payload>> pending_;
  std::map<std::string, std::map<std::int64_t, Payload>> history_;
  std::map<std::int64_t, std::vector<ImuSample>> imu_accum_;
  std::optional<std::size_t> kappa_cache_;
  std::uint64_t ignored_ = 0;
};

}  // namespace persys
