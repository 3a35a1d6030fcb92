#pragma once

// Temporal diagnostic graphs: a snapshot pipeline stacked over a window of
// ticks, with lagged test edges between module executions.
//
// A TestTemplate (source, target, lag, kind) realizes the edge
// source@(t − lag) → target@t for every tick t where both endpoints fall
// inside the window.  `lag` is signed: positive lag means an older execution
// of `source` tests a newer execution of `target`; a negative lag points the
// test the other way (a newer execution testing an older one), which is how
// symmetric cross-time comparisons are oriented when the older side could
// not have run the test.  lag 0 with source == target is rejected (self-loop).

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "persys/graph.hpp"

namespace persys {

enum class TestKind {
  InputAdmissibility,
  IoConsistency,
  InputOutput,
  Temporal,
};

std::string to_string(TestKind kind);
std::optional<TestKind> test_kind_from_string(std::string_view text);

struct TestTemplate {
  std::string source_module;
  std::string target_module;
  std::int64_t lag = 0;
  TestKind kind = TestKind::IoConsistency;

  friend auto operator<=>(const TestTemplate&, const TestTemplate&) = default;
};

struct TemporalDiagnosticGraph {
  DiagnosticGraph graph;
  std::int64_t window_begin = 0;
  std::int64_t window_end = 0;                 // inclusive
  std::vector<std::string> modules;            // snapshot module order

  std::size_t slot_count() const {
    return static_cast<std::size_t>(window_end - window_begin + 1);
  }
  // Node index of module `m` (snapshot position) at tick `t`; node order is
  // tick-major: (t − window_begin) * modules.size() + m.
  std::size_t node_at(std::size_t module_pos, std::int64_t tick) const;
  // Indices of all executions at `tick`, ascending.
  std::vector<std::size_t> slice(std::int64_t tick) const;
};

// Stacks `modules` over [window_begin, window_end] and realizes every
// template instance whose endpoints are in-window.  Distinct templates that
// realize the same edge collapse to one edge.  Throws on an empty window,
// an empty module list, duplicate module names, a template naming an unknown
// module, or a lag-0 self-template.
TemporalDiagnosticGraph build_temporal_graph(const std::vector<std::string>& modules,
                                             const std::vector<TestTemplate>& templates,
                                             std::int64_t window_begin,
                                             std::int64_t window_end);

// Template file: one `template <source> <target> <lag> <kind>` per line,
// kind ∈ {input-admissibility, io-consistency, input-output, temporal};
// '#' comments and blank lines allowed.
std::vector<TestTemplate> parse_templates(std::istream& in);
std::vector<TestTemplate> parse_templates(const std::string& text);
std::string serialize_templates(const std::vector<TestTemplate>& templates);

// Composability law (expected true for every input): if `covers` jointly
// cover all nodes of `temporal.graph` and the subgraph induced by each cover
// is κ-diagnosable, then the whole graph is κ-diagnosable.  Returns the
// assertion outcome — vacuously true when some induced subgraph is not
// κ-diagnosable.  Throws if the subsets do not cover every node.
bool check_cover_property(const TemporalDiagnosticGraph& temporal,
                          const std::vector<std::vector<std::size_t>>& covers,
                          std::size_t kappa);

// ---------------------------------------------------------------------------
// Built-in pipelines.
// ---------------------------------------------------------------------------

// Object-detection pipeline: camera C, lidar L, radar R, fusion output F.
// Snapshot tests: R→F, F→L, L→R, R→C.  The two-slot temporalization adds a
// lag +1 mirror of each snapshot test and a lag −1 self-test per module,
// which lifts the window graph from 1-diagnosable to 2-diagnosable.
std::vector<std::string> object_detection_modules();
std::vector<TestTemplate> object_detection_templates();

// Localization pipeline: GPS, IMU, and the fused pose estimate POSE.
// Snapshot tests: IMU→POSE, POSE→GPS, GPS→IMU; plus a lag +1 self-test per
// module.  Window graphs are 1-diagnosable.
std::vector<std::string> localization_modules();
std::vector<TestTemplate> localization_templates();

// ---------------------------------------------------------------------------
// Streaming window assembly.
// ---------------------------------------------------------------------------

template <typename Payload>
struct TemporalGraphInstance {
  TemporalDiagnosticGraph shape;
  std::vector<Payload> payloads;  // by node index
};

// Assembles fixed-length windows from a live stream of per-module payloads.
// The window is the last `window_length` ticks ending at the newest tick
// seen.  Each push that leaves every node slot filled emits an instance
// (refreshed payloads re-emit).  Events older than the current window are
// dropped and counted.  Per-module event ticks are expected nondecreasing.
template <typename Payload>
class StreamAssembler {
 public:
  StreamAssembler(std::vector<std::string> modules,
                  std::vector<TestTemplate> templates, std::size_t window_length)
      : modules_(std::move(modules)), templates_(std::move(templates)),
        window_length_(window_length) {
    if (window_length_ == 0)
      throw ValidationError(ValidationError::Kind::InvalidArgument,
                            "window_length must be positive");
    // Validate module/template wiring once, up front.
    build_temporal_graph(modules_, templates_, 0,
                         static_cast<std::int64_t>(window_length_) - 1);
  }

  std::optional<TemporalGraphInstance<Payload>> push(const std::string& module_id,
                                                     std::int64_t tick,
                                                     Payload payload) {
    std::size_t pos = module_pos(module_id);
    if (!window_end_) {
      window_end_ = tick;
      slots_.assign(window_length_, empty_row());
    } else if (tick > *window_end_) {
      for (std::int64_t t = *window_end_; t < tick; ++t) {
        slots_.pop_front();
        slots_.push_back(empty_row());
      }
      window_end_ = tick;
    } else if (tick <= *window_end_ - static_cast<std::int64_t>(window_length_)) {
      ++stale_dropped_;
      return std::nullopt;
    }
    std::size_t slot = static_cast<std::size_t>(
        tick - (*window_end_ - static_cast<std::int64_t>(window_length_) + 1));
    slots_[slot][pos] = std::move(payload);

    for (const auto& row : slots_)
      for (const auto& cell : row)
        if (!cell) return std::nullopt;

    TemporalGraphInstance<Payload> instance;
    std::int64_t begin = *window_end_ - static_cast<std::int64_t>(window_length_) + 1;
    instance.shape = build_temporal_graph(modules_, templates_, begin, *window_end_);
    instance.payloads.reserve(window_length_ * modules_.size());
    for (const auto& row : slots_)
      for (const auto& cell : row) instance.payloads.push_back(*cell);
    return instance;
  }

  std::uint64_t stale_dropped() const { return stale_dropped_; }
  std::optional<std::int64_t> window_end() const { return window_end_; }

 private:
  std::vector<std::optional<Payload>> empty_row() const {
    return std::vector<std::optional<Payload>>(modules_.size());
  }

  std::size_t module_pos(const std::string& module_id) const {
    for (std::size_t m = 0; m < modules_.size(); ++m)
      if (modules_[m] == module_id) return m;
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "unknown module '" + module_id + "'");
  }

  std::vector<std::string> modules_;
  std::vector<TestTemplate> templates_;
  std::size_t window_length_;
  std::optional<std::int64_t> window_end_;
  std::deque<std::vector<std::optional<Payload>>> slots_;  // oldest first
  std::uint64_t stale_dropped_ = 0;
};

}  // namespace persys
