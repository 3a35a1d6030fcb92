#include "persys/temporal.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "persys/diagnosability.hpp"

namespace persys {

namespace {
using Kind = ValidationError::Kind;
}

std::string to_string(TestKind kind) {
  switch (kind) {
    case TestKind::InputAdmissibility: return "input-admissibility";
    case TestKind::IoConsistency: return "io-consistency";
    case TestKind::InputOutput: return "input-output";
    case TestKind::Temporal: return "temporal";
  }
  throw ValidationError(Kind::InvalidArgument, "unknown TestKind value");
}

std::optional<TestKind> test_kind_from_string(std::string_view text) {
  if (text == "input-admissibility") return TestKind::InputAdmissibility;
  if (text == "io-consistency") return TestKind::IoConsistency;
  if (text == "input-output") return TestKind::InputOutput;
  if (text == "temporal") return TestKind::Temporal;
  return std::nullopt;
}

std::size_t TemporalDiagnosticGraph::node_at(std::size_t module_pos,
                                             std::int64_t tick) const {
  if (module_pos >= modules.size() || tick < window_begin || tick > window_end)
    throw ValidationError(Kind::IndexOutOfRange,
                          fmt::format("node_at: (module {}, tick {}) outside the window",
                                      module_pos, tick));
  return static_cast<std::size_t>(tick - window_begin) * modules.size() + module_pos;
}

std::vector<std::size_t> TemporalDiagnosticGraph::slice(std::int64_t tick) const {
  std::vector<std::size_t> nodes;
  nodes.reserve(modules.size());
  for (std::size_t m = 0; m < modules.size(); ++m) nodes.push_back(node_at(m, tick));
  return nodes;
}

TemporalDiagnosticGraph build_temporal_graph(const std::vector<std::string>& modules,
                                             const std::vector<TestTemplate>& templates,
                                             std::int64_t window_begin,
                                             std::int64_t window_end) {
  if (modules.empty())
    throw ValidationError(Kind::InvalidArgument, "module list is empty");
  if (window_begin > window_end)
    throw ValidationError(Kind::InvalidArgument,
                          fmt::format("empty window [{}, {}]", window_begin, window_end));
  {
    std::vector<std::string> sorted = modules;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError(Kind::DuplicateNode, "duplicate module in snapshot");
  }

  auto module_pos = [&](const std::string& id) -> std::size_t {
    auto it = std::find(modules.begin(), modules.end(), id);
    if (it == modules.end())
      throw ValidationError(Kind::InvalidArgument,
                            fmt::format("template references unknown module '{}'", id));
    return static_cast<std::size_t>(it - modules.begin());
  };

  TemporalDiagnosticGraph out;
  out.window_begin = window_begin;
  out.window_end = window_end;
  out.modules = modules;

  const std::size_t m = modules.size();
  std::vector<NodeLabel> nodes;
  nodes.reserve(static_cast<std::size_t>(window_end - window_begin + 1) * m);
  for (std::int64_t t = window_begin; t <= window_end; ++t)
    for (const std::string& id : modules) nodes.push_back(NodeLabel{id, t});

  std::set<Edge> edges;
  for (const TestTemplate& tpl : templates) {
    std::size_t src = module_pos(tpl.source_module);
    std::size_t tgt = module_pos(tpl.target_module);
    if (tpl.lag == 0 && src == tgt)
      throw ValidationError(Kind::SelfLoop,
                            fmt::format("lag-0 self-template on module '{}'",
                                        tpl.source_module));
    for (std::int64_t t = window_begin; t <= window_end; ++t) {
      std::int64_t ts = t - tpl.lag;
      if (ts < window_begin || ts > window_end) continue;
      std::size_t tester = static_cast<std::size_t>(ts - window_begin) * m + src;
      std::size_t tested = static_cast<std::size_t>(t - window_begin) * m + tgt;
      edges.insert(Edge{tester, tested});
    }
  }

  out.graph = DiagnosticGraph::build(
      std::move(nodes), std::vector<Edge>(edges.begin(), edges.end()));
  return out;
}

std::vector<TestTemplate> parse_templates(std::istream& in) {
  std::vector<TestTemplate> templates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream iss(body);
    std::string kw;
    if (!(iss >> kw)) continue;
    if (kw != "template")
      throw ValidationError(Kind::Parse,
                            fmt::format("line {}: unknown keyword '{}'", line_no, kw));
    TestTemplate tpl;
    std::string kind;
    if (!(iss >> tpl.source_module >> tpl.target_module >> tpl.lag >> kind))
      throw ValidationError(Kind::Parse,
                            fmt::format("line {}: expected 'template <source> <target> "
                                        "<lag> <kind>'", line_no));
    std::string extra;
    if (iss >> extra)
      throw ValidationError(Kind::Parse,
                            fmt::format("line {}: trailing tokens", line_no));
    auto parsed = test_kind_from_string(kind);
    if (!parsed)
      throw ValidationError(Kind::Parse,
                            fmt::format("line {}: unknown test kind '{}'", line_no, kind));
    tpl.kind = *parsed;
    templates.push_back(std::move(tpl));
  }
  return templates;
}

std::vector<TestTemplate> parse_templates(const std::string& text) {
  std::istringstream in(text);
  return parse_templates(in);
}

std::string serialize_templates(const std::vector<TestTemplate>& templates) {
  std::string out;
  for (const TestTemplate& tpl : templates)
    out += fmt::format("template {} {} {} {}\n", tpl.source_module, tpl.target_module,
                       tpl.lag, to_string(tpl.kind));
  return out;
}

bool check_cover_property(const TemporalDiagnosticGraph& temporal,
                          const std::vector<std::vector<std::size_t>>& covers,
                          std::size_t kappa) {
  const DiagnosticGraph& graph = temporal.graph;
  std::vector<std::uint8_t> covered(graph.node_count(), 0);
  for (const auto& subset : covers)
    for (std::size_t idx : subset) {
      if (idx >= graph.node_count())
        throw ValidationError(Kind::IndexOutOfRange,
                              fmt::format("cover references node {} out of range", idx));
      covered[idx] = 1;
    }
  if (std::find(covered.begin(), covered.end(), std::uint8_t{0}) != covered.end())
    throw ValidationError(Kind::NonCoveringSubsets,
                          "cover subsets do not cover every node");

  for (const auto& subset : covers)
    if (!is_k_diagnosable(induced_subgraph(graph, subset), kappa))
      return true;  // premise unmet: vacuously true
  return is_k_diagnosable(graph, kappa).diagnosable;
}

std::vector<std::string> object_detection_modules() { return {"C", "L", "R", "F"}; }

std::vector<TestTemplate> object_detection_templates() {
  std::vector<TestTemplate> templates;
  const std::pair<const char*, const char*> snapshot[] = {
      {"R", "F"}, {"F", "L"}, {"L", "R"}, {"R", "C"}};
  for (auto [src, tgt] : snapshot) {
    templates.push_back(TestTemplate{src, tgt, 0, TestKind::IoConsistency});
    templates.push_back(TestTemplate{src, tgt, 1, TestKind::Temporal});
  }
  for (const char* id : {"C", "L", "R", "F"})
    templates.push_back(TestTemplate{id, id, -1, TestKind::Temporal});
  return templates;
}

std::vector<std::string> localization_modules() { return {"GPS", "IMU", "POSE"}; }

std::vector<TestTemplate> localization_templates() {
  return {
      TestTemplate{"IMU", "POSE", 0, TestKind::InputOutput},
      TestTemplate{"POSE", "GPS", 0, TestKind::IoConsistency},
      TestTemplate{"GPS", "IMU", 0, TestKind::InputAdmissibility},
      TestTemplate{"GPS", "GPS", 1, TestKind::Temporal},
      TestTemplate{"IMU", "IMU", 1, TestKind::Temporal},
      TestTemplate{"POSE", "POSE", 1, TestKind::Temporal},
  };
}

}  // namespace persys
