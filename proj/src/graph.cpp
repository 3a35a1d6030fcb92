#include "persys/graph.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <fmt/format.h>

namespace persys {

namespace {

using Kind = ValidationError::Kind;

void check_module_id(const std::string& id) {
  if (id.empty())
    throw ValidationError(Kind::InvalidArgument, "module_id must be non-empty");
  for (char c : id) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#')
      throw ValidationError(Kind::InvalidArgument,
                            fmt::format("module_id '{}' contains whitespace or '#'", id));
  }
}

}  // namespace

FaultSet::FaultSet(std::vector<std::size_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

FaultSet FaultSet::from_mask(std::uint64_t mask) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1) members.push_back(i);
  return FaultSet(std::move(members));
}

bool FaultSet::contains(std::size_t node) const {
  return std::binary_search(members_.begin(), members_.end(), node);
}

std::uint64_t FaultSet::to_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t m : members_) {
    if (m >= 64)
      throw ValidationError(Kind::IndexOutOfRange, "FaultSet::to_mask: member >= 64");
    mask |= std::uint64_t{1} << m;
  }
  return mask;
}

DiagnosticGraph DiagnosticGraph::build(std::vector<NodeLabel> nodes,
                                       std::vector<Edge> edges) {
  for (const NodeLabel& n : nodes) check_module_id(n.module_id);

  {
    std::vector<NodeLabel> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw ValidationError(Kind::DuplicateNode,
                            fmt::format("duplicate node label ({}, {})",
                                        dup->module_id, dup->timestamp));
  }

  const std::size_t n = nodes.size();
  std::sort(edges.begin(), edges.end());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.tester >= n || e.tested >= n)
      throw ValidationError(Kind::DanglingEdge,
                            fmt::format("edge ({}, {}) references a missing node",
                                        e.tester, e.tested));
    if (e.tester == e.tested)
      throw ValidationError(Kind::SelfLoop,
                            fmt::format("self-loop on node {}", e.tester));
    if (k > 0 && edges[k - 1] == e)
      throw ValidationError(Kind::DuplicateEdge,
                            fmt::format("duplicate edge ({}, {})", e.tester, e.tested));
  }

  DiagnosticGraph g;
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  g.out_.assign(n, {});
  g.in_.assign(n, {});
  for (const Edge& e : g.edges_) {
    g.out_[e.tester].push_back(e.tested);
    g.in_[e.tested].push_back(e.tester);
  }
  for (auto& v : g.in_) std::sort(v.begin(), v.end());
  // out_ lists inherit ascending order from the canonical edge sort.
  return g;
}

const NodeLabel& DiagnosticGraph::node(std::size_t index) const {
  if (index >= nodes_.size())
    throw ValidationError(Kind::IndexOutOfRange,
                          fmt::format("node index {} out of range", index));
  return nodes_[index];
}

std::optional<std::size_t> DiagnosticGraph::find_node(std::string_view module_id,
                                                      std::int64_t timestamp) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].module_id == module_id && nodes_[i].timestamp == timestamp)
      return i;
  return std::nullopt;
}

const std::vector<std::size_t>& DiagnosticGraph::testable_set(std::size_t index) const {
  if (index >= nodes_.size())
    throw ValidationError(Kind::IndexOutOfRange,
                          fmt::format("testable_set: node index {} out of range", index));
  return out_[index];
}

const std::vector<std::size_t>& DiagnosticGraph::testers_of(std::size_t index) const {
  if (index >= nodes_.size())
    throw ValidationError(Kind::IndexOutOfRange,
                          fmt::format("testers_of: node index {} out of range", index));
  return in_[index];
}

std::vector<std::size_t> DiagnosticGraph::gamma_of_set(
    const std::vector<std::size_t>& x) const {
  std::vector<std::uint8_t> in_x(nodes_.size(), 0);
  for (std::size_t i : x) {
    if (i >= nodes_.size())
      throw ValidationError(Kind::IndexOutOfRange,
                            fmt::format("gamma_of_set: node index {} out of range", i));
    in_x[i] = 1;
  }
  std::vector<std::uint8_t> hit(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (in_x[i])
      for (std::size_t j : out_[i])
        if (!in_x[j]) hit[j] = 1;
  std::vector<std::size_t> gamma;
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    if (hit[j]) gamma.push_back(j);
  return gamma;
}

std::size_t DiagnosticGraph::in_degree(std::size_t index) const {
  return testers_of(index).size();
}

std::size_t DiagnosticGraph::out_degree(std::size_t index) const {
  return testable_set(index).size();
}

std::size_t DiagnosticGraph::min_in_degree() const {
  if (nodes_.empty())
    throw ValidationError(Kind::EmptyGraph, "min_in_degree of an empty graph");
  std::size_t best = in_[0].size();
  for (const auto& v : in_) best = std::min(best, v.size());
  return best;
}

DiagnosticGraph induced_subgraph(const DiagnosticGraph& graph,
                                 const std::vector<std::size_t>& nodes) {
  std::vector<std::size_t> keep = nodes;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  std::vector<std::optional<std::size_t>> remap(graph.node_count());
  std::vector<NodeLabel> labels;
  labels.reserve(keep.size());
  for (std::size_t new_idx = 0; new_idx < keep.size(); ++new_idx) {
    std::size_t old_idx = keep[new_idx];
    if (old_idx >= graph.node_count())
      throw ValidationError(ValidationError::Kind::IndexOutOfRange,
                            fmt::format("induced_subgraph: node index {} out of range",
                                        old_idx));
    remap[old_idx] = new_idx;
    labels.push_back(graph.node(old_idx));
  }
  std::vector<Edge> edges;
  for (const Edge& e : graph.edges())
    if (remap[e.tester] && remap[e.tested])
      edges.push_back(Edge{*remap[e.tester], *remap[e.tested]});
  return DiagnosticGraph::build(std::move(labels), std::move(edges));
}

Syndrome::Syndrome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::uint8_t b : bits_)
    if (b > 1)
      throw ValidationError(ValidationError::Kind::InvalidArgument,
                            "syndrome bits must be 0 or 1");
}

bool Syndrome::any_failure() const {
  return std::find(bits_.begin(), bits_.end(), std::uint8_t{1}) != bits_.end();
}

Syndrome generate_syndrome(const DiagnosticGraph& graph, const FaultSet& faults,
                           FaultyTesterPolicy policy, std::uint64_t seed,
                           const AdversarialCallback& callback) {
  using Kind = ValidationError::Kind;
  if (!faults.empty() && faults.members().back() >= graph.node_count())
    throw ValidationError(Kind::FaultSetOutOfRange,
                          "fault set references a node outside the graph");
  if (policy == FaultyTesterPolicy::AdversarialCallback && !callback)
    throw ValidationError(Kind::InvalidArgument,
                          "adversarial-callback policy requires a callback");

  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> bits(graph.edge_count(), 0);
  const auto& edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!faults.contains(edges[e].tester)) {
      bits[e] = faults.contains(edges[e].tested) ? 1 : 0;
      continue;
    }
    switch (policy) {
      case FaultyTesterPolicy::RandomUniform:
        bits[e] = static_cast<std::uint8_t>(rng() & 1);
        break;
      case FaultyTesterPolicy::AlwaysPass:
        bits[e] = 0;
        break;
      case FaultyTesterPolicy::AlwaysFail:
        bits[e] = 1;
        break;
      case FaultyTesterPolicy::AdversarialCallback:
        bits[e] = callback(graph, e, faults) ? 1 : 0;
        break;
    }
  }
  return Syndrome(std::move(bits));
}

bool is_consistent(const DiagnosticGraph& graph, const Syndrome& syndrome,
                   const FaultSet& faults) {
  using Kind = ValidationError::Kind;
  if (syndrome.size() != graph.edge_count())
    throw ValidationError(Kind::SyndromeMismatch,
                          fmt::format("syndrome has {} bits but the graph has {} edges",
                                      syndrome.size(), graph.edge_count()));
  if (!faults.empty() && faults.members().back() >= graph.node_count())
    throw ValidationError(Kind::FaultSetOutOfRange,
                          "fault set references a node outside the graph");
  const auto& edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (faults.contains(edges[e].tester)) continue;
    std::uint8_t expected = faults.contains(edges[e].tested) ? 1 : 0;
    if (syndrome[e] != expected) return false;
  }
  return true;
}

std::string serialize_graph(const DiagnosticGraph& graph) {
  std::string out = fmt::format("nodes {}\n", graph.node_count());
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    const NodeLabel& n = graph.node(i);
    out += fmt::format("node {} {} {}\n", i, n.module_id, n.timestamp);
  }
  for (const Edge& e : graph.edges())
    out += fmt::format("edge {} {}\n", e.tester, e.tested);
  return out;
}

namespace {

// Strips a trailing comment and splits the remainder into whitespace tokens.
std::vector<std::string> tokenize_line(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream iss(body);
  std::vector<std::string> tokens;
  std::string tok;
  while (iss >> tok) tokens.push_back(tok);
  return tokens;
}

std::int64_t parse_int(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    std::int64_t value = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return value;
  } catch (const std::exception&) {
    throw ValidationError(ValidationError::Kind::Parse,
                          fmt::format("line {}: expected an integer, got '{}'",
                                      line_no, tok));
  }
}

std::size_t parse_index(const std::string& tok, std::size_t line_no) {
  std::int64_t v = parse_int(tok, line_no);
  if (v < 0)
    throw ValidationError(ValidationError::Kind::Parse,
                          fmt::format("line {}: index must be nonnegative", line_no));
  return static_cast<std::size_t>(v);
}

}  // namespace

DiagnosticGraph parse_graph(std::istream& in) {
  using Kind = ValidationError::Kind;
  std::optional<std::size_t> declared;
  std::vector<std::optional<NodeLabel>> nodes;
  std::vector<Edge> edges;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize_line(line);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0];
    if (kw == "nodes") {
      if (declared || tokens.size() != 2)
        throw ValidationError(Kind::Parse,
                              fmt::format("line {}: malformed nodes header", line_no));
      declared = parse_index(tokens[1], line_no);
      nodes.assign(*declared, std::nullopt);
    } else if (kw == "node") {
      if (!declared)
        throw ValidationError(Kind::Parse,
                              fmt::format("line {}: node before nodes header", line_no));
      if (tokens.size() != 4)
        throw ValidationError(Kind::Parse,
                              fmt::format("line {}: expected 'node <idx> <module_id> "
                                          "<timestamp>'", line_no));
      std::size_t idx = parse_index(tokens[1], line_no);
      if (idx >= *declared)
        throw ValidationError(Kind::Parse,
                              fmt::format("line {}: node index {} exceeds declared count",
                                          line_no, idx));
      if (nodes[idx])
        throw ValidationError(Kind::Parse,
                              fmt::format("line {}: node index {} declared twice",
                                          line_no, idx));
      nodes[idx] = NodeLabel{tokens[2], parse_int(tokens[3], line_no)};
    } else if (kw == "edge") {
      if (tokens.size() != 3)
        throw ValidationError(Kind::Parse,
                              fmt::format("line {}: expected 'edge <tester> <tested>'",
                                          line_no));
      edges.push_back(Edge{parse_index(tokens[1], line_no),
                           parse_index(tokens[2], line_no)});
    } else {
      throw ValidationError(Kind::Parse,
                            fmt::format("line {}: unknown keyword '{}'", line_no, kw));
    }
  }
  if (!declared)
    throw ValidationError(Kind::Parse, "missing 'nodes <N>' header");
  std::vector<NodeLabel> resolved;
  resolved.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i])
      throw ValidationError(Kind::Parse, fmt::format("node {} never declared", i));
    resolved.push_back(std::move(*nodes[i]));
  }
  return DiagnosticGraph::build(std::move(resolved), std::move(edges));
}

DiagnosticGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::string serialize_syndrome(const DiagnosticGraph& graph, const Syndrome& syndrome) {
  if (syndrome.size() != graph.edge_count())
    throw ValidationError(ValidationError::Kind::SyndromeMismatch,
                          "syndrome/graph edge count mismatch");
  std::string out;
  const auto& edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    out += fmt::format("test {} {} {}\n", edges[e].tester, edges[e].tested,
                       int(syndrome[e]));
  return out;
}

Syndrome parse_syndrome(const DiagnosticGraph& graph, std::istream& in) {
  using Kind = ValidationError::Kind;
  std::vector<std::optional<std::uint8_t>> bits(graph.edge_count());
  const auto& edges = graph.edges();

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize_line(line);
    if (tokens.empty()) continue;
    if (tokens[0] != "test" || tokens.size() != 4)
      throw ValidationError(Kind::Parse,
                            fmt::format("line {}: expected 'test <tester> <tested> <0|1>'",
                                        line_no));
    Edge e{parse_index(tokens[1], line_no), parse_index(tokens[2], line_no)};
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e)
      throw ValidationError(Kind::SyndromeMismatch,
                            fmt::format("line {}: edge ({}, {}) is not in the graph",
                                        line_no, e.tester, e.tested));
    std::size_t idx = static_cast<std::size_t>(it - edges.begin());
    std::int64_t bit = parse_int(tokens[3], line_no);
    if (bit != 0 && bit != 1)
      throw ValidationError(Kind::Parse,
                            fmt::format("line {}: outcome must be 0 or 1", line_no));
    if (bits[idx])
      throw ValidationError(Kind::SyndromeMismatch,
                            fmt::format("line {}: duplicate outcome for edge ({}, {})",
                                        line_no, e.tester, e.tested));
    bits[idx] = static_cast<std::uint8_t>(bit);
  }
  std::vector<std::uint8_t> resolved(graph.edge_count());
  for (std::size_t e = 0; e < bits.size(); ++e) {
    if (!bits[e])
      throw ValidationError(Kind::SyndromeMismatch,
                            fmt::format("missing outcome for edge ({}, {})",
                                        edges[e].tester, edges[e].tested));
    resolved[e] = *bits[e];
  }
  return Syndrome(std::move(resolved));
}

Syndrome parse_syndrome(const DiagnosticGraph& graph, const std::string& text) {
  std::istringstream in(text);
  return parse_syndrome(graph, in);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
  auto step = [](std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t state = base;
  std::uint64_t h = step(state);
  state ^= a * 0xff51afd7ed558ccdULL;
  h ^= step(state);
  state ^= b * 0xc4ceb9fe1a85ec53ULL;
  h ^= step(state);
  state ^= c * 0x2545f4914f6cdd1dULL;
  h ^= step(state);
  return h;
}

}  // namespace persys
