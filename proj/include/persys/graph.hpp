#pragma once

// Diagnostic graphs for system-level fault diagnosis.
//
// A diagnostic graph D = (U, E) is a directed graph whose nodes are the
// monitored modules (or module executions) and whose edge (i, j) means
// "module i runs a consistency test on module j".  A syndrome assigns each
// edge the observed test outcome: 0 = pass, 1 = fail.  Fault-free testers
// report truthfully (outcome = "tested module is faulty"); faulty testers
// may report anything.

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace persys {

// Identity of a module execution.  Instantaneous graphs use timestamp 0;
// temporal stacking labels each snapshot copy with its tick so node labels
// stay stable across windows.
struct NodeLabel {
  std::string module_id;
  std::int64_t timestamp = 0;

  friend auto operator<=>(const NodeLabel&, const NodeLabel&) = default;
};

// Directed test edge by node index: `tester` runs a test on `tested`.
struct Edge {
  std::size_t tester = 0;
  std::size_t tested = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Structured error for every contract violation in this library.
class ValidationError : public std::runtime_error {
 public:
  enum class Kind {
    DuplicateNode,
    DuplicateEdge,
    DanglingEdge,
    SelfLoop,
    EmptyGraph,
    IndexOutOfRange,
    FaultSetOutOfRange,
    SyndromeMismatch,
    SizeGuard,
    InvalidArgument,
    NonCoveringSubsets,
    DegenerateGeometry,
    RetryBudgetExhausted,
    Parse,
  };

  ValidationError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A set of node indices (candidate or actual fault set).  Stored sorted and
// deduplicated so comparisons and set algebra are canonical.
class FaultSet {
 public:
  FaultSet() = default;
  explicit FaultSet(std::vector<std::size_t> members);

  static FaultSet from_mask(std::uint64_t mask);

  const std::vector<std::size_t>& members() const { return members_; }
  bool contains(std::size_t node) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::uint64_t to_mask() const;  // requires max member < 64

  friend auto operator<=>(const FaultSet&, const FaultSet&) = default;

 private:
  std::vector<std::size_t> members_;
};

// Immutable diagnostic graph.  Edges are kept in canonical (tester, tested)
// lexicographic order; syndromes index into that order.
class DiagnosticGraph {
 public:
  DiagnosticGraph() = default;

  // Validates and canonicalizes.  Throws ValidationError on duplicate node
  // labels, duplicate edges, self-loops, or edge endpoints out of range.
  static DiagnosticGraph build(std::vector<NodeLabel> nodes,
                               std::vector<Edge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<NodeLabel>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const NodeLabel& node(std::size_t index) const;

  std::optional<std::size_t> find_node(std::string_view module_id,
                                       std::int64_t timestamp) const;

  // Γ(i): indices this node tests, ascending.
  const std::vector<std::size_t>& testable_set(std::size_t index) const;
  // Testers of `index`, ascending.
  const std::vector<std::size_t>& testers_of(std::size_t index) const;

  // Γ(X) = (∪_{i∈X} Γ(i)) \ X, ascending.  Indices must be in range.
  std::vector<std::size_t> gamma_of_set(const std::vector<std::size_t>& x) const;

  std::size_t in_degree(std::size_t index) const;
  std::size_t out_degree(std::size_t index) const;
  // δ_in(D); throws ValidationError{EmptyGraph} on an empty graph.
  std::size_t min_in_degree() const;

  friend bool operator==(const DiagnosticGraph&, const DiagnosticGraph&) = default;

 private:
  std::vector<NodeLabel> nodes_;
  std::vector<Edge> edges_;                       // canonical order
  std::vector<std::vector<std::size_t>> out_;     // out_[i] sorted
  std::vector<std::vector<std::size_t>> in_;      // in_[j] sorted
};

// Subgraph induced by `nodes` (indices into `graph`, need not be sorted).
// Kept node order follows ascending original index; labels are preserved.
DiagnosticGraph induced_subgraph(const DiagnosticGraph& graph,
                                 const std::vector<std::size_t>& nodes);

// One test outcome per edge, aligned with DiagnosticGraph::edges() order.
class Syndrome {
 public:
  Syndrome() = default;
  explicit Syndrome(std::vector<std::uint8_t> bits);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t edge_index) const { return bits_[edge_index]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  bool any_failure() const;

  friend bool operator==(const Syndrome&, const Syndrome&) = default;

 private:
  std::vector<std::uint8_t> bits_;  // values 0/1
};

// What a faulty tester reports.
enum class FaultyTesterPolicy {
  RandomUniform,         // independent fair coin per edge, from `seed`
  AlwaysPass,
  AlwaysFail,
  AdversarialCallback,   // caller-supplied bit per edge
};

using AdversarialCallback = std::function<std::uint8_t(
    const DiagnosticGraph& graph, std::size_t edge_index, const FaultSet& faults)>;

// Simulates the syndrome produced when exactly `faults` are faulty.
// Fault-free testers report the tested node's membership in `faults`;
// faulty testers report according to `policy`.  Deterministic in `seed`
// (edges are visited in canonical order).
Syndrome generate_syndrome(const DiagnosticGraph& graph, const FaultSet& faults,
                           FaultyTesterPolicy policy, std::uint64_t seed,
                           const AdversarialCallback& callback = {});

// True iff `syndrome` could have been produced by fault set `faults`: every
// edge with a fault-free tester reports exactly the tested node's fault
// membership (faulty testers are unconstrained).
bool is_consistent(const DiagnosticGraph& graph, const Syndrome& syndrome,
                   const FaultSet& faults);

// ---------------------------------------------------------------------------
// Text serialization.
//
//   nodes <N>
//   node <index> <module_id> <timestamp>
//   edge <tester> <tested>
//
// '#' starts a comment; blank lines are ignored.  serialize_graph emits the
// canonical form (nodes ascending, edges in canonical order, no comments), so
// parse(serialize(g)) == g bit-exactly.
// ---------------------------------------------------------------------------

std::string serialize_graph(const DiagnosticGraph& graph);
DiagnosticGraph parse_graph(std::istream& in);
DiagnosticGraph parse_graph(const std::string& text);

// Syndrome text form: one `test <tester> <tested> <0|1>` line per edge.
// Parsing requires exactly the graph's edge set (any order, no duplicates).
std::string serialize_syndrome(const DiagnosticGraph& graph, const Syndrome& syndrome);
Syndrome parse_syndrome(const DiagnosticGraph& graph, std::istream& in);
Syndrome parse_syndrome(const DiagnosticGraph& graph, const std::string& text);

// ---------------------------------------------------------------------------
// Deterministic sampling helpers shared by the simulation harness.
// ---------------------------------------------------------------------------

// Stateless mix of a base seed with stream identifiers (splitmix64 steps),
// used to derive independent per-trial RNG streams.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a = 0, std::uint64_t b = 0,
                       std::uint64_t c = 0);

// Uniform integer in [0, bound) from a raw 64-bit generator, by masked
// rejection — identical output on every platform.  bound must be > 0.
template <typename Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw ValidationError(ValidationError::Kind::InvalidArgument,
                                        "uniform_below: bound must be positive");
  if (bound == 1) return 0;
  std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1);
  for (;;) {
    std::uint64_t draw = rng() & mask;
    if (draw < bound) return draw;
  }
}

// f distinct node indices of an n-node graph, uniformly without replacement.
template <typename Rng>
FaultSet sample_fault_set(std::size_t n, std::size_t f, Rng& rng) {
  if (f > n) throw ValidationError(ValidationError::Kind::InvalidArgument,
                                   "sample_fault_set: more faults than nodes");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t k = 0; k < f; ++k) {
    std::size_t j = k + static_cast<std::size_t>(uniform_below(rng, n - k));
    std::swap(pool[k], pool[j]);
  }
  pool.resize(f);
  return FaultSet(std::move(pool));
}

}  // namespace persys
