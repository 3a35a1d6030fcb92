#include "persys/identification.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace persys {

namespace {

using Kind = ValidationError::Kind;

enum : std::int8_t { kUnknown = 0, kFaultFree = 1, kFaulty = 2 };

struct CardThenLex {
  bool operator()(const FaultSet& a, const FaultSet& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  }
};

class Solver {
 public:
  Solver(const DiagnosticGraph& graph, const Syndrome& syndrome, std::size_t kappa)
      : graph_(graph), syndrome_(syndrome), kappa_(kappa),
        assign_(graph.node_count(), kUnknown) {}

  void run() { search(0); }

  std::uint64_t total = 0;
  std::set<FaultSet, CardThenLex> best;  // capped at kCandidateCap

 private:
  // Sets `node` to `value`, records it on the trail, and returns false on a
  // contradiction (already pinned to the other value or fault budget blown).
  bool assume(std::size_t node, std::int8_t value, std::vector<std::size_t>& queue) {
    if (assign_[node] != kUnknown) return assign_[node] == value;
    if (value == kFaulty && faulty_count_ == kappa_) return false;
    assign_[node] = value;
    faulty_count_ += (value == kFaulty);
    trail_.push_back(node);
    queue.push_back(node);
    return true;
  }

  // Unit propagation from freshly assigned nodes.
  bool propagate(std::vector<std::size_t>& queue) {
    while (!queue.empty()) {
      std::size_t x = queue.back();
      queue.pop_back();
      if (assign_[x] == kFaultFree) {
        // x's reports are truthful.
        const auto& tested = graph_.testable_set(x);
        const auto& edge_of = out_edge_index_[x];
        for (std::size_t k = 0; k < tested.size(); ++k) {
          std::int8_t forced = syndrome_[edge_of[k]] ? kFaulty : kFaultFree;
          if (!assume(tested[k], forced, queue)) return false;
        }
        // Anyone reporting 1 about a fault-free node lied.
        const auto& testers = graph_.testers_of(x);
        const auto& in_edge = in_edge_index_[x];
        for (std::size_t k = 0; k < testers.size(); ++k)
          if (syndrome_[in_edge[k]] && !assume(testers[k], kFaulty, queue)) return false;
      } else {
        // Anyone reporting 0 about a faulty node lied.
        const auto& testers = graph_.testers_of(x);
        const auto& in_edge = in_edge_index_[x];
        for (std::size_t k = 0; k < testers.size(); ++k)
          if (!syndrome_[in_edge[k]] && !assume(testers[k], kFaulty, queue)) return false;
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      std::size_t node = trail_.back();
      trail_.pop_back();
      faulty_count_ -= (assign_[node] == kFaulty);
      assign_[node] = kUnknown;
    }
  }

  void record_solution() {
    ++total;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < assign_.size(); ++i)
      if (assign_[i] == kFaulty) members.push_back(i);
    FaultSet fs(std::move(members));
    if (best.size() < kCandidateCap) {
      best.insert(std::move(fs));
    } else if (CardThenLex{}(fs, *best.rbegin())) {
      best.insert(std::move(fs));
      best.erase(std::prev(best.end()));
    }
  }

  void search(std::size_t from) {
    std::size_t node = from;
    while (node < assign_.size() && assign_[node] != kUnknown) ++node;
    if (node == assign_.size()) {
      record_solution();
      return;
    }
    for (std::int8_t value : {kFaultFree, kFaulty}) {
      std::size_t mark = trail_.size();
      std::vector<std::size_t> queue;
      if (assume(node, value, queue) && propagate(queue)) search(node + 1);
      undo_to(mark);
    }
  }

 public:
  // Edge indices parallel to testable_set / testers_of adjacency.
  void index_edges() {
    out_edge_index_.assign(graph_.node_count(), {});
    in_edge_index_.assign(graph_.node_count(), {});
    const auto& edges = graph_.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      out_edge_index_[edges[e].tester].push_back(e);
      in_edge_index_[edges[e].tested].push_back(e);
    }
    // Canonical edge order sorts by (tester, tested), so per-node out lists
    // are already aligned with testable_set's ascending order; in lists must
    // be reordered to match testers_of.
    for (std::size_t j = 0; j < graph_.node_count(); ++j) {
      auto& idx = in_edge_index_[j];
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return edges[a].tester < edges[b].tester;
      });
    }
  }

 private:
  const DiagnosticGraph& graph_;
  const Syndrome& syndrome_;
  const std::size_t kappa_;
  std::vector<std::int8_t> assign_;
  std::vector<std::size_t> trail_;
  std::size_t faulty_count_ = 0;
  std::vector<std::vector<std::size_t>> out_edge_index_;
  std::vector<std::vector<std::size_t>> in_edge_index_;
};

}  // namespace

IdentificationResult identify_faults(const DiagnosticGraph& graph,
                                     const Syndrome& syndrome, std::size_t kappa) {
  if (syndrome.size() != graph.edge_count())
    throw ValidationError(Kind::SyndromeMismatch,
                          fmt::format("syndrome has {} bits but the graph has {} edges",
                                      syndrome.size(), graph.edge_count()));

  auto start = std::chrono::steady_clock::now();
  Solver solver(graph, syndrome, kappa);
  solver.index_edges();
  solver.run();
  auto stop = std::chrono::steady_clock::now();

  IdentificationResult result;
  result.candidates.assign(solver.best.begin(), solver.best.end());
  result.candidates_total = solver.total;
  if (solver.total == 0) {
    result.status = IdentificationStatus::Infeasible;
  } else {
    result.status = solver.total == 1 ? IdentificationStatus::Unique
                                      : IdentificationStatus::Ambiguous;
    result.fault_set = result.candidates.front();
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(stop - start);
  return result;
}

std::vector<FaultSet> brute_force_identify(const DiagnosticGraph& graph,
                                           const Syndrome& syndrome,
                                           std::size_t kappa, std::size_t max_nodes) {
  const std::size_t n = graph.node_count();
  if (n > max_nodes)
    throw ValidationError(Kind::SizeGuard,
                          fmt::format("brute_force_identify enumerates all fault sets; "
                                      "{} nodes exceeds the guard of {}", n, max_nodes));
  if (syndrome.size() != graph.edge_count())
    throw ValidationError(Kind::SyndromeMismatch,
                          "syndrome/graph edge count mismatch");

  std::vector<FaultSet> consistent;
  std::vector<std::size_t> combo;
  // Ascending cardinality, lexicographic within each size.
  auto enumerate = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
    if (remaining == 0) {
      FaultSet fs(combo);
      if (is_consistent(graph, syndrome, fs)) consistent.push_back(std::move(fs));
      return;
    }
    for (std::size_t i = start; i + remaining <= n; ++i) {
      combo.push_back(i);
      self(self, i + 1, remaining - 1);
      combo.pop_back();
    }
  };
  for (std::size_t size = 0; size <= std::min(kappa, n); ++size)
    enumerate(enumerate, 0, size);
  return consistent;
}

bool detect(const Syndrome& syndrome) { return syndrome.any_failure(); }

}  // namespace persys
