#pragma once

// Syndrome decoding: recover the fault set from observed test outcomes.

#include <chrono>
#include <cstdint>
#include <vector>

#include "persys/graph.hpp"

namespace persys {

// At most this many candidate sets are retained (smallest by cardinality,
// then lexicographic); candidates_total always counts all of them.
inline constexpr std::size_t kCandidateCap = 32;

enum class IdentificationStatus {
  Unique,      // exactly one fault set of size ≤ κ is consistent
  Ambiguous,   // two or more are
  Infeasible,  // none is (more than κ faults, or the bound is wrong)
};

struct IdentificationResult {
  IdentificationStatus status = IdentificationStatus::Infeasible;
  // Minimum-cardinality, lexicographically smallest consistent set; empty
  // for Infeasible.
  FaultSet fault_set;
  // Up to kCandidateCap consistent sets, ordered by (size, members).
  std::vector<FaultSet> candidates;
  std::uint64_t candidates_total = 0;
  std::chrono::microseconds elapsed{0};
};

// Branch-and-bound search over node states (fault-free / faulty) with unit
// propagation: a hypothesized fault-free tester pins each tested node to its
// reported outcome, and a node pinned fault-free (resp. faulty) forces any
// tester reporting 1 (resp. 0) about it to be faulty.  Branches are pruned
// as soon as the forced-faulty count exceeds `kappa`.  Deterministic:
// lowest-index unassigned node first, fault-free branch first.
IdentificationResult identify_faults(const DiagnosticGraph& graph,
                                     const Syndrome& syndrome, std::size_t kappa);

// Reference decoder: tests every fault set of size ≤ κ with is_consistent.
// Returns all consistent sets ordered by (size, members).  Guarded.
std::vector<FaultSet> brute_force_identify(const DiagnosticGraph& graph,
                                           const Syndrome& syndrome,
                                           std::size_t kappa,
                                           std::size_t max_nodes = 25);

// Fault detection: did any test fail?
bool detect(const Syndrome& syndrome);

}  // namespace persys
