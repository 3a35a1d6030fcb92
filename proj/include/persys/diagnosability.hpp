#pragma once

// κ-diagnosability analysis.
//
// D is κ-diagnosable when every syndrome that at most κ simultaneous faults
// can produce identifies the fault set uniquely.  The closed-form
// characterization checked here: D (with |U| = n) is κ-diagnosable iff
//   (i)   2κ ≤ n − 1,
//   (ii)  κ ≤ δ_in(D),
//   (iii) for every p ∈ {0, …, κ−1} and every X ⊆ U with |X| = n − 2κ + p,
//         |Γ(X)| > p.
// Subset sizes outside [1, n] make a (p, size) pair vacuous.

#include <cstdint>
#include <optional>

#include "persys/graph.hpp"

namespace persys {

// Node-count ceiling for the exhaustive condition-(iii) subset enumeration.
inline constexpr std::size_t kSubsetEnumerationGuard = 30;

enum class DiagnosabilityCondition {
  None,         // no condition violated
  NodeBound,    // (i)  2κ > n − 1
  InDegree,     // (ii) κ > δ_in
  SubsetCover,  // (iii) some X has |Γ(X)| ≤ p
};

struct KDiagnosableResult {
  bool diagnosable = false;
  DiagnosabilityCondition violated = DiagnosabilityCondition::None;
  // For SubsetCover: the lexicographically smallest violating X at the
  // smallest violating p.
  std::optional<FaultSet> witness;
  int witness_p = -1;

  explicit operator bool() const { return diagnosable; }
};

// Exhaustive check of conditions (i)–(iii).  κ = 0 is always diagnosable.
// Throws ValidationError{EmptyGraph} on an empty graph and
// ValidationError{SizeGuard} when node_count() > kSubsetEnumerationGuard.
KDiagnosableResult is_k_diagnosable(const DiagnosticGraph& graph, std::size_t kappa);

struct DiagnosabilityReport {
  std::size_t kappa = 0;             // κ(D): largest κ for which D is κ-diagnosable
  std::size_t min_in_degree = 0;
  std::size_t node_count = 0;
  // Why κ(D) + 1 fails.
  DiagnosabilityCondition violated = DiagnosabilityCondition::None;
  std::optional<FaultSet> witness;
  int witness_p = -1;
};

// κ(D) by descending search from min(⌊(n−1)/2⌋, δ_in); diagnosability is
// monotone in κ, so the first success is the maximum.
DiagnosabilityReport max_diagnosability(const DiagnosticGraph& graph);

// Definition-level oracle: enumerates every pair of fault sets of size ≤ κ
// and reports false iff some pair shares a producible syndrome (a syndrome
// consistent with both).  Exponential; guarded by `max_nodes`.
bool distinguishability_oracle(const DiagnosticGraph& graph, std::size_t kappa,
                               std::size_t max_nodes = 20);

// Checks the edge-monotonicity law on a concrete pair: D and D' share the
// same node vector and edges(D) ⊆ edges(D'); returns κ(D) ≤ κ(D').
// Expected true for every valid pair.
bool check_edge_monotonicity(const DiagnosticGraph& d, const DiagnosticGraph& d_prime);

}  // namespace persys
