#include "persys/diagnosability.hpp"

#include <algorithm>
#include <bit>

#include <fmt/format.h>

namespace persys {

namespace {

using Kind = ValidationError::Kind;

// Lexicographic DFS over size-m subsets of [0, n), carrying the running
// union of out-neighbor masks.  Invokes visit(x_mask, gamma_mask) for each
// subset; a true return stops the walk early.
struct SubsetWalker {
  const std::vector<std::uint32_t>& out_mask;
  std::size_t n;
  std::size_t m;
  std::vector<std::size_t> chosen;

  template <typename Visit>
  bool walk(std::size_t start, std::uint32_t x_mask, std::uint32_t reach_mask,
            Visit&& visit) {
    if (chosen.size() == m)
      return visit(x_mask, reach_mask & ~x_mask);
    // Not enough nodes left to reach size m.
    if (n - start < m - chosen.size()) return false;
    for (std::size_t i = start; i < n; ++i) {
      chosen.push_back(i);
      if (walk(i + 1, x_mask | (1u << i), reach_mask | out_mask[i], visit))
        return true;
      chosen.pop_back();
    }
    return false;
  }
};

std::vector<std::uint32_t> out_neighbor_masks(const DiagnosticGraph& graph) {
  std::vector<std::uint32_t> masks(graph.node_count(), 0);
  for (const Edge& e : graph.edges()) masks[e.tester] |= 1u << e.tested;
  return masks;
}

}  // namespace

KDiagnosableResult is_k_diagnosable(const DiagnosticGraph& graph, std::size_t kappa) {
  const std::size_t n = graph.node_count();
  if (n == 0)
    throw ValidationError(Kind::EmptyGraph, "is_k_diagnosable on an empty graph");
  if (n > kSubsetEnumerationGuard)
    throw ValidationError(Kind::SizeGuard,
                          fmt::format("is_k_diagnosable enumerates subsets exhaustively; "
                                      "{} nodes exceeds the guard of {}",
                                      n, kSubsetEnumerationGuard));

  KDiagnosableResult result;
  if (kappa == 0) {
    result.diagnosable = true;
    return result;
  }

  // (i) 2κ ≤ n − 1.
  if (2 * kappa > n - 1) {
    result.violated = DiagnosabilityCondition::NodeBound;
    return result;
  }
  // (ii) κ ≤ δ_in.
  if (kappa > graph.min_in_degree()) {
    result.violated = DiagnosabilityCondition::InDegree;
    return result;
  }
  // (iii) every X with |X| = n − 2κ + p has |Γ(X)| > p.
  const auto out_mask = out_neighbor_masks(graph);
  for (std::size_t p = 0; p < kappa; ++p) {
    // n − 2κ + p, vacuous when not in [1, n].
    std::int64_t size = static_cast<std::int64_t>(n) -
                        2 * static_cast<std::int64_t>(kappa) +
                        static_cast<std::int64_t>(p);
    if (size < 1 || size > static_cast<std::int64_t>(n)) continue;
    SubsetWalker walker{out_mask, n, static_cast<std::size_t>(size), {}};
    bool violated = walker.walk(0, 0, 0, [&](std::uint32_t, std::uint32_t gamma) {
      return static_cast<std::size_t>(std::popcount(gamma)) <= p;
    });
    if (violated) {
      result.violated = DiagnosabilityCondition::SubsetCover;
      result.witness = FaultSet(walker.chosen);
      result.witness_p = static_cast<int>(p);
      return result;
    }
  }
  result.diagnosable = true;
  return result;
}

DiagnosabilityReport max_diagnosability(const DiagnosticGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n == 0)
    throw ValidationError(Kind::EmptyGraph, "max_diagnosability on an empty graph");

  DiagnosabilityReport report;
  report.node_count = n;
  report.min_in_degree = graph.min_in_degree();

  std::size_t upper = std::min((n - 1) / 2, report.min_in_degree);
  std::size_t kappa = 0;
  for (std::size_t k = upper; k > 0; --k) {
    if (is_k_diagnosable(graph, k)) {
      kappa = k;
      break;
    }
  }
  report.kappa = kappa;

  KDiagnosableResult beyond = is_k_diagnosable(graph, kappa + 1);
  report.violated = beyond.violated;
  report.witness = beyond.witness;
  report.witness_p = beyond.witness_p;
  return report;
}

bool distinguishability_oracle(const DiagnosticGraph& graph, std::size_t kappa,
                               std::size_t max_nodes) {
  const std::size_t n = graph.node_count();
  if (n == 0)
    throw ValidationError(Kind::EmptyGraph, "distinguishability_oracle on an empty graph");
  if (n > max_nodes)
    throw ValidationError(Kind::SizeGuard,
                          fmt::format("distinguishability_oracle enumerates fault-set "
                                      "pairs; {} nodes exceeds the guard of {}",
                                      n, max_nodes));

  // All fault sets with |F| ≤ κ, as bitmasks.
  std::vector<std::uint32_t> sets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) <= kappa) sets.push_back(mask);

  const auto& edges = graph.edges();
  auto consistent = [&](const std::vector<std::uint8_t>& bits, std::uint32_t f) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (f & (1u << edges[e].tester)) continue;
      std::uint8_t expected = (f & (1u << edges[e].tested)) ? 1 : 0;
      if (bits[e] != expected) return false;
    }
    return true;
  };

  std::vector<std::uint8_t> bits(edges.size(), 0);
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      const std::uint32_t f1 = sets[a], f2 = sets[b];
      // Candidate shared syndrome: edges with a tester fault-free in either
      // world take that world's truthful value; doubly-faulty testers are
      // free, pinned to 0.
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::uint32_t tester = 1u << edges[e].tester;
        const std::uint32_t tested = 1u << edges[e].tested;
        if (!(f1 & tester))
          bits[e] = (f1 & tested) ? 1 : 0;
        else if (!(f2 & tester))
          bits[e] = (f2 & tested) ? 1 : 0;
        else
          bits[e] = 0;
      }
      if (consistent(bits, f1) && consistent(bits, f2)) return false;
    }
  }
  return true;
}

bool check_edge_monotonicity(const DiagnosticGraph& d, const DiagnosticGraph& d_prime) {
  if (d.nodes() != d_prime.nodes())
    throw ValidationError(Kind::InvalidArgument,
                          "check_edge_monotonicity: node vectors differ");
  if (!std::includes(d_prime.edges().begin(), d_prime.edges().end(),
                     d.edges().begin(), d.edges().end()))
    throw ValidationError(Kind::InvalidArgument,
                          "check_edge_monotonicity: edges(D) is not a subset of edges(D')");
  return max_diagnosability(d).kappa <= max_diagnosability(d_prime).kappa;
}

}  // namespace persys
