#include "persys/harness.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "persys/diagnosability.hpp"

namespace persys {

namespace {
using Kind = ValidationError::Kind;
}

DiagnosticGraph gen_random_diagnosable_graph(std::size_t n, std::size_t kappa_target,
                                             std::uint64_t seed,
                                             std::size_t retry_budget) {
  if (n == 0)
    throw ValidationError(Kind::InvalidArgument, "graph needs at least one node");
  if (n > kSubsetEnumerationGuard)
    throw ValidationError(Kind::SizeGuard,
                          fmt::format("{} nodes exceeds the verification guard of {}",
                                      n, kSubsetEnumerationGuard));
  if (kappa_target > 0 && 2 * kappa_target > n - 1)
    throw ValidationError(Kind::InvalidArgument,
                          fmt::format("no {}-node graph is {}-diagnosable "
                                      "(needs 2κ ≤ n − 1)", n, kappa_target));

  std::mt19937_64 rng(seed);
  std::vector<NodeLabel> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(NodeLabel{fmt::format("m{}", i), 0});

  std::vector<std::size_t> pool(n > 0 ? n - 1 : 0);
  for (std::size_t attempt = 0; attempt < retry_budget; ++attempt) {
    std::vector<Edge> edges;
    edges.reserve(n * kappa_target);
    for (std::size_t j = 0; j < n; ++j) {
      // Candidate testers: every node but j.
      std::size_t w = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) pool[w++] = i;
      for (std::size_t k = 0; k < kappa_target; ++k) {
        std::size_t pick =
            k + static_cast<std::size_t>(uniform_below(rng, (n - 1) - k));
        std::swap(pool[k], pool[pick]);
        edges.push_back(Edge{pool[k], j});
      }
    }
    DiagnosticGraph graph = DiagnosticGraph::build(nodes, std::move(edges));
    if (is_k_diagnosable(graph, kappa_target)) return graph;
  }
  throw ValidationError(Kind::RetryBudgetExhausted,
                        fmt::format("no {}-diagnosable draw in {} attempts "
                                    "(n = {}, seed = {})",
                                    kappa_target, retry_budget, n, seed));
}

std::vector<CampaignRow> run_campaign(const CampaignSpec& spec) {
  if (spec.trials_per_point == 0)
    throw ValidationError(Kind::InvalidArgument, "trials_per_point must be positive");
  if (spec.fault_counts.empty())
    throw ValidationError(Kind::InvalidArgument, "no fault counts given");
  for (std::size_t f : spec.fault_counts)
    if (f > spec.n_nodes)
      throw ValidationError(Kind::InvalidArgument,
                            fmt::format("fault count {} exceeds node count {}",
                                        f, spec.n_nodes));

  const std::size_t pool_size =
      spec.graphs_per_point == 0
          ? spec.trials_per_point
          : std::min(spec.graphs_per_point, spec.trials_per_point);

  std::vector<CampaignRow> rows;
  rows.reserve(spec.fault_counts.size());
  for (std::size_t fi = 0; fi < spec.fault_counts.size(); ++fi) {
    const std::size_t f = spec.fault_counts[fi];

    std::vector<DiagnosticGraph> pool;
    pool.reserve(pool_size);
    for (std::size_t g = 0; g < pool_size; ++g)
      pool.push_back(gen_random_diagnosable_graph(
          spec.n_nodes, spec.target_kappa, mix_seed(spec.seed, 1, fi, g)));

    CampaignRow row;
    row.fault_count = f;
    row.n_nodes = spec.n_nodes;
    row.trials = spec.trials_per_point;

    std::size_t correct = 0;
    std::vector<double> times_us;
    times_us.reserve(spec.trials_per_point);
    for (std::size_t r = 0; r < spec.trials_per_point; ++r) {
      const DiagnosticGraph& graph = pool[r % pool.size()];
      std::mt19937_64 fault_rng(mix_seed(spec.seed, 2, fi, r));
      FaultSet faults = sample_fault_set(spec.n_nodes, f, fault_rng);
      Syndrome syndrome = generate_syndrome(graph, faults, spec.policy,
                                            mix_seed(spec.seed, 3, fi, r));
      IdentificationResult res = identify_faults(graph, syndrome, spec.target_kappa);
      times_us.push_back(static_cast<double>(res.elapsed.count()));
      if (res.status == IdentificationStatus::Unique && res.fault_set == faults)
        ++correct;

      bool all_guarded = true;
      for (std::size_t node : faults.members()) {
        bool has_honest_tester = false;
        for (std::size_t tester : graph.testers_of(node))
          if (!faults.contains(tester)) {
            has_honest_tester = true;
            break;
          }
        if (!has_honest_tester) {
          all_guarded = false;
          break;
        }
      }
      if (!faults.empty() && all_guarded) {
        ++row.guarded_trials;
        if (detect(syndrome)) ++row.guarded_detected;
      }
    }

    row.accuracy = static_cast<double>(correct) / spec.trials_per_point;
    if (spec.measure_time) {
      double mean = 0.0;
      for (double t : times_us) mean += t;
      mean /= times_us.size();
      double var = 0.0;
      for (double t : times_us) var += (t - mean) * (t - mean);
      var /= times_us.size();
      row.mean_us = mean;
      row.std_us = std::sqrt(var);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string campaign_csv(const std::vector<CampaignRow>& rows) {
  std::string out = "fault_count,n_nodes,accuracy,mean_us,std_us\n";
  for (const CampaignRow& row : rows)
    out += fmt::format("{},{},{:.6f},{:.3f},{:.3f}\n", row.fault_count, row.n_nodes,
                       row.accuracy, row.mean_us, row.std_us);
  return out;
}

}  // namespace persys
