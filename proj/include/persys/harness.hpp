#pragma once

// Simulation harness: random diagnosable graphs and Monte Carlo campaigns
// over syndrome decoding.

#include <cstdint>
#include <string>
#include <vector>

#include "persys/graph.hpp"
#include "persys/identification.hpp"

namespace persys {

// Random graph that is verifiably κ_target-diagnosable: each node draws
// κ_target distinct testers uniformly, and the draw is rejected until the
// exhaustive checker accepts it.  Deterministic in `seed`.  Throws
// ValidationError{InvalidArgument} when 2·κ_target > n − 1 and
// ValidationError{RetryBudgetExhausted} when no draw passes within budget.
DiagnosticGraph gen_random_diagnosable_graph(std::size_t n, std::size_t kappa_target,
                                             std::uint64_t seed,
                                             std::size_t retry_budget = 10000);

struct CampaignSpec {
  std::size_t n_nodes = 15;
  std::size_t target_kappa = 5;
  std::vector<std::size_t> fault_counts = {0, 1, 2, 3, 4, 5};
  std::size_t trials_per_point = 100;
  // Distinct graphs per point; trials cycle through them.  0 means one
  // fresh graph per trial.
  std::size_t graphs_per_point = 0;
  std::uint64_t seed = 0;
  FaultyTesterPolicy policy = FaultyTesterPolicy::RandomUniform;
  // When false, timing fields are reported as 0 so repeated runs are
  // byte-identical.
  bool measure_time = true;
};

struct CampaignRow {
  std::size_t fault_count = 0;
  std::size_t n_nodes = 0;
  double accuracy = 0.0;  // identified exactly the injected set
  double mean_us = 0.0;
  double std_us = 0.0;
  std::size_t trials = 0;
  // Detection bookkeeping: trials where every injected fault had at least
  // one fault-free tester, and how many of those raised an alarm.
  std::size_t guarded_trials = 0;
  std::size_t guarded_detected = 0;
};

// One row per fault count.  Trial r of fault count f draws the graph
// pool[r % pool], the fault set, and the syndrome from seeds derived with
// mix_seed, then decodes with identify_faults(…, target_kappa).
std::vector<CampaignRow> run_campaign(const CampaignSpec& spec);

// CSV with header fault_count,n_nodes,accuracy,mean_us,std_us.
std::string campaign_csv(const std::vector<CampaignRow>& rows);

}  // namespace persys
