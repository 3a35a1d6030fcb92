// persys: fault-diagnosis toolkit for modular perception pipelines.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "persys/diagnosability.hpp"
#include "persys/harness.hpp"
#include "persys/monitor.hpp"
#include "persys/synth.hpp"

namespace {

using persys::ValidationError;
using ordered_json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError(ValidationError::Kind::Parse,
                          fmt::format("cannot open '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out)
    throw ValidationError(ValidationError::Kind::Parse,
                          fmt::format("cannot write '{}'", out_path));
  out << text;
}

std::string condition_name(persys::DiagnosabilityCondition condition) {
  switch (condition) {
    case persys::DiagnosabilityCondition::None: return "none";
    case persys::DiagnosabilityCondition::NodeBound: return "node-bound";
    case persys::DiagnosabilityCondition::InDegree: return "in-degree";
    case persys::DiagnosabilityCondition::SubsetCover: return "subset-cover";
  }
  return "unknown";
}

ordered_json labels_json(const persys::DiagnosticGraph& graph,
                         const persys::FaultSet& faults) {
  ordered_json arr = ordered_json::array();
  for (std::size_t idx : faults.members()) {
    const persys::NodeLabel& label = graph.node(idx);
    arr.push_back(ordered_json::array({label.module_id, label.timestamp}));
  }
  return arr;
}

int cmd_analyze(const std::string& graph_path, const std::string& out_path) {
  persys::DiagnosticGraph graph = persys::parse_graph(slurp(graph_path));
  persys::DiagnosabilityReport report = persys::max_diagnosability(graph);

  ordered_json j;
  j["nodes"] = graph.node_count();
  j["edges"] = graph.edge_count();
  j["min_in_degree"] = report.min_in_degree;
  j["kappa"] = report.kappa;
  j["violated_at_next"] = condition_name(report.violated);
  if (report.witness) {
    j["witness"] = labels_json(graph, *report.witness);
    j["witness_p"] = report.witness_p;
  }
  emit(j.dump() + "\n", out_path);
  return 0;
}

int cmd_identify(const std::string& graph_path, const std::string& syndrome_path,
                 std::size_t kappa, bool timing, const std::string& out_path) {
  persys::DiagnosticGraph graph = persys::parse_graph(slurp(graph_path));
  persys::Syndrome syndrome = persys::parse_syndrome(graph, slurp(syndrome_path));
  persys::IdentificationResult result = persys::identify_faults(graph, syndrome, kappa);

  ordered_json j;
  switch (result.status) {
    case persys::IdentificationStatus::Unique: j["status"] = "unique"; break;
    case persys::IdentificationStatus::Ambiguous: j["status"] = "ambiguous"; break;
    case persys::IdentificationStatus::Infeasible: j["status"] = "infeasible"; break;
  }
  j["detected"] = persys::detect(syndrome);
  j["faults"] = labels_json(graph, result.fault_set);
  ordered_json candidates = ordered_json::array();
  for (const persys::FaultSet& candidate : result.candidates)
    candidates.push_back(labels_json(graph, candidate));
  j["candidates"] = std::move(candidates);
  j["candidates_total"] = result.candidates_total;
  j["elapsed_us"] = timing ? result.elapsed.count() : 0;
  emit(j.dump() + "\n", out_path);
  return 0;
}

int cmd_gen(std::size_t nodes, std::size_t kappa, std::uint64_t seed,
            const std::string& out_path) {
  persys::DiagnosticGraph graph =
      persys::gen_random_diagnosable_graph(nodes, kappa, seed);
  emit(persys::serialize_graph(graph), out_path);
  return 0;
}

persys::FaultyTesterPolicy policy_from(const std::string& name) {
  if (name == "random") return persys::FaultyTesterPolicy::RandomUniform;
  if (name == "pass") return persys::FaultyTesterPolicy::AlwaysPass;
  if (name == "fail") return persys::FaultyTesterPolicy::AlwaysFail;
  throw ValidationError(ValidationError::Kind::InvalidArgument,
                        fmt::format("unknown policy '{}'", name));
}

int cmd_montecarlo(std::size_t nodes, std::size_t kappa,
                   const std::vector<std::size_t>& faults, std::size_t trials,
                   std::size_t graphs, std::uint64_t seed, const std::string& policy,
                   bool timing, const std::string& out_dir) {
  persys::CampaignSpec spec;
  spec.n_nodes = nodes;
  spec.target_kappa = kappa;
  if (!faults.empty()) spec.fault_counts = faults;
  spec.trials_per_point = trials;
  spec.graphs_per_point = graphs;
  spec.seed = seed;
  spec.policy = policy_from(policy);
  spec.measure_time = timing;

  std::string csv = persys::campaign_csv(persys::run_campaign(spec));
  if (out_dir.empty()) {
    std::cout << csv;
    return 0;
  }
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir + "/campaign.csv");
    out << csv;
  }
  ordered_json snapshot;
  snapshot["n_nodes"] = spec.n_nodes;
  snapshot["target_kappa"] = spec.target_kappa;
  snapshot["fault_counts"] = spec.fault_counts;
  snapshot["trials_per_point"] = spec.trials_per_point;
  snapshot["graphs_per_point"] = spec.graphs_per_point;
  snapshot["seed"] = spec.seed;
  snapshot["policy"] = policy;
  snapshot["timing"] = timing ? "wall" : "none";
  std::ofstream cfg(out_dir + "/config.json");
  cfg << snapshot.dump(2) << "\n";
  return 0;
}

int cmd_monitor(const std::string& trace_path, const std::string& config_path,
                const std::string& pipeline, std::optional<std::size_t> window,
                std::optional<std::size_t> kappa, bool timing,
                const std::string& out_path) {
  persys::MonitorConfig config = persys::default_localization_config();
  if (pipeline == "object-detection")
    config = persys::scenario_object_detection_config();
  else if (!pipeline.empty() && pipeline != "localization")
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          fmt::format("unknown pipeline '{}'", pipeline));
  if (!config_path.empty()) {
    persys::PipelineKind before = config.pipeline;
    config = persys::apply_config(std::move(config), slurp(config_path));
    if (config.pipeline != before && config.pipeline == persys::PipelineKind::ObjectDetection) {
      // Geometry cannot be spelled in the key-value file; use the scenario's.
      persys::MonitorConfig geo = persys::scenario_object_detection_config();
      config.lanes = geo.lanes;
      config.fovs = geo.fovs;
    }
  }
  if (window) config.window_length = *window;
  if (kappa) config.kappa = *kappa;

  std::ifstream in(trace_path);
  if (!in)
    throw ValidationError(ValidationError::Kind::Parse,
                          fmt::format("cannot open '{}'", trace_path));
  std::uint64_t malformed = 0;
  std::vector<persys::TraceRecord> trace = persys::read_trace(in, &malformed);

  persys::Monitor monitor(std::move(config));
  std::vector<persys::FaultReport> reports = monitor.run(trace);

  std::string out;
  for (const persys::FaultReport& report : reports)
    out += persys::serialize_report(report, timing) + "\n";
  emit(out, out_path);
  if (malformed > 0 || monitor.stale_dropped() > 0)
    std::cerr << fmt::format("skipped {} malformed line(s), dropped {} stale event(s)\n",
                             malformed, monitor.stale_dropped());
  return 0;
}

int cmd_synth(const std::string& scenario, double duration,
              std::optional<double> fault_start, bool no_fault, std::uint64_t seed,
              const std::string& out_path, const std::string& meta_path) {
  auto kind = persys::scenario_from_string(scenario);
  if (!kind)
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          fmt::format("unknown scenario '{}'", scenario));
  persys::ScenarioParams params;
  params.kind = *kind;
  params.duration = duration;
  params.fault_start = fault_start;
  params.inject_fault = !no_fault;

  persys::SynthesizedTrace trace = persys::synth_trace(params, seed);
  std::string out;
  for (const persys::TraceRecord& record : trace.records)
    out += persys::serialize_record(record) + "\n";
  emit(out, out_path);

  if (!meta_path.empty()) {
    ordered_json meta;
    meta["scenario"] = persys::to_string(trace.kind);
    meta["fault_begin"] = trace.fault_begin;
    meta["fault_end"] = trace.fault_end;
    meta["faulty_ticks"] = trace.faulty_ticks;
    std::ofstream meta_out(meta_path);
    meta_out << meta.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault diagnosis for modular perception pipelines"};
  app.require_subcommand(1);

  std::string graph_path, syndrome_path, trace_path, config_path;
  std::string out_path, meta_path, out_dir;
  std::string policy = "random", pipeline, scenario = "gps-spoof";
  std::string timing = "wall";
  std::size_t nodes = 15, kappa = 5, trials = 100, graphs = 0;
  std::optional<std::size_t> window_opt, kappa_opt;
  std::uint64_t seed = 0;
  double duration = 3.0;
  std::optional<double> fault_start;
  bool no_fault = false;
  std::vector<std::size_t> faults;

  auto* analyze = app.add_subcommand("analyze", "Report κ(D) for a graph file");
  analyze->add_option("graph", graph_path, "graph file")->required();
  analyze->add_option("--out", out_path, "output path (default stdout)");

  auto* identify = app.add_subcommand("identify", "Decode a syndrome");
  identify->add_option("graph", graph_path)->required();
  identify->add_option("syndrome", syndrome_path)->required();
  identify->add_option("--kappa", kappa, "fault-hypothesis bound")->required();
  identify->add_option("--timing", timing)->check(CLI::IsMember({"wall", "none"}));
  identify->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen", "Generate a random κ-diagnosable graph");
  gen->add_option("--nodes", nodes)->required();
  gen->add_option("--kappa", kappa)->required();
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);

  auto* mc = app.add_subcommand("montecarlo", "Identification accuracy/latency sweep");
  mc->add_option("--nodes", nodes);
  mc->add_option("--kappa", kappa);
  mc->add_option("--faults", faults, "fault counts (default 0..kappa)");
  mc->add_option("--trials", trials);
  mc->add_option("--graphs", graphs, "graph pool per point (0: one per trial)");
  mc->add_option("--seed", seed);
  mc->add_option("--policy", policy)->check(CLI::IsMember({"random", "pass", "fail"}));
  mc->add_option("--timing", timing)->check(CLI::IsMember({"wall", "none"}));
  mc->add_option("--out", out_dir, "run directory (default: CSV to stdout)");

  auto* monitor = app.add_subcommand("monitor", "Replay a trace through the monitor");
  monitor->add_option("trace", trace_path)->required();
  monitor->add_option("--config", config_path, "key-value config file");
  monitor->add_option("--pipeline", pipeline)
      ->check(CLI::IsMember({"localization", "object-detection"}));
  monitor->add_option("--window", window_opt);
  monitor->add_option("--kappa", kappa_opt);
  monitor->add_option("--timing", timing)->check(CLI::IsMember({"wall", "none"}));
  monitor->add_option("--out", out_path);

  auto* synth = app.add_subcommand("synth", "Synthesize a fault-injection trace");
  synth->add_option("--scenario", scenario)
      ->check(CLI::IsMember({"gps-spoof", "obstacle-omission", "phantom-obstacle"}));
  synth->add_option("--duration", duration);
  synth->add_option("--fault-start", fault_start);
  synth->add_flag("--no-fault", no_fault, "emit a clean trace");
  synth->add_option("--seed", seed);
  synth->add_option("--out", out_path);
  synth->add_option("--meta", meta_path, "write fault-interval metadata JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(graph_path, out_path);
    if (identify->parsed())
      return cmd_identify(graph_path, syndrome_path, kappa, timing == "wall", out_path);
    if (gen->parsed()) return cmd_gen(nodes, kappa, seed, out_path);
    if (mc->parsed())
      return cmd_montecarlo(nodes, kappa, faults, trials, graphs, seed, policy,
                            timing == "wall", out_dir);
    if (monitor->parsed())
      return cmd_monitor(trace_path, config_path, pipeline, window_opt, kappa_opt,
                         timing == "wall", out_path);
    if (synth->parsed())
      return cmd_synth(scenario, duration, fault_start, no_fault, seed, out_path,
                       meta_path);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
