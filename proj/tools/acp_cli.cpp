// acp: generate instances, run one solve, run a benchmark matrix, or turn
// traces into plot-ready series.
//
// Exit status: 0 success, 1 usage error, 2 run failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acp/bench.hpp"
#include "acp/driver.hpp"
#include "acp/initializer.hpp"
#include "acp/instance_io.hpp"
#include "acp/instances.hpp"
#include "acp/presets.hpp"
#include "acp/report.hpp"
#include "acp/run_io.hpp"
#include "acp/trace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kUsage = 1;
constexpr int kFailure = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateArgs {
  std::string family;
  std::optional<std::size_t> nodes, edges, items, sets, coverage;
  std::uint64_t seed = 1;
  std::string scale;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string preset;
  std::string config_file;
  std::string family;
  std::optional<std::string> algo;
  std::optional<double> time, eps, p, init_budget;
  std::optional<std::size_t> k0, t, max_iterations;
  std::optional<std::uint64_t> seed, stall_nodes, node_limit;
  std::optional<std::string> solver, solver_cmd, solver_format, repartition;
  std::string out = "run_out";
  bool keep_files = false;
};

struct BenchArgs {
  std::string spec;
  std::string out;
  std::optional<std::size_t> reps, workers;
  bool serial = false;
  bool parallel = false;
};

struct ReportArgs {
  std::vector<std::string> traces;
  std::vector<std::string> labels;
  std::string sense = "auto";
  std::size_t points = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  const auto family = acp::parse_family(a.family);
  if (!family || *family == acp::Family::Generic) throw UsageError("unknown family '" + a.family + "'");
  acp::PresetSizes sizes;
  if (!a.scale.empty()) {
    const auto s = acp::preset_sizes(a.scale);
    if (!s) throw UsageError("unknown scale '" + a.scale + "'");
    sizes = *s;
  }
  acp::IntegerProgram p;
  json meta;
  try {
    if (*family == acp::Family::SC) {
      acp::SetCoverSpec spec{a.items.value_or(sizes.items), a.sets.value_or(sizes.sets),
                             a.coverage.value_or(sizes.coverage), a.seed};
      if (spec.items == 0 || spec.sets == 0) throw UsageError("sc needs --items and --sets (or --scale)");
      if (spec.coverage == 0) spec.coverage = 4;
      spec.validate();
      p = acp::gen_sc(spec);
      meta = acp::set_cover_metadata(spec);
    } else {
      acp::GraphSpec spec{a.nodes.value_or(sizes.nodes), a.edges.value_or(sizes.edges), a.seed};
      if (spec.nodes == 0) throw UsageError(a.family + " needs --nodes and --edges (or --scale)");
      spec.validate();
      p = *family == acp::Family::IS    ? acp::gen_is(spec)
          : *family == acp::Family::MVC ? acp::gen_mvc(spec)
                                        : acp::gen_maxcut(spec);
      meta = acp::graph_metadata(*family, spec);
    }
  } catch (const acp::SpecError& e) {
    throw UsageError(e.what());
  }
  const fs::path out = a.out.empty() ? fs::path(p.name() + ".json") : fs::path(a.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  if (out.extension() == ".lp")
    acp::write_lp_file(out, p);
  else
    acp::write_instance(out, p, meta);
  std::cout << out.string() << ": " << p.num_variables() << " variables, " << p.num_constraints()
            << " constraints\n";
  return 0;
}

acp::InstanceFile load_instance(const fs::path& path) {
  if (path.extension() == ".lp") return acp::InstanceFile{acp::read_lp_file(path), json::object()};
  return acp::read_instance(path);
}

int cmd_solve(const SolveArgs& a) {
  acp::InstanceFile inst;
  try {
    inst = load_instance(a.instance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  const acp::IntegerProgram& p = inst.program;

  acp::RunConfig config;
  config.family = inst.family();
  if (!a.family.empty()) {
    const auto f = acp::parse_family(a.family);
    if (!f) throw UsageError("unknown family '" + a.family + "'");
    config.family = *f;
  }
  try {
    if (a.algo) {
      const auto alg = acp::parse_algorithm(*a.algo);
      if (!alg) throw UsageError("unknown algorithm '" + *a.algo + "'");
      config.algorithm = *alg;
    }
    if (!a.config_file.empty()) {
      const json j = acp::read_json_file(a.config_file);
      if (!a.algo && j.contains("algo")) acp::apply_config_json(config, json{{"algo", j.at("algo")}});
      if (j.contains("preset") && a.preset.empty())
        acp::apply_preset(config, j.at("preset").get<std::string>(), config.family);
      if (!a.preset.empty()) acp::apply_preset(config, a.preset, config.family);
      acp::apply_config_json(config, j, {"preset", "algo"});
    } else if (!a.preset.empty()) {
      acp::apply_preset(config, a.preset, config.family);
    }

    json flags = json::object();
    if (a.time) flags["time"] = *a.time;
    if (a.k0) flags["k0"] = *a.k0;
    if (a.eps) flags["eps"] = *a.eps;
    if (a.t) flags["t"] = *a.t;
    if (a.p) flags["p"] = *a.p;
    if (a.seed) flags["seed"] = *a.seed;
    if (a.repartition) flags["repartition"] = *a.repartition;
    if (a.solver) flags["solver"] = *a.solver;
    if (a.solver_cmd) flags["solver_cmd"] = *a.solver_cmd;
    if (a.solver_format) flags["solver_format"] = *a.solver_format;
    if (a.init_budget) flags["init_budget"] = *a.init_budget;
    if (a.max_iterations) flags["max_iterations"] = *a.max_iterations;
    if (a.stall_nodes) flags["stall_nodes"] = *a.stall_nodes;
    if (a.node_limit) flags["node_limit"] = *a.node_limit;
    if (!a.family.empty()) flags["family"] = a.family;
    acp::apply_config_json(config, flags);
    config.solver.external.keep_files = a.keep_files;
    config.validate();
  } catch (const acp::ContractError& e) {
    throw UsageError(e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }

  acp::RunResult result;
  try {
    result = acp::run(p, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  const fs::path out = a.out;
  fs::create_directories(out);
  acp::write_trace_csv_file(out / "trace.csv", result.trace);
  acp::write_trace_jsonl_file(out / "trace.jsonl", result.trace);
  acp::write_json_file(out / "result.json", acp::result_to_json(p, config, result));
  std::cout << acp::format_double(result.best.objective) << '\n';
  return 0;
}

int cmd_bench(const BenchArgs& a) {
  acp::BenchSpec spec;
  try {
    const json j = acp::read_json_file(a.spec);
    spec = acp::parse_bench_spec(j, fs::path(a.spec).parent_path());
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (!a.out.empty()) spec.output_dir = a.out;
  if (a.reps) {
    if (*a.reps < 1) throw UsageError("--reps must be at least 1");
    spec.repetitions = *a.reps;
  }
  if (a.workers) spec.workers = *a.workers;
  if (a.serial) spec.serial = true;
  if (a.parallel) spec.serial = false;

  const acp::BenchOutcome outcome = acp::run_bench(spec, &std::cerr);
  std::cout << acp::format_grid(outcome.summary);
  std::cout << "summary: " << (spec.output_dir / "summary.csv").string() << '\n';
  for (const auto& r : outcome.runs)
    if (!r.ok) return kFailure;
  return 0;
}

int cmd_report(const ReportArgs& a) {
  std::optional<acp::Sense> forced;
  if (a.sense == "max" || a.sense == "maximize")
    forced = acp::Sense::Maximize;
  else if (a.sense == "min" || a.sense == "minimize")
    forced = acp::Sense::Minimize;
  else if (a.sense != "auto")
    throw UsageError("--sense must be auto, max or min");
  if (!a.labels.empty() && a.labels.size() != a.traces.size())
    throw UsageError("--labels needs one label per trace");

  std::vector<acp::Series> series;
  for (std::size_t i = 0; i < a.traces.size(); ++i) {
    const fs::path path = a.traces[i];
    std::vector<acp::TraceEvent> trace;
    try {
      trace = acp::read_trace_csv_file(path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kFailure;
    }
    const acp::Sense sense = forced.value_or(acp::sense_for_trace(path, trace));
    std::string label = a.labels.empty() ? path.parent_path().string() : a.labels[i];
    if (label.empty()) label = path.stem().string();
    series.push_back(acp::best_so_far(trace, sense, label));
  }
  const acp::AlignedSeries table = acp::align(series, a.points);
  if (a.out.empty()) {
    acp::write_aligned_csv(std::cout, table);
  } else {
    std::ofstream out(a.out);
    if (!out) {
      std::cerr << "error: cannot write " << a.out << '\n';
      return kFailure;
    }
    acp::write_aligned_csv(out, table);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive constraint partition search for binary integer programs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a seeded benchmark instance");
  g->add_option("family", gen.family, "is, mvc, maxcut or sc")->required();
  g->add_option("--nodes", gen.nodes, "Graph nodes");
  g->add_option("--edges", gen.edges, "Graph edges");
  g->add_option("--items", gen.items, "Set cover items");
  g->add_option("--sets", gen.sets, "Set cover sets");
  g->add_option("--coverage", gen.coverage, "Sets per item");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--scale", gen.scale, "Take sizes from a preset (desk, paper-small, ...)");
  g->add_option("-o,--out", gen.out, "Output file (.json, or .lp for CPLEX LP)");

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Run one algorithm on one instance");
  s->add_option("instance", sol.instance, "Instance file (.json or .lp)")->required();
  s->add_option("--algo", sol.algo, "acp, acp2, lns or solver_only");
  s->add_option("--time", sol.time, "Total wall-clock budget in seconds");
  s->add_option("--k0", sol.k0, "Initial block count");
  s->add_option("--eps", sol.eps, "Improvement threshold");
  s->add_option("--t", sol.t, "Stalls before k decreases");
  s->add_option("--p", sol.p, "Per-iteration time cap as a fraction of --time");
  s->add_option("--seed", sol.seed, "Run seed");
  s->add_option("--solver", sol.solver, "builtin or external");
  s->add_option("--solver-cmd", sol.solver_cmd, "External command with {lp_file} {sol_file} {time_limit_s}");
  s->add_option("--solver-format", sol.solver_format, "plain or gurobi");
  s->add_flag("--keep-solver-files", sol.keep_files, "Keep external solver scratch directories");
  s->add_option("--repartition", sol.repartition, "every or on-k-change");
  s->add_option("--init-budget", sol.init_budget, "ACP2 initial solve budget in seconds");
  s->add_option("--max-iterations", sol.max_iterations, "Iteration cap (0 = none)");
  s->add_option("--stall-nodes", sol.stall_nodes, "Built-in solver: stop after this many nodes without progress");
  s->add_option("--node-limit", sol.node_limit, "Built-in solver: node budget per call");
  s->add_option("--preset", sol.preset, "Named parameter preset");
  s->add_option("--config", sol.config_file, "JSON run config");
  s->add_option("--family", sol.family, "Override the family used for the starting point");
  s->add_option("--out", sol.out, "Output directory");

  BenchArgs ben;
  auto* b = app.add_subcommand("bench", "Run a benchmark matrix from a JSON spec");
  b->add_option("spec", ben.spec, "Bench spec file")->required();
  b->add_option("--out", ben.out, "Output directory (overrides the spec)");
  b->add_option("--reps", ben.reps, "Repetitions (overrides the spec)");
  b->add_option("--workers", ben.workers, "Concurrent runs when not serial");
  b->add_flag("--serial", ben.serial, "One run at a time");
  b->add_flag("--parallel", ben.parallel, "Allow concurrent runs");

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "Best-objective-so-far series from traces");
  r->add_option("traces", rep.traces, "trace.csv files")->required();
  r->add_option("--labels", rep.labels, "Column labels, one per trace (comma-separated)")->delimiter(',');
  r->add_option("--sense", rep.sense, "auto, max or min");
  r->add_option("--points", rep.points, "Uniform grid size (0 = union of event times)");
  r->add_option("-o,--out", rep.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_solve(sol);
    if (*b) return cmd_bench(ben);
    if (*r) return cmd_report(rep);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
