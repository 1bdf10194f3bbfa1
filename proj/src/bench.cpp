#include "acp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "acp/instance_io.hpp"
#include "acp/presets.hpp"
#include "acp/run_io.hpp"
#include "acp/trace.hpp"

namespace acp {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string safe_label(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  return out.empty() ? "_" : out;
}

std::size_t get_count(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) throw ContractError(std::string("bench spec: '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

InstanceEntry parse_instance(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ContractError("bench spec: instance entries must be objects");
  static const std::vector<std::string> known{"label", "family", "path", "nodes",    "edges",
                                              "items", "sets",   "coverage", "seed", "vary_seed", "scale"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ContractError("bench spec: unknown instance key '" + key + "'");

  InstanceEntry e;
  if (j.contains("family")) {
    const auto f = parse_family(j.at("family").get<std::string>());
    if (!f) throw ContractError("bench spec: unknown family '" + j.at("family").get<std::string>() + "'");
    e.family = *f;
  }
  e.vary_seed = j.value("vary_seed", false);
  if (j.contains("path")) {
    fs::path path = j.at("path").get<std::string>();
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    e.path = path;
    if (!fs::exists(path)) throw ContractError("bench spec: instance file " + path.string() + " does not exist");
    if (!j.contains("family")) e.family = read_instance(path).family();
    e.label = j.value("label", path.stem().string());
    return e;
  }
  if (!j.contains("family")) throw ContractError("bench spec: generated instances need a family");
  if (e.family == Family::Generic) throw ContractError("bench spec: generic instances must be given by path");

  PresetSizes sizes;
  if (j.contains("scale")) {
    const auto s = preset_sizes(j.at("scale").get<std::string>());
    if (!s) throw ContractError("bench spec: unknown scale '" + j.at("scale").get<std::string>() + "'");
    sizes = *s;
  }
  const std::uint64_t seed = j.value("seed", std::uint64_t{1});
  if (e.family == Family::SC) {
    e.set_cover = SetCoverSpec{get_count(j, "items", sizes.items), get_count(j, "sets", sizes.sets),
                               get_count(j, "coverage", sizes.coverage), seed};
    e.set_cover.validate();
    e.label = j.value("label", "sc_" + std::to_string(e.set_cover.items) + "_" + std::to_string(e.set_cover.sets));
  } else {
    e.graph = GraphSpec{get_count(j, "nodes", sizes.nodes), get_count(j, "edges", sizes.edges), seed};
    e.graph.validate();
    e.label = j.value("label", std::string(to_string(e.family)) + "_" + std::to_string(e.graph.nodes) + "_" +
                                   std::to_string(e.graph.edges));
  }
  return e;
}

AlgorithmEntry parse_algorithm_entry(const json& j, const std::string& default_preset, const json& shared) {
  if (!j.is_object()) throw ContractError("bench spec: algorithm entries must be objects");
  if (!j.contains("algo")) throw ContractError("bench spec: algorithm entry without 'algo'");
  AlgorithmEntry e;
  const auto a = parse_algorithm(j.at("algo").get<std::string>());
  if (!a) throw ContractError("bench spec: unknown algorithm '" + j.at("algo").get<std::string>() + "'");
  e.algorithm = *a;
  e.label = j.value("label", j.at("algo").get<std::string>());
  e.preset = j.value("preset", default_preset);
  if (!e.preset.empty() && !is_preset(e.preset)) throw ContractError("bench spec: unknown preset '" + e.preset + "'");
  e.overrides = shared;
  for (const auto& [key, v] : j.items())
    if (key != "label" && key != "preset" && key != "algo") e.overrides[key] = v;
  // Fail early on bad keys.
  RunConfig probe;
  apply_config_json(probe, e.overrides, {"seed"});
  return e;
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

BenchSpec parse_bench_spec(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ContractError("bench spec must be a JSON object");
  static const std::vector<std::string> known{"instances", "algorithms", "repetitions", "base_seed", "output_dir",
                                              "serial",    "workers",    "preset",      "run"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ContractError("bench spec: unknown key '" + key + "'");

  BenchSpec spec;
  spec.repetitions = get_count(j, "repetitions", 5);
  if (spec.repetitions < 1) throw ContractError("bench spec: repetitions must be at least 1");
  spec.base_seed = j.value("base_seed", std::uint64_t{1});
  if (j.contains("output_dir")) {
    spec.output_dir = j.at("output_dir").get<std::string>();
    if (spec.output_dir.is_relative() && !base_dir.empty()) spec.output_dir = base_dir / spec.output_dir;
  }
  spec.serial = j.value("serial", true);
  spec.workers = std::max<std::size_t>(1, get_count(j, "workers", 1));

  const std::string preset = j.value("preset", std::string());
  if (!preset.empty() && !is_preset(preset)) throw ContractError("bench spec: unknown preset '" + preset + "'");
  const json shared = j.value("run", json::object());

  if (!j.contains("instances") || !j.at("instances").is_array() || j.at("instances").empty())
    throw ContractError("bench spec: 'instances' must be a non-empty array");
  if (!j.contains("algorithms") || !j.at("algorithms").is_array() || j.at("algorithms").empty())
    throw ContractError("bench spec: 'algorithms' must be a non-empty array");
  for (const json& e : j.at("instances")) spec.instances.push_back(parse_instance(e, base_dir));
  for (const json& e : j.at("algorithms")) spec.algorithms.push_back(parse_algorithm_entry(e, preset, shared));
  return spec;
}

RunConfig make_run_config(const AlgorithmEntry& entry, Family family, std::uint64_t seed) {
  RunConfig c;
  c.algorithm = entry.algorithm;
  c.family = family;
  if (!entry.preset.empty()) apply_preset(c, entry.preset, family);
  apply_config_json(c, entry.overrides, {"seed"});
  c.algorithm = entry.algorithm;
  c.family = family;
  c.seed = seed;
  return c;
}

IntegerProgram build_instance(const InstanceEntry& e, std::size_t repetition) {
  if (e.path) return read_instance(*e.path).program;
  const std::uint64_t shift = e.vary_seed ? repetition : 0;
  if (e.family == Family::SC) {
    SetCoverSpec s = e.set_cover;
    s.seed += shift;
    return gen_sc(s);
  }
  GraphSpec g = e.graph;
  g.seed += shift;
  switch (e.family) {
    case Family::IS: return gen_is(g);
    case Family::MVC: return gen_mvc(g);
    case Family::MaxCut: return gen_maxcut(g);
    default: throw ContractError("build_instance: family cannot be generated");
  }
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs) {
  std::vector<SummaryRow> rows;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : runs) {
    auto [it, fresh] = index.try_emplace({r.instance, r.algorithm}, rows.size());
    if (fresh) {
      SummaryRow row;
      row.instance = r.instance;
      row.algorithm = r.algorithm;
      rows.push_back(row);
      groups.emplace_back();
    }
    groups[it->second].push_back(&r);
  }
  for (std::size_t g = 0; g < rows.size(); ++g) {
    SummaryRow& row = rows[g];
    std::vector<double> values;
    double k_sum = 0.0, it_sum = 0.0;
    for (const RunRecord* r : groups[g]) {
      row.max_elapsed = std::max(row.max_elapsed, r->elapsed);
      if (!r->ok) {
        ++row.failed;
        continue;
      }
      row.sense = r->sense;
      values.push_back(r->objective);
      k_sum += static_cast<double>(r->final_k);
      it_sum += static_cast<double>(r->iterations);
    }
    row.runs = values.size();
    if (values.empty()) {
      row.mean = row.std_dev = row.best = row.worst = std::nan("");
      row.mean_final_k = row.mean_iterations = std::nan("");
      continue;
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    const double n = static_cast<double>(values.size());
    row.mean = sum / n;
    row.std_dev = sample_std(values, row.mean);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    row.best = row.sense == Sense::Maximize ? *hi : *lo;
    row.worst = row.sense == Sense::Maximize ? *lo : *hi;
    row.mean_final_k = k_sum / n;
    row.mean_iterations = it_sum / n;
  }
  return rows;
}

std::optional<std::size_t> best_row(const std::vector<const SummaryRow*>& rows) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i]->runs == 0) continue;
    if (!best || strictly_better(rows[i]->sense, rows[i]->mean, rows[*best]->mean)) best = i;
  }
  return best;
}

void write_summary_csv(const fs::path& path, const std::vector<SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "instance,algorithm,sense,runs,failed,mean,std,best,worst,mean_final_k,mean_iterations,max_elapsed\n";
  for (const SummaryRow& r : rows) {
    out << r.instance << ',' << r.algorithm << ',' << to_string(r.sense) << ',' << r.runs << ',' << r.failed << ','
        << format_double(r.mean) << ',' << format_double(r.std_dev) << ',' << format_double(r.best) << ','
        << format_double(r.worst) << ',' << format_double(r.mean_final_k) << ','
        << format_double(r.mean_iterations) << ',' << format_double(r.max_elapsed) << '\n';
  }
}

std::string format_grid(const std::vector<SummaryRow>& rows) {
  std::vector<std::string> instances, algorithms;
  for (const SummaryRow& r : rows) {
    if (std::find(instances.begin(), instances.end(), r.instance) == instances.end()) instances.push_back(r.instance);
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end())
      algorithms.push_back(r.algorithm);
  }
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"instance"};
  header.insert(header.end(), algorithms.begin(), algorithms.end());
  table.push_back(header);
  for (const std::string& inst : instances) {
    std::vector<const SummaryRow*> cells(algorithms.size(), nullptr);
    std::vector<const SummaryRow*> present;
    for (const SummaryRow& r : rows)
      if (r.instance == inst) {
        const auto a = std::find(algorithms.begin(), algorithms.end(), r.algorithm) - algorithms.begin();
        cells[static_cast<std::size_t>(a)] = &r;
      }
    for (const SummaryRow* c : cells)
      if (c) present.push_back(c);
    const auto best = best_row(present);
    const SummaryRow* best_ptr = best ? present[*best] : nullptr;

    std::vector<std::string> line{inst};
    for (const SummaryRow* c : cells) {
      if (!c) {
        line.emplace_back("-");
      } else if (c->runs == 0) {
        line.emplace_back("failed");
      } else {
        std::string cell = fixed(c->mean) + " ± " + fixed(c->std_dev);
        if (c->failed) cell += " (" + std::to_string(c->failed) + " failed)";
        if (best_ptr && !strictly_better(c->sense, best_ptr->mean, c->mean)) cell += " *";
        line.push_back(cell);
      }
    }
    table.push_back(line);
  }

  auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80;
    return w;
  };
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : table)
    for (std::size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], width(line[i]));
  std::ostringstream os;
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i];
      if (i + 1 < line.size()) os << std::string(widths[i] - width(line[i]) + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

BenchOutcome run_bench(const BenchSpec& spec, std::ostream* log) {
  fs::create_directories(spec.output_dir);
  BenchOutcome outcome;
  std::mutex mu;
  const std::size_t total = spec.instances.size() * spec.algorithms.size() * spec.repetitions;
  std::size_t done = 0;

  for (const InstanceEntry& inst : spec.instances) {
    std::vector<std::shared_ptr<const IntegerProgram>> programs(spec.repetitions);
    for (std::size_t r = 0; r < spec.repetitions; ++r) {
      if (r > 0 && (inst.path || !inst.vary_seed)) {
        programs[r] = programs[0];
        continue;
      }
      programs[r] = std::make_shared<const IntegerProgram>(build_instance(inst, r));
    }

    struct Task {
      const AlgorithmEntry* algo;
      std::size_t rep;
    };
    std::vector<Task> tasks;
    for (std::size_t r = 0; r < spec.repetitions; ++r)
      for (const AlgorithmEntry& a : spec.algorithms) tasks.push_back({&a, r});
    std::vector<RunRecord> records(tasks.size());

    auto execute = [&](std::size_t i) {
      const Task& task = tasks[i];
      const IntegerProgram& p = *programs[task.rep];
      RunRecord rec;
      rec.instance = inst.label;
      rec.algorithm = task.algo->label;
      rec.repetition = task.rep;
      rec.seed = spec.base_seed + task.rep;
      rec.sense = p.sense();
      rec.run_dir = spec.output_dir / safe_label(inst.label) / safe_label(task.algo->label) /
                    ("rep" + std::to_string(task.rep));
      fs::create_directories(rec.run_dir);
      json result;
      const auto start = std::chrono::steady_clock::now();
      try {
        const RunConfig config = make_run_config(*task.algo, inst.family, rec.seed);
        rec.time_budget = config.total_time.count();
        rec.iteration_cap = config.algorithm == Algorithm::SolverOnly ? 0.0 : config.iteration_cap().count();
        RunResult rr = run(p, config);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rec.ok = true;
        rec.objective = rr.best.objective;
        rec.iterations = rr.trace.size();
        rec.final_k = rr.final_k;
        rec.elapsed = rr.elapsed.count();
        write_trace_csv_file(rec.run_dir / "trace.csv", rr.trace);
        result = result_to_json(p, config, rr);
        result["wall_time"] = wall;
      } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
        rec.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result = json{{"instance", p.name()}, {"status", "failed"}, {"error", rec.error},
                      {"algorithm", to_string(task.algo->algorithm)}, {"sense", to_string(p.sense())},
                      {"elapsed", rec.elapsed}};
      }
      result["label"] = rec.algorithm;
      result["bench_instance"] = rec.instance;
      result["repetition"] = rec.repetition;
      result["seed"] = rec.seed;
      write_json_file(rec.run_dir / "result.json", result);

      std::lock_guard lock(mu);
      ++done;
      if (log) {
        *log << "[" << done << "/" << total << "] " << rec.instance << " " << rec.algorithm << " rep " << rec.repetition
             << ": ";
        if (rec.ok)
          *log << format_double(rec.objective) << " (" << fixed(rec.elapsed) << " s, " << rec.iterations
               << " iterations)\n";
        else
          *log << "FAILED: " << rec.error << '\n';
        log->flush();
      }
      records[i] = std::move(rec);
    };

    if (spec.serial || spec.workers <= 1) {
      for (std::size_t i = 0; i < tasks.size(); ++i) execute(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < std::min(spec.workers, tasks.size()); ++w)
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < tasks.size(); i = next++) execute(i);
        });
      for (auto& th : pool) th.join();
    }
    outcome.runs.insert(outcome.runs.end(), records.begin(), records.end());
  }

  outcome.summary = summarize(outcome.runs);
  write_summary_csv(spec.output_dir / "summary.csv", outcome.summary);
  std::ofstream(spec.output_dir / "grid.txt") << format_grid(outcome.summary);
  return outcome;
}

}  // namespace acp
