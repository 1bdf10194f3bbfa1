#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acp/driver.hpp"
#include "acp/instances.hpp"

namespace acp {

struct InstanceEntry {
  std::string label;
  Family family = Family::Generic;
  std::optional<std::filesystem::path> path;  ///< load from file instead of generating
  GraphSpec graph;
  SetCoverSpec set_cover;
  /// Generate repetition r from seed + r rather than reusing one instance.
  bool vary_seed = false;
};

struct AlgorithmEntry {
  std::string label;
  Algorithm algorithm = Algorithm::ACP;
  std::string preset;         ///< empty: no preset
  nlohmann::json overrides;   ///< applied after the preset
};

struct BenchSpec {
  std::vector<InstanceEntry> instances;
  std::vector<AlgorithmEntry> algorithms;
  std::size_t repetitions = 5;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "bench_out";
  bool serial = true;
  std::size_t workers = 1;
};

/// Relative instance paths resolve against `base_dir`.
BenchSpec parse_bench_spec(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// Config for one cell: preset, then overrides, then the repetition seed.
RunConfig make_run_config(const AlgorithmEntry& entry, Family family, std::uint64_t seed);

IntegerProgram build_instance(const InstanceEntry& entry, std::size_t repetition);

struct RunRecord {
  std::string instance;
  std::string algorithm;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  Sense sense = Sense::Maximize;
  double objective = 0.0;
  std::size_t iterations = 0;
  std::size_t final_k = 0;
  double elapsed = 0.0;
  double time_budget = 0.0;
  double iteration_cap = 0.0;
  std::filesystem::path run_dir;
};

struct SummaryRow {
  std::string instance;
  std::string algorithm;
  Sense sense = Sense::Maximize;
  std::size_t runs = 0;
  std::size_t failed = 0;
  double mean = 0.0;
  double std_dev = 0.0;  ///< sample standard deviation, 0 for one run
  double best = 0.0;
  double worst = 0.0;
  double mean_final_k = 0.0;
  double mean_iterations = 0.0;
  double max_elapsed = 0.0;
};

/// Rows in order of first appearance of (instance, algorithm).
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& runs);

/// Index of the best row among `rows` (same instance), or none when no row
/// has a completed run.
std::optional<std::size_t> best_row(const std::vector<const SummaryRow*>& rows);

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);

/// One line per instance, one "mean ± std" column per algorithm; the best
/// mean per instance carries a trailing '*'.
std::string format_grid(const std::vector<SummaryRow>& rows);

struct BenchOutcome {
  std::vector<RunRecord> runs;
  std::vector<SummaryRow> summary;
};

/// Runs every instance x algorithm x repetition cell, writing
/// <out>/<instance>/<algorithm>/rep<r>/{trace.csv,result.json}, then
/// summary.csv and grid.txt. Failed runs are recorded and the matrix goes on.
BenchOutcome run_bench(const BenchSpec& spec, std::ostream* log = nullptr);

}  // namespace acp
