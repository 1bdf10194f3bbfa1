#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "acp/solver.hpp"

namespace acp {

enum class SolutionFormat {
  Plain,   ///< `name value` per line; `#` lines and a `status <word>` line allowed
  Gurobi,  ///< Gurobi .sol: `# ...` header lines, then `name value`
};

std::optional<SolutionFormat> parse_solution_format(std::string_view s);
const char* to_string(SolutionFormat f);

struct ExternalSolverConfig {
  /// Shell command. Placeholders: {lp_file}, {sol_file} (shell-quoted paths)
  /// and {time_limit_s} (seconds, decimal).
  std::string command_template;
  /// Parent of the per-solve scratch directory; empty means the system temp dir.
  std::filesystem::path working_dir;
  SolutionFormat format = SolutionFormat::Plain;
  /// The process is killed at time_limit * (1 + grace_fraction).
  double grace_fraction = 0.1;
  bool keep_files = false;
};

struct ParsedSolution {
  std::unordered_map<std::string, double> values;
  bool optimal_marker = false;
  bool infeasible_marker = false;
};

ParsedSolution parse_solution_text(std::string_view text, SolutionFormat format);

std::string shell_quote(std::string_view s);
std::string expand_command(std::string_view command_template, const std::filesystem::path& lp_file,
                           double time_limit_s, const std::filesystem::path& sol_file);

/// Runs an external MIP solver through LP-file interchange. Warm starts are
/// not passed to the process; the warm start is returned instead whenever
/// the external answer is missing or worse.
class ExternalSolver : public SubSolver {
 public:
  explicit ExternalSolver(ExternalSolverConfig config) : config_(std::move(config)) {}

  SolveResult solve(const SolveRequest& request) override;
  std::string name() const override { return "external"; }

  const ExternalSolverConfig& config() const { return config_; }

 private:
  ExternalSolverConfig config_;
};

}  // namespace acp
