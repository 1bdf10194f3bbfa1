#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acp/program.hpp"

namespace acp {

using Seconds = std::chrono::duration<double>;

enum class SolveMode { Optimize, FeasibilityFirst };

enum class SolveStatus { Optimal, FeasibleTimeLimit, Infeasible, NoSolutionTimeLimit, SolverError };

const char* to_string(SolveStatus s);
std::optional<SolveStatus> parse_solve_status(std::string_view s);

inline bool has_solution(SolveStatus s) {
  return s == SolveStatus::Optimal || s == SolveStatus::FeasibleTimeLimit;
}

struct SolveRequest {
  const IntegerProgram& program;
  std::optional<std::vector<double>> warm_start;
  Seconds time_limit{1.0};
  SolveMode mode = SolveMode::Optimize;
};

struct SolveResult {
  SolveStatus status = SolveStatus::SolverError;
  std::optional<std::vector<double>> solution;
  std::optional<double> objective;
  std::uint64_t nodes_explored = 0;
  Seconds elapsed{0.0};
  std::string diagnostic;
};

/// The subroutine solver contract. One instance serves one solve at a time.
/// Implementations report failures through SolveStatus::SolverError rather
/// than throwing.
class SubSolver {
 public:
  virtual ~SubSolver() = default;
  virtual SolveResult solve(const SolveRequest& request) = 0;
  virtual std::string name() const = 0;
};

}  // namespace acp
