#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acp/branch_and_bound.hpp"
#include "acp/external_solver.hpp"
#include "acp/instances.hpp"
#include "acp/program.hpp"
#include "acp/solver.hpp"

namespace acp {

/// The solo solver returned nothing usable (or the program is infeasible).
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { ACP, ACP2, LNS, SolverOnly };
enum class Repartition { EveryIteration, OnKChange };
enum class SolverKind { Builtin, External };

const char* to_string(Algorithm a);
const char* to_string(Repartition r);
const char* to_string(SolverKind s);
std::optional<Algorithm> parse_algorithm(std::string_view s);
std::optional<Repartition> parse_repartition(std::string_view s);
std::optional<SolverKind> parse_solver_kind(std::string_view s);

struct SolverConfig {
  SolverKind kind = SolverKind::Builtin;
  BranchAndBoundOptions builtin;
  ExternalSolverConfig external;
};

std::unique_ptr<SubSolver> make_solver(const SolverConfig& config);

#ifdef NDEBUG
inline constexpr std::size_t kDefaultCheckEvery = 10;
#else
inline constexpr std::size_t kDefaultCheckEvery = 1;
#endif

struct RunConfig {
  Seconds total_time{10.0};
  double p = 0.1;
  std::size_t k0 = 2;
  double epsilon = 0.01;
  std::size_t t = 3;
  std::uint64_t seed = 1;
  Algorithm algorithm = Algorithm::ACP;
  Repartition repartition = Repartition::EveryIteration;
  SolverConfig solver;
  /// Starting-point construction for ACP and LNS.
  Family family = Family::Generic;
  /// ACP2 initial solve budget; p * total_time when unset.
  std::optional<Seconds> init_budget;
  /// Stop after this many iterations (0 = only the clock stops the run).
  std::size_t max_iterations = 0;
  /// Re-verify the incumbent every this many iterations (0 = never).
  std::size_t check_every = kDefaultCheckEvery;
  /// Stop once an iteration has solved the whole program to optimality.
  bool stop_when_proven = true;

  void validate() const;
  Seconds iteration_cap() const { return total_time * p; }
};

struct AdaptiveState {
  std::size_t k = 1;
  std::size_t stall_count = 0;
  double epsilon = 0.0;
  std::size_t t = 1;
  std::size_t k_min = 1;
};

/// True when going from f_before to f_after improves by less than
/// epsilon * max(|f_before|, 1).
bool is_stall(double epsilon, double f_before, double f_after, Sense sense);

/// One step of the block-count rule: t consecutive stalls lower k by one
/// (never below k_min) and reset the counter.
AdaptiveState block_update(AdaptiveState state, double f_before, double f_after, Sense sense);

struct TraceEvent {
  std::size_t iteration = 0;
  double wall_clock = 0.0;  ///< seconds since the run started
  std::size_t k = 0;
  std::size_t block = 0;
  std::size_t free_var_count = 0;
  SolveStatus sub_status = SolveStatus::SolverError;
  double objective_before = 0.0;
  double objective_after = 0.0;
  bool accepted = false;
  std::size_t stall_count = 0;
};

struct FixOptimizeResult {
  Assignment assignment;
  SolveStatus status = SolveStatus::SolverError;
  bool accepted = false;
  std::string diagnostic;
};

/// Frees `x_sub` (sorted variable indices), fixes everything else at the
/// incumbent, solves the sub-program warm-started at the incumbent and keeps
/// the lifted answer when it is not worse.
FixOptimizeResult fix_optimize(const IntegerProgram& p, const Assignment& incumbent,
                               const std::vector<std::size_t>& x_sub, SubSolver& solver, Seconds time_limit);

struct RunResult {
  Algorithm algorithm = Algorithm::ACP;
  Assignment best;
  double initial_objective = 0.0;
  std::vector<TraceEvent> trace;
  std::size_t final_k = 0;
  Seconds elapsed{0.0};
  bool proven_optimal = false;
  std::vector<std::string> diagnostics;
};

RunResult run_acp(const IntegerProgram& p, const RunConfig& config);
RunResult run_lns(const IntegerProgram& p, const RunConfig& config);
RunResult run_solver_only(const IntegerProgram& p, const RunConfig& config);

/// Dispatches on config.algorithm.
RunResult run(const IntegerProgram& p, const RunConfig& config);

}  // namespace acp
