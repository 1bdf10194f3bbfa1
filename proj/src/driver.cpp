#include "acp/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "acp/initializer.hpp"
#include "acp/partition.hpp"
#include "acp/rng.hpp"

namespace acp {

namespace {

using Clock = std::chrono::steady_clock;

Seconds since(Clock::time_point start) { return Clock::now() - start; }

void check_incumbent(const IntegerProgram& p, const Assignment& a, std::size_t iteration) {
  if (!is_feasible(p, a.values))
    throw ContractError("incumbent infeasible after iteration " + std::to_string(iteration));
}

struct Loop {
  const IntegerProgram& p;
  const RunConfig& config;
  Clock::time_point start;
  std::unique_ptr<SubSolver> solver;
  RunResult result;

  bool out_of_budget(std::size_t iteration) const {
    if (config.max_iterations != 0 && iteration >= config.max_iterations) return true;
    return since(start) >= config.total_time;
  }

  Seconds iteration_limit() const {
    return std::min(config.iteration_cap(), config.total_time - since(start));
  }

  void record(TraceEvent ev, const FixOptimizeResult& fo) {
    ev.wall_clock = since(start).count();
    ev.sub_status = fo.status;
    ev.objective_after = fo.assignment.objective;
    ev.accepted = fo.accepted;
    if (!fo.diagnostic.empty())
      result.diagnostics.push_back("iteration " + std::to_string(ev.iteration) + ": " + fo.diagnostic);
    result.trace.push_back(ev);
    result.best = fo.assignment;
    const std::size_t every = config.check_every;
    if (every != 0 && (ev.iteration + 1) % every == 0) check_incumbent(p, result.best, ev.iteration);
  }

  bool proven(std::size_t free_count, SolveStatus status) const {
    return config.stop_when_proven && free_count == p.num_variables() && status == SolveStatus::Optimal;
  }
};

ConstraintPartition draw_partition(const IntegerProgram& p, std::size_t k, Rng& rng) {
  if (p.num_constraints() == 0) return ConstraintPartition{1, {{}}};
  return partition_constraints(p, k, rng);
}

}  // namespace

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ACP: return "acp";
    case Algorithm::ACP2: return "acp2";
    case Algorithm::LNS: return "lns";
    case Algorithm::SolverOnly: return "solver_only";
  }
  return "?";
}

const char* to_string(Repartition r) { return r == Repartition::EveryIteration ? "every" : "on-k-change"; }

const char* to_string(SolverKind s) { return s == SolverKind::Builtin ? "builtin" : "external"; }

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "acp") return Algorithm::ACP;
  if (s == "acp2") return Algorithm::ACP2;
  if (s == "lns") return Algorithm::LNS;
  if (s == "solver_only" || s == "solver-only" || s == "solver") return Algorithm::SolverOnly;
  return std::nullopt;
}

std::optional<Repartition> parse_repartition(std::string_view s) {
  if (s == "every" || s == "every_iteration") return Repartition::EveryIteration;
  if (s == "on-k-change" || s == "on_k_change") return Repartition::OnKChange;
  return std::nullopt;
}

std::optional<SolverKind> parse_solver_kind(std::string_view s) {
  if (s == "builtin") return SolverKind::Builtin;
  if (s == "external") return SolverKind::External;
  return std::nullopt;
}

std::unique_ptr<SubSolver> make_solver(const SolverConfig& config) {
  if (config.kind == SolverKind::External) return std::make_unique<ExternalSolver>(config.external);
  return std::make_unique<BranchAndBound>(config.builtin);
}

void RunConfig::validate() const {
  if (!(total_time.count() > 0)) throw ContractError("run config: total_time must be positive");
  if (!(p > 0 && p <= 1)) throw ContractError("run config: p must lie in (0, 1]");
  if (k0 < 1) throw ContractError("run config: k0 must be at least 1");
  if (!(epsilon >= 0)) throw ContractError("run config: epsilon must be non-negative");
  if (t < 1) throw ContractError("run config: t must be at least 1");
  if (init_budget && !(init_budget->count() > 0)) throw ContractError("run config: init budget must be positive");
  if (solver.kind == SolverKind::External && solver.external.command_template.empty())
    throw ContractError("run config: external solver needs a command template");
}

bool is_stall(double epsilon, double f_before, double f_after, Sense sense) {
  const double gain = sense == Sense::Maximize ? f_after - f_before : f_before - f_after;
  return gain < epsilon * std::max(std::abs(f_before), 1.0);
}

AdaptiveState block_update(AdaptiveState state, double f_before, double f_after, Sense sense) {
  if (!is_stall(state.epsilon, f_before, f_after, sense)) {
    state.stall_count = 0;
    return state;
  }
  if (++state.stall_count >= state.t) {
    state.k = std::max(state.k > 0 ? state.k - 1 : 0, state.k_min);
    state.stall_count = 0;
  }
  return state;
}

FixOptimizeResult fix_optimize(const IntegerProgram& p, const Assignment& incumbent,
                               const std::vector<std::size_t>& x_sub, SubSolver& solver, Seconds time_limit) {
  FixOptimizeResult out{incumbent, SolveStatus::Optimal, false, {}};
  if (x_sub.empty()) return out;

  const std::vector<std::size_t> fixed = complement(p.num_variables(), x_sub);
  ReducedProgram reduced;
  try {
    reduced = fix_variables(p, fixed, incumbent.values);
  } catch (const InfeasibleReductionError& e) {
    throw ContractError(std::string("fix_optimize: incumbent violates a fixed constraint: ") + e.what());
  }

  SolveRequest req{reduced.program, reduced.restrict(incumbent.values), time_limit, SolveMode::Optimize};
  SolveResult r = solver.solve(req);
  out.status = r.status;
  out.diagnostic = r.diagnostic;
  if (!r.solution) return out;

  Assignment lifted = Assignment::evaluate(p, lift_solution(*r.solution, reduced.free_to_parent, incumbent.values));
  if (!lifted.feasible) {
    out.diagnostic = solver.name() + " returned a sub-solution that is infeasible for the full program";
    return out;
  }
  if (not_worse(p.sense(), lifted.objective, incumbent.objective)) {
    out.assignment = std::move(lifted);
    out.accepted = true;
  }
  return out;
}

RunResult run_acp(const IntegerProgram& p, const RunConfig& config) {
  config.validate();
  if (config.algorithm != Algorithm::ACP && config.algorithm != Algorithm::ACP2)
    throw ContractError("run_acp: algorithm must be acp or acp2");

  Loop loop{p, config, Clock::now(), make_solver(config.solver), {}};
  RunResult& result = loop.result;
  result.algorithm = config.algorithm;
  Rng rng(config.seed);

  if (config.algorithm == Algorithm::ACP) {
    result.best = trivial_feasible(p, config.family);
  } else {
    const Seconds budget = std::min(config.init_budget.value_or(config.iteration_cap()), config.total_time);
    result.best = solver_feasible(p, *loop.solver, budget);
  }
  result.initial_objective = result.best.objective;

  AdaptiveState state{std::clamp<std::size_t>(config.k0, 1, std::max<std::size_t>(p.num_constraints(), 1)), 0,
                      config.epsilon, config.t, 1};
  ConstraintPartition partition;
  bool stale = true;
  BlockSelector selector;

  for (std::size_t it = 0; !loop.out_of_budget(it); ++it) {
    if (stale || config.repartition == Repartition::EveryIteration) {
      partition = draw_partition(p, state.k, rng);
      stale = false;
    }
    const std::size_t block = selector.select(partition, rng);
    const std::vector<std::size_t> free = free_variables(p, partition, block);
    const double before = result.best.objective;
    const FixOptimizeResult fo = fix_optimize(p, result.best, free, *loop.solver, loop.iteration_limit());

    TraceEvent ev;
    ev.iteration = it;
    ev.k = state.k;
    ev.block = block;
    ev.free_var_count = free.size();
    ev.objective_before = before;
    state = block_update(state, before, fo.assignment.objective, p.sense());
    ev.stall_count = state.stall_count;
    if (state.k != ev.k) stale = true;
    loop.record(ev, fo);

    if (loop.proven(free.size(), fo.status)) {
      result.proven_optimal = true;
      break;
    }
  }
  result.final_k = state.k;
  result.elapsed = since(loop.start);
  check_incumbent(p, result.best, result.trace.size());
  return result;
}

RunResult run_lns(const IntegerProgram& p, const RunConfig& config) {
  config.validate();
  if (config.algorithm != Algorithm::LNS) throw ContractError("run_lns: algorithm must be lns");

  Loop loop{p, config, Clock::now(), make_solver(config.solver), {}};
  RunResult& result = loop.result;
  result.algorithm = config.algorithm;
  Rng rng(config.seed);

  result.best = trivial_feasible(p, config.family);
  result.initial_objective = result.best.objective;
  const std::size_t k = std::clamp<std::size_t>(config.k0, 1, std::max<std::size_t>(p.num_variables(), 1));
  result.final_k = k;
  if (p.num_variables() == 0) {
    result.elapsed = since(loop.start);
    return result;
  }

  Partition partition;
  BlockSelector selector;
  for (std::size_t it = 0; !loop.out_of_budget(it); ++it) {
    if (it == 0 || config.repartition == Repartition::EveryIteration) partition = partition_variables(p, k, rng);
    const std::size_t block = selector.select(partition, rng);
    std::vector<std::size_t> free = partition.blocks[block];
    std::sort(free.begin(), free.end());
    const double before = result.best.objective;
    const FixOptimizeResult fo = fix_optimize(p, result.best, free, *loop.solver, loop.iteration_limit());

    TraceEvent ev;
    ev.iteration = it;
    ev.k = k;
    ev.block = block;
    ev.free_var_count = free.size();
    ev.objective_before = before;
    loop.record(ev, fo);

    if (loop.proven(free.size(), fo.status)) {
      result.proven_optimal = true;
      break;
    }
  }
  result.elapsed = since(loop.start);
  check_incumbent(p, result.best, result.trace.size());
  return result;
}

RunResult run_solver_only(const IntegerProgram& p, const RunConfig& config) {
  config.validate();
  if (config.algorithm != Algorithm::SolverOnly) throw ContractError("run_solver_only: algorithm must be solver_only");

  const auto start = Clock::now();
  auto solver = make_solver(config.solver);
  SolveResult r = solver->solve(SolveRequest{p, std::nullopt, config.total_time, SolveMode::Optimize});
  if (!r.solution) {
    std::string msg = r.status == SolveStatus::Infeasible ? "program is infeasible" : "no feasible solution in budget";
    if (r.status == SolveStatus::SolverError) msg = "solver error: " + r.diagnostic;
    throw NoSolutionError(msg);
  }

  RunResult result;
  result.algorithm = config.algorithm;
  result.best = Assignment::evaluate(p, std::move(*r.solution));
  if (!result.best.feasible) throw NoSolutionError(solver->name() + " returned an infeasible solution");
  result.initial_objective = std::numeric_limits<double>::quiet_NaN();
  result.final_k = 1;
  result.proven_optimal = r.status == SolveStatus::Optimal;
  if (!r.diagnostic.empty()) result.diagnostics.push_back(r.diagnostic);

  TraceEvent ev;
  ev.iteration = 0;
  ev.k = 1;
  ev.block = 0;
  ev.free_var_count = p.num_variables();
  ev.sub_status = r.status;
  ev.objective_before = std::numeric_limits<double>::quiet_NaN();
  ev.objective_after = result.best.objective;
  ev.accepted = true;
  ev.stall_count = 0;
  result.elapsed = since(start);
  ev.wall_clock = result.elapsed.count();
  result.trace.push_back(ev);
  return result;
}

RunResult run(const IntegerProgram& p, const RunConfig& config) {
  switch (config.algorithm) {
    case Algorithm::ACP:
    case Algorithm::ACP2: return run_acp(p, config);
    case Algorithm::LNS: return run_lns(p, config);
    case Algorithm::SolverOnly: return run_solver_only(p, config);
  }
  throw ContractError("unknown algorithm");
}

}  // namespace acp
