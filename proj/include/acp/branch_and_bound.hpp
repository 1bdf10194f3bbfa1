#pragma once

#include <cstdint>
#include <string>

#include "acp/solver.hpp"

namespace acp {

struct BranchAndBoundOptions {
  /// Stop after this many nodes (0 = unlimited). A deterministic work budget,
  /// unlike the wall-clock limit.
  std::uint64_t node_limit = 0;
  /// Nodes between deadline checks.
  std::uint64_t deadline_check_interval = 1024;
  /// Stop after this many consecutive nodes without a new incumbent
  /// (0 = never). The result is then reported as not proven.
  std::uint64_t stall_node_limit = 0;
};

/// Depth-first branch-and-bound for pure binary linear programs.
///
/// Pruning combines bound propagation over every row (infeasible rows cut the
/// node, implied values are fixed) with the optimistic-completion objective
/// bound: fixed contribution plus every remaining coefficient that can still
/// improve the objective. When all objective coefficients are integers the
/// bound must beat the incumbent by a full unit.
///
/// Variables with zero objective coefficient are branched first, most
/// constrained first, taking the child whose propagated bound is better. The
/// rest follow by descending |objective coefficient|, then fewest constraint
/// appearances, then index, taking the improving value first.
///
/// Variables whose bounds are equal and in {0, 1} count as fixed. Any other
/// non-binary variable makes the request unsupported (SolverError).
SolveResult branch_and_bound(const SolveRequest& request, const BranchAndBoundOptions& options = {});

class BranchAndBound : public SubSolver {
 public:
  explicit BranchAndBound(BranchAndBoundOptions options = {}) : options_(options) {}

  SolveResult solve(const SolveRequest& request) override { return branch_and_bound(request, options_); }
  std::string name() const override { return "builtin"; }

 private:
  BranchAndBoundOptions options_;
};

/// True when every variable is binary or fixed at 0 or 1.
bool supported_by_branch_and_bound(const IntegerProgram& p);

}  // namespace acp
