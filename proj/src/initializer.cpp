#include "acp/initializer.hpp"

#include <string>

namespace acp {

namespace {

Assignment constant(const IntegerProgram& p, double v) {
  return Assignment::evaluate(p, std::vector<double>(p.num_variables(), v));
}

Assignment at_bounds(const IntegerProgram& p, bool upper) {
  std::vector<double> x(p.num_variables());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = upper ? p.variable(j).upper : p.variable(j).lower;
  return Assignment::evaluate(p, std::move(x));
}

}  // namespace

Assignment trivial_feasible(const IntegerProgram& p, Family family_hint) {
  Assignment a;
  switch (family_hint) {
    case Family::IS:
    case Family::MaxCut:
      a = constant(p, 0.0);
      break;
    case Family::MVC:
    case Family::SC:
      a = constant(p, 1.0);
      break;
    case Family::Generic: {
      a = at_bounds(p, false);
      if (!a.feasible) a = at_bounds(p, true);
      if (!a.feasible)
        throw NoInitialSolutionError("no trivial feasible point for " + p.name() +
                                     ": neither all-lower nor all-upper bounds satisfy the constraints");
      return a;
    }
  }
  if (!a.feasible)
    throw NoInitialSolutionError(std::string("trivial ") + to_string(family_hint) + " start is infeasible for " +
                                 p.name());
  return a;
}

Assignment solver_feasible(const IntegerProgram& p, SubSolver& solver, Seconds budget) {
  if (!(budget.count() > 0)) throw ContractError("solver_feasible: budget must be positive");
  SolveRequest req{p, std::nullopt, budget, SolveMode::FeasibilityFirst};
  SolveResult r = solver.solve(req);
  if (!r.solution) {
    std::string msg = "no feasible solution in budget (" + std::string(to_string(r.status)) + ")";
    if (!r.diagnostic.empty()) msg += ": " + r.diagnostic;
    throw NoInitialSolutionError(msg);
  }
  Assignment a = Assignment::evaluate(p, std::move(*r.solution));
  if (!a.feasible) throw NoInitialSolutionError(solver.name() + " returned an infeasible starting point");
  return a;
}

}  // namespace acp
