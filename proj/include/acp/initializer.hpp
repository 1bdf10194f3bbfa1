#pragma once

#include <stdexcept>

#include "acp/instances.hpp"
#include "acp/program.hpp"
#include "acp/solver.hpp"

namespace acp {

class NoInitialSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hand-built starting point: IS and MAXCUT all zeros, MVC and SC all ones.
/// Generic tries every variable at its lower bound, then at its upper bound.
Assignment trivial_feasible(const IntegerProgram& p, Family family_hint);

/// Best feasible point the solver finds on the full program within `budget`.
Assignment solver_feasible(const IntegerProgram& p, SubSolver& solver, Seconds budget);

}  // namespace acp
