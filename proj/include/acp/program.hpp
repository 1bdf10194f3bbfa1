#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acp {

/// Raised when a caller breaks an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Fixing variables produced a constraint that no free variable can repair.
class InfeasibleReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sense { Maximize, Minimize };
enum class Comparator { LessEqual, GreaterEqual, Equal };

inline constexpr double kFeasibilityTol = 1e-6;
inline constexpr double kObjectiveTol = 1e-9;

struct Term {
  std::size_t var;
  double coef;

  bool operator==(const Term&) const = default;
};

struct VariableDef {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  bool integral = true;

  bool is_binary() const { return integral && lower == 0.0 && upper == 1.0; }
  bool operator==(const VariableDef&) const = default;
};

struct LinearConstraint {
  std::vector<Term> terms;
  Comparator cmp = Comparator::LessEqual;
  double rhs = 0.0;

  bool operator==(const LinearConstraint&) const = default;
};

/// A linear integer program. Immutable once built, so a single instance can
/// be shared by concurrent runs. Constraint and variable indices never move.
class IntegerProgram {
 public:
  IntegerProgram() = default;
  IntegerProgram(std::string name, Sense sense, std::vector<VariableDef> variables,
                 std::vector<Term> objective, std::vector<LinearConstraint> constraints);

  const std::string& name() const { return name_; }
  Sense sense() const { return sense_; }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }

  const std::vector<VariableDef>& variables() const { return variables_; }
  const VariableDef& variable(std::size_t j) const { return variables_[j]; }
  const std::vector<Term>& objective() const { return objective_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const LinearConstraint& constraint(std::size_t i) const { return constraints_[i]; }

  /// Constraint indices in which variable `j` has a nonzero coefficient.
  std::span<const std::size_t> constraints_of(std::size_t j) const {
    return {column_rows_.data() + column_start_[j], column_start_[j + 1] - column_start_[j]};
  }
  /// Objective coefficient of variable `j` (0 when absent).
  double objective_coef(std::size_t j) const { return dense_objective_[j]; }

  bool all_binary() const;

  bool operator==(const IntegerProgram& other) const {
    return name_ == other.name_ && sense_ == other.sense_ && variables_ == other.variables_ &&
           objective_ == other.objective_ && constraints_ == other.constraints_;
  }

 private:
  std::string name_;
  Sense sense_ = Sense::Maximize;
  std::vector<VariableDef> variables_;
  std::vector<Term> objective_;
  std::vector<LinearConstraint> constraints_;

  std::vector<double> dense_objective_;
  std::vector<std::size_t> column_start_{0};
  std::vector<std::size_t> column_rows_;
};

/// True when `a` is strictly better than `b` under `sense` (beyond kObjectiveTol).
inline bool strictly_better(Sense sense, double a, double b) {
  return sense == Sense::Maximize ? a > b + kObjectiveTol : a < b - kObjectiveTol;
}
inline bool not_worse(Sense sense, double a, double b) { return !strictly_better(sense, b, a); }

double evaluate_objective(const IntegerProgram& p, std::span<const double> x);

struct Violation {
  enum class Kind { Constraint, Bound, Integrality };
  Kind kind;
  std::size_t index;  ///< constraint index for Constraint, variable index otherwise
  double amount;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> check_feasibility(const IntegerProgram& p, std::span<const double> x,
                                         double tol = kFeasibilityTol);

inline bool is_feasible(const IntegerProgram& p, std::span<const double> x,
                        double tol = kFeasibilityTol) {
  return check_feasibility(p, x, tol).empty();
}

/// Full variable vector with its objective and feasibility cached.
struct Assignment {
  std::vector<double> values;
  double objective = 0.0;
  bool feasible = false;

  static Assignment evaluate(const IntegerProgram& p, std::vector<double> values);
};

/// Sub-program over the free variables of a parent, with fixed variables
/// substituted out. `objective_offset` is the fixed variables' objective
/// contribution, so parent objective = reduced objective + offset.
struct ReducedProgram {
  IntegerProgram program;
  double objective_offset = 0.0;
  std::vector<std::size_t> free_to_parent;

  std::vector<double> restrict(std::span<const double> parent_values) const;
};

/// Substitutes `values[j]` for every `j` in `fixed`. `values` is a full-length
/// vector; only the entries at fixed indices are read. All-fixed constraints
/// that hold are dropped; a violated one raises InfeasibleReductionError.
ReducedProgram fix_variables(const IntegerProgram& p, std::span<const std::size_t> fixed,
                             std::span<const double> values);

/// Parent-length vector: `parent_values` on fixed indices, `reduced_solution`
/// on the free ones.
std::vector<double> lift_solution(std::span<const double> reduced_solution,
                                  std::span<const std::size_t> free_to_parent,
                                  std::span<const double> parent_values);

const char* to_string(Sense s);
const char* to_string(Comparator c);

}  // namespace acp
