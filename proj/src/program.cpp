#include "acp/program.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace acp {

namespace {

void drop_zero_terms(std::vector<Term>& terms) {
  std::erase_if(terms, [](const Term& t) { return t.coef == 0.0; });
}

void check_terms(const std::vector<Term>& terms, std::size_t n, std::vector<char>& seen,
                 const std::string& where) {
  for (const Term& t : terms) {
    if (t.var >= n)
      throw ContractError(where + ": variable index " + std::to_string(t.var) + " out of range");
    if (!std::isfinite(t.coef)) throw ContractError(where + ": non-finite coefficient");
    if (seen[t.var]) throw ContractError(where + ": duplicate variable index " + std::to_string(t.var));
    seen[t.var] = 1;
  }
  for (const Term& t : terms) seen[t.var] = 0;
}

}  // namespace

IntegerProgram::IntegerProgram(std::string name, Sense sense, std::vector<VariableDef> variables,
                               std::vector<Term> objective,
                               std::vector<LinearConstraint> constraints)
    : name_(std::move(name)),
      sense_(sense),
      variables_(std::move(variables)),
      objective_(std::move(objective)),
      constraints_(std::move(constraints)) {
  const std::size_t n = variables_.size();
  for (std::size_t j = 0; j < n; ++j) {
    const VariableDef& v = variables_[j];
    if (!(v.lower <= v.upper))
      throw ContractError("variable " + v.name + ": lower bound exceeds upper bound");
  }

  std::vector<char> seen(n, 0);
  drop_zero_terms(objective_);
  std::stable_sort(objective_.begin(), objective_.end(),
                   [](const Term& a, const Term& b) { return a.var < b.var; });
  check_terms(objective_, n, seen, "objective");
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    LinearConstraint& c = constraints_[i];
    drop_zero_terms(c.terms);
    if (c.terms.empty())
      throw ContractError("constraint " + std::to_string(i) + " has no nonzero coefficient");
    check_terms(c.terms, n, seen, "constraint " + std::to_string(i));
  }

  dense_objective_.assign(n, 0.0);
  for (const Term& t : objective_) dense_objective_[t.var] = t.coef;

  column_start_.assign(n + 1, 0);
  for (const auto& c : constraints_)
    for (const Term& t : c.terms) ++column_start_[t.var + 1];
  for (std::size_t j = 0; j < n; ++j) column_start_[j + 1] += column_start_[j];
  column_rows_.resize(column_start_[n]);
  std::vector<std::size_t> fill(column_start_.begin(), column_start_.end() - 1);
  for (std::size_t i = 0; i < constraints_.size(); ++i)
    for (const Term& t : constraints_[i].terms) column_rows_[fill[t.var]++] = i;
}

bool IntegerProgram::all_binary() const {
  return std::all_of(variables_.begin(), variables_.end(),
                     [](const VariableDef& v) { return v.is_binary(); });
}

double evaluate_objective(const IntegerProgram& p, std::span<const double> x) {
  if (x.size() != p.num_variables())
    throw ContractError("evaluate_objective: value vector has " + std::to_string(x.size()) +
                        " entries, program has " + std::to_string(p.num_variables()) +
                        " variables");
  double sum = 0.0;
  for (const Term& t : p.objective()) sum += t.coef * x[t.var];
  return sum;
}

std::vector<Violation> check_feasibility(const IntegerProgram& p, std::span<const double> x,
                                         double tol) {
  if (x.size() != p.num_variables())
    throw ContractError("check_feasibility: value vector length mismatch");
  if (tol < 0) throw ContractError("check_feasibility: negative tolerance");

  std::vector<Violation> out;
  for (std::size_t i = 0; i < p.num_constraints(); ++i) {
    const LinearConstraint& c = p.constraint(i);
    double lhs = 0.0;
    for (const Term& t : c.terms) lhs += t.coef * x[t.var];
    double excess = 0.0;
    switch (c.cmp) {
      case Comparator::LessEqual: excess = lhs - c.rhs; break;
      case Comparator::GreaterEqual: excess = c.rhs - lhs; break;
      case Comparator::Equal: excess = std::abs(lhs - c.rhs); break;
    }
    if (excess > tol || std::isnan(excess))
      out.push_back({Violation::Kind::Constraint, i, excess});
  }
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    const VariableDef& v = p.variable(j);
    const double val = x[j];
    if (val < v.lower - tol || val > v.upper + tol || std::isnan(val)) {
      out.push_back({Violation::Kind::Bound, j,
                     val < v.lower ? v.lower - val : val - v.upper});
      continue;
    }
    if (v.integral) {
      const double frac = std::abs(val - std::round(val));
      if (frac > tol) out.push_back({Violation::Kind::Integrality, j, frac});
    }
  }
  return out;
}

Assignment Assignment::evaluate(const IntegerProgram& p, std::vector<double> values) {
  Assignment a;
  a.objective = evaluate_objective(p, values);
  a.feasible = is_feasible(p, values);
  a.values = std::move(values);
  return a;
}

std::vector<double> ReducedProgram::restrict(std::span<const double> parent_values) const {
  std::vector<double> out(free_to_parent.size());
  for (std::size_t j = 0; j < free_to_parent.size(); ++j) out[j] = parent_values[free_to_parent[j]];
  return out;
}

ReducedProgram fix_variables(const IntegerProgram& p, std::span<const std::size_t> fixed,
                             std::span<const double> values) {
  const std::size_t n = p.num_variables();
  if (values.size() != n) throw ContractError("fix_variables: value vector length mismatch");

  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> reduced_index(n, kFree);
  std::vector<char> is_fixed(n, 0);
  for (std::size_t j : fixed) {
    if (j >= n) throw ContractError("fix_variables: fixed index out of range");
    const VariableDef& v = p.variable(j);
    const double val = values[j];
    if (val < v.lower - kFeasibilityTol || val > v.upper + kFeasibilityTol ||
        (v.integral && std::abs(val - std::round(val)) > kFeasibilityTol))
      throw ContractError("fix_variables: value for " + v.name + " violates its domain");
    is_fixed[j] = 1;
  }

  ReducedProgram out;
  std::vector<VariableDef> vars;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_fixed[j]) continue;
    reduced_index[j] = out.free_to_parent.size();
    out.free_to_parent.push_back(j);
    vars.push_back(p.variable(j));
  }

  std::vector<Term> objective;
  for (const Term& t : p.objective()) {
    if (is_fixed[t.var])
      out.objective_offset += t.coef * values[t.var];
    else
      objective.push_back({reduced_index[t.var], t.coef});
  }

  std::vector<LinearConstraint> constraints;
  for (std::size_t i = 0; i < p.num_constraints(); ++i) {
    const LinearConstraint& c = p.constraint(i);
    LinearConstraint r{{}, c.cmp, c.rhs};
    double fixed_part = 0.0;
    for (const Term& t : c.terms) {
      if (is_fixed[t.var])
        fixed_part += t.coef * values[t.var];
      else
        r.terms.push_back({reduced_index[t.var], t.coef});
    }
    if (r.terms.empty()) {
      bool ok = true;
      switch (c.cmp) {
        case Comparator::LessEqual: ok = fixed_part <= c.rhs + kFeasibilityTol; break;
        case Comparator::GreaterEqual: ok = fixed_part >= c.rhs - kFeasibilityTol; break;
        case Comparator::Equal: ok = std::abs(fixed_part - c.rhs) <= kFeasibilityTol; break;
      }
      if (!ok)
        throw InfeasibleReductionError("fix_variables: constraint " + std::to_string(i) +
                                       " is violated by the fixed values");
      continue;
    }
    r.rhs = c.rhs - fixed_part;
    constraints.push_back(std::move(r));
  }

  out.program = IntegerProgram(p.name() + "/reduced", p.sense(), std::move(vars),
                               std::move(objective), std::move(constraints));
  return out;
}

std::vector<double> lift_solution(std::span<const double> reduced_solution,
                                  std::span<const std::size_t> free_to_parent,
                                  std::span<const double> parent_values) {
  if (reduced_solution.size() != free_to_parent.size())
    throw ContractError("lift_solution: reduced solution length mismatch");
  std::vector<double> out(parent_values.begin(), parent_values.end());
  for (std::size_t j = 0; j < free_to_parent.size(); ++j) out[free_to_parent[j]] = reduced_solution[j];
  return out;
}

const char* to_string(Sense s) { return s == Sense::Maximize ? "maximize" : "minimize"; }

const char* to_string(Comparator c) {
  switch (c) {
    case Comparator::LessEqual: return "le";
    case Comparator::GreaterEqual: return "ge";
    case Comparator::Equal: return "eq";
  }
  return "?";
}

}  // namespace acp
