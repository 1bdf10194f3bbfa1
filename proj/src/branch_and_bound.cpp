#include "acp/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace acp {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kTol = 1e-9;
constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

bool fixed_binary(const VariableDef& v) {
  return v.integral && v.lower == v.upper && (v.lower == 0.0 || v.lower == 1.0);
}

// Search state over rows in "a.x <= b" form. Objective is kept in maximize
// form regardless of the program's sense.
class Search {
 public:
  Search(const IntegerProgram& p, const BranchAndBoundOptions& options, Clock::time_point deadline)
      : program_(p), options_(options), deadline_(deadline), n_(p.num_variables()) {
    build_rows();
    build_objective();
    build_order();
  }

  void set_warm_start(const std::vector<double>& values) {
    warm_.assign(n_, -1);
    for (std::size_t j = 0; j < n_; ++j) warm_[j] = values[j] > 0.5 ? 1 : 0;
    best_ = 0.0;
    for (std::size_t j = 0; j < n_; ++j) best_ += cost_[j] * warm_[j];
    best_values_.assign(warm_.begin(), warm_.end());
    have_incumbent_ = true;
  }

  // Runs the search. Returns true when the tree was exhausted.
  bool run() {
    for (std::size_t j = 0; j < n_; ++j) {
      const VariableDef& v = program_.variable(j);
      if (fixed_binary(v) && value_[j] < 0 && !assign(j, static_cast<int>(v.lower))) return true;
    }
    if (!propagate_all()) return true;

    for (;;) {
      if (out_of_budget()) return false;
      ++nodes_;

      bool descend = !pruned_by_bound();
      std::size_t pos = stack_.empty() ? 0 : stack_.back().order_pos + 1;
      while (descend && pos < order_.size() && value_[order_[pos]] >= 0) ++pos;

      if (descend && pos == order_.size()) {
        record_leaf();
        descend = false;
      }

      if (descend) {
        const std::size_t j = order_[pos];
        const int first = first_value(j);
        stack_.push_back({trail_.size(), pos, j, 1 - first, true});
        if (assign(j, first) && propagate()) continue;
      }
      if (!backtrack()) return true;
    }
  }

  bool have_incumbent() const { return have_incumbent_; }
  std::vector<double> incumbent() const { return {best_values_.begin(), best_values_.end()}; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Frame {
    std::size_t trail_mark;
    std::size_t order_pos;
    std::size_t var;
    int alt_value;
    bool alt_pending;
  };

  void add_row(const LinearConstraint& c, double sign) {
    double maxabs = 0.0;
    for (const Term& t : c.terms) {
      row_var_.push_back(t.var);
      row_coef_.push_back(sign * t.coef);
      maxabs = std::max(maxabs, std::abs(t.coef));
    }
    row_start_.push_back(row_var_.size());
    rhs_.push_back(sign * c.rhs);
    row_maxabs_.push_back(maxabs);
  }

  void build_rows() {
    row_start_.push_back(0);
    for (const LinearConstraint& c : program_.constraints()) {
      if (c.cmp != Comparator::GreaterEqual) add_row(c, 1.0);
      if (c.cmp != Comparator::LessEqual) add_row(c, -1.0);
    }
    const std::size_t m = rhs_.size();
    min_activity_.assign(m, 0.0);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k)
        min_activity_[r] += std::min(row_coef_[k], 0.0);

    col_start_.assign(n_ + 1, 0);
    for (std::size_t j : row_var_) ++col_start_[j + 1];
    for (std::size_t j = 0; j < n_; ++j) col_start_[j + 1] += col_start_[j];
    col_row_.resize(row_var_.size());
    col_coef_.resize(row_var_.size());
    std::vector<std::size_t> fill(col_start_.begin(), col_start_.end() - 1);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
        const std::size_t slot = fill[row_var_[k]]++;
        col_row_[slot] = r;
        col_coef_[slot] = row_coef_[k];
      }
    queued_.assign(m, 0);
    value_.assign(n_, -1);
  }

  void build_objective() {
    const double sign = program_.sense() == Sense::Maximize ? 1.0 : -1.0;
    cost_.assign(n_, 0.0);
    integral_objective_ = true;
    for (const Term& t : program_.objective()) {
      cost_[t.var] = sign * t.coef;
      if (t.coef != std::round(t.coef)) integral_objective_ = false;
    }
    for (std::size_t j = 0; j < n_; ++j) open_gain_ += std::max(cost_[j], 0.0);
  }

  void build_order() {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    auto degree = [this](std::size_t j) { return col_start_[j + 1] - col_start_[j]; };
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const bool za = cost_[a] == 0.0, zb = cost_[b] == 0.0;
      if (za != zb) return za;
      if (za) return degree(a) > degree(b);
      const double ca = std::abs(cost_[a]), cb = std::abs(cost_[b]);
      if (ca != cb) return ca > cb;
      return degree(a) < degree(b);
    });
  }

  double bound() const { return fixed_gain_ + open_gain_; }

  bool pruned_by_bound() const {
    if (!have_incumbent_) return false;
    const double needed = integral_objective_ ? 1.0 - 1e-6 : kTol;
    return bound() - best_ < needed;
  }

  bool out_of_budget() {
    if (options_.node_limit != 0 && nodes_ >= options_.node_limit) return true;
    if (options_.stall_node_limit != 0 && nodes_ - last_improvement_ >= options_.stall_node_limit) return true;
    if (nodes_ % options_.deadline_check_interval == 0 && Clock::now() >= deadline_) return true;
    return false;
  }

  // Fixes j and updates row activities; queues touched rows.
  bool assign(std::size_t j, int v) {
    value_[j] = static_cast<signed char>(v);
    trail_.push_back(j);
    open_gain_ -= std::max(cost_[j], 0.0);
    fixed_gain_ += cost_[j] * v;
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      const std::size_t r = col_row_[k];
      const double a = col_coef_[k];
      min_activity_[r] += a * v - std::min(a, 0.0);
      if (!queued_[r]) {
        queued_[r] = 1;
        queue_.push_back(r);
      }
    }
    return true;
  }

  void unassign_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const std::size_t j = trail_.back();
      trail_.pop_back();
      const int v = value_[j];
      for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        const double a = col_coef_[k];
        min_activity_[col_row_[k]] -= a * v - std::min(a, 0.0);
      }
      open_gain_ += std::max(cost_[j], 0.0);
      fixed_gain_ -= cost_[j] * v;
      value_[j] = -1;
    }
  }

  void clear_queue() {
    for (std::size_t r : queue_) queued_[r] = 0;
    queue_.clear();
  }

  bool propagate() {
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const std::size_t r = queue_[head];
      queued_[r] = 0;
      const double slack = rhs_[r] - min_activity_[r];
      if (slack < -kTol) {
        for (std::size_t i = head + 1; i < queue_.size(); ++i) queued_[queue_[i]] = 0;
        queue_.clear();
        return false;
      }
      if (slack >= row_maxabs_[r] - kTol) continue;
      for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
        const std::size_t j = row_var_[k];
        if (value_[j] >= 0) continue;
        const double a = row_coef_[k];
        if (std::abs(a) > slack + kTol) assign(j, a > 0 ? 0 : 1);
      }
    }
    queue_.clear();
    return true;
  }

  bool propagate_all() {
    for (std::size_t r = 0; r < rhs_.size(); ++r)
      if (!queued_[r]) {
        queued_[r] = 1;
        queue_.push_back(r);
      }
    return propagate();
  }

  // Bound after tentatively fixing j to v, or -inf on conflict.
  double probe(std::size_t j, int v) {
    const std::size_t mark = trail_.size();
    assign(j, v);
    const double b = propagate() ? bound() : kMinusInf;
    clear_queue();
    unassign_to(mark);
    return b;
  }

  int first_value(std::size_t j) {
    if (cost_[j] > 0) return 1;
    if (cost_[j] < 0) return 0;
    const double b1 = probe(j, 1), b0 = probe(j, 0);
    if (b1 > b0 + kTol) return 1;
    if (b0 > b1 + kTol) return 0;
    return warm_.empty() ? 0 : warm_[j];
  }

  void record_leaf() {
    if (have_incumbent_ && fixed_gain_ <= best_ + kTol) return;
    best_ = fixed_gain_;
    best_values_.assign(value_.begin(), value_.end());
    last_improvement_ = nodes_;
    have_incumbent_ = true;
  }

  bool backtrack() {
    while (!stack_.empty()) {
      Frame& top = stack_.back();
      unassign_to(top.trail_mark);
      if (top.alt_pending) {
        top.alt_pending = false;
        if (assign(top.var, top.alt_value) && propagate()) return true;
        continue;
      }
      stack_.pop_back();
    }
    return false;
  }

  const IntegerProgram& program_;
  const BranchAndBoundOptions& options_;
  Clock::time_point deadline_;
  std::size_t n_;

  std::vector<std::size_t> row_start_, row_var_;
  std::vector<double> row_coef_, rhs_, row_maxabs_, min_activity_;
  std::vector<std::size_t> col_start_, col_row_;
  std::vector<double> col_coef_;
  std::vector<char> queued_;
  std::vector<std::size_t> queue_;

  std::vector<double> cost_;
  bool integral_objective_ = true;
  double fixed_gain_ = 0.0;
  double open_gain_ = 0.0;

  std::vector<std::size_t> order_;
  std::vector<signed char> value_;
  std::vector<int> warm_;
  std::vector<std::size_t> trail_;
  std::vector<Frame> stack_;

  bool have_incumbent_ = false;
  double best_ = kMinusInf;
  std::vector<signed char> best_values_;
  std::uint64_t nodes_ = 0;
  std::uint64_t last_improvement_ = 0;
};

}  // namespace

bool supported_by_branch_and_bound(const IntegerProgram& p) {
  return std::all_of(p.variables().begin(), p.variables().end(),
                     [](const VariableDef& v) { return v.is_binary() || fixed_binary(v); });
}

SolveResult branch_and_bound(const SolveRequest& request, const BranchAndBoundOptions& options) {
  const auto start = Clock::now();
  const IntegerProgram& p = request.program;
  SolveResult result;
  auto finish = [&]() -> SolveResult& {
    result.elapsed = Clock::now() - start;
    return result;
  };

  if (!supported_by_branch_and_bound(p)) {
    result.status = SolveStatus::SolverError;
    result.diagnostic = "unsupported program: built-in branch-and-bound needs binary variables";
    return finish();
  }

  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(request.time_limit);
  Search search(p, options, deadline);
  if (request.warm_start) {
    if (request.warm_start->size() == p.num_variables() && is_feasible(p, *request.warm_start))
      search.set_warm_start(*request.warm_start);
    else
      result.diagnostic = "warm start ignored: not feasible for the program";
  }

  const bool exhausted = search.run();
  result.nodes_explored = search.nodes();
  if (search.have_incumbent()) {
    result.solution = search.incumbent();
    result.objective = evaluate_objective(p, *result.solution);
    result.status = exhausted ? SolveStatus::Optimal : SolveStatus::FeasibleTimeLimit;
  } else {
    result.status = exhausted ? SolveStatus::Infeasible : SolveStatus::NoSolutionTimeLimit;
  }
  return finish();
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::FeasibleTimeLimit: return "feasible_time_limit";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NoSolutionTimeLimit: return "no_solution_time_limit";
    case SolveStatus::SolverError: return "solver_error";
  }
  return "solver_error";
}

std::optional<SolveStatus> parse_solve_status(std::string_view s) {
  for (SolveStatus st : {SolveStatus::Optimal, SolveStatus::FeasibleTimeLimit, SolveStatus::Infeasible,
                         SolveStatus::NoSolutionTimeLimit, SolveStatus::SolverError})
    if (s == to_string(st)) return st;
  return std::nullopt;
}

}  // namespace acp
