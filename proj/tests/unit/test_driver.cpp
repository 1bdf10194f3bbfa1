#include <doctest.h>

#include <cmath>

#include "acp/driver.hpp"
#include "acp/initializer.hpp"
#include "acp/instances.hpp"
#include "oracle.hpp"
#include "trace_checks.hpp"

using namespace acp;
using acp::testing::enumerate;
using acp::testing::trace_violation;

namespace {

RunConfig config_for(Algorithm a, Family f, double seconds = 30.0) {
  RunConfig c;
  c.algorithm = a;
  c.family = f;
  c.total_time = Seconds(seconds);
  c.p = 0.1;
  c.k0 = 2;
  c.epsilon = 0.01;
  c.t = 3;
  c.check_every = 1;
  return c;
}

IntegerProgram small_family(Family f, Rng& rng, std::uint64_t seed) {
  const std::uint64_t n = 6 + rng.below(7);
  const std::uint64_t m = 1 + rng.below(n * (n - 1) / 2);
  switch (f) {
    case Family::IS: return gen_is({n, m, seed});
    case Family::MVC: return gen_mvc({n, m, seed});
    case Family::MaxCut: {
      const std::uint64_t nodes = 3 + rng.below(4);
      const std::uint64_t edges = 1 + rng.below(std::min<std::uint64_t>(nodes * (nodes - 1) / 2, 14 - nodes));
      return gen_maxcut({nodes, edges, seed});
    }
    default: return gen_sc({4 + rng.below(20), n, 1 + rng.below(3), seed});
  }
}

}  // namespace

TEST_CASE("block update rule") {
  AdaptiveState s{5, 0, 0.01, 3, 1};
  auto next = block_update(s, 100, 100.5, Sense::Maximize);
  CHECK(next.stall_count == 1);
  CHECK(next.k == 5);

  AdaptiveState ten{10, 0, 0.01, 3, 1};
  for (int i = 0; i < 3; ++i) ten = block_update(ten, 100, 100, Sense::Maximize);
  CHECK(ten.k == 9);
  CHECK(ten.stall_count == 0);

  AdaptiveState zero{4, 0, 0.1, 3, 1};
  zero = block_update(zero, 0, 0, Sense::Maximize);
  CHECK(zero.stall_count == 1);

  AdaptiveState gain{4, 2, 0.01, 3, 1};
  gain = block_update(gain, 100, 102, Sense::Maximize);
  CHECK(gain.stall_count == 0);
  CHECK(gain.k == 4);

  AdaptiveState minimize{4, 0, 0.01, 1, 1};
  CHECK(block_update(minimize, 100, 98, Sense::Minimize).k == 4);
  CHECK(block_update(minimize, 100, 99.5, Sense::Minimize).k == 3);

  AdaptiveState floor{1, 0, 0.01, 1, 1};
  floor = block_update(floor, 5, 5, Sense::Maximize);
  CHECK(floor.k == 1);
  CHECK(floor.stall_count == 0);

  CHECK(is_stall(0.01, -200, -199, Sense::Maximize));
  CHECK_FALSE(is_stall(0.01, -200, -197, Sense::Maximize));
}

TEST_CASE("fix_optimize examples") {
  BranchAndBound bnb;
  const auto path = is_program(3, {{0, 1}, {1, 2}}, "path");
  const auto zeros = Assignment::evaluate(path, {0, 0, 0});

  const auto same = fix_optimize(path, zeros, {}, bnb, Seconds(1));
  CHECK(same.assignment.values == zeros.values);
  CHECK_FALSE(same.accepted);

  const auto edge = fix_optimize(path, zeros, {0, 1}, bnb, Seconds(1));
  CHECK(edge.accepted);
  CHECK(edge.assignment.objective == 1.0);
  CHECK(edge.assignment.values[2] == 0.0);

  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const auto p = gen_sc({10, 15, 2, static_cast<std::uint64_t>(i)});
    const auto start = trivial_feasible(p, Family::SC);
    std::vector<std::size_t> all(p.num_variables());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    const auto best = fix_optimize(p, start, all, bnb, Seconds(10));
    CHECK(best.status == SolveStatus::Optimal);
    CHECK(best.assignment.objective == *enumerate(p).optimum);
  }

  const auto bad = Assignment::evaluate(path, {1, 1, 0});
  CHECK_THROWS_AS(fix_optimize(path, bad, {2}, bnb, Seconds(1)), ContractError);
}

TEST_CASE("fix_optimize keeps the incumbent when the solver fails") {
  SolverConfig failing;
  failing.kind = SolverKind::External;
  failing.external.command_template = "exit 1";
  auto solver = make_solver(failing);
  const auto path = is_program(3, {{0, 1}, {1, 2}}, "path");
  const auto start = Assignment::evaluate(path, {1, 0, 0});
  const auto r = fix_optimize(path, start, {1, 2}, *solver, Seconds(1));
  CHECK(r.status == SolveStatus::SolverError);
  CHECK_FALSE(r.accepted);
  CHECK(r.assignment.values == start.values);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("ACP on a tiny IS instance is monotone and feasible") {
  const auto p = gen_is({12, 20, 3});
  auto c = config_for(Algorithm::ACP, Family::IS, 2.0);
  c.stop_when_proven = false;
  c.max_iterations = 200;
  const auto r = run_acp(p, c);
  CHECK(r.initial_objective == 0.0);
  CHECK(r.best.objective >= 0.0);
  CHECK(trace_violation(p, c, r) == "");
  CHECK(r.best.objective == *enumerate(p).optimum);
}

TEST_CASE("seeded runs replay exactly") {
  const auto p = gen_maxcut({40, 80, 2});
  for (Algorithm a : {Algorithm::ACP, Algorithm::ACP2, Algorithm::LNS}) {
    auto c = config_for(a, Family::MaxCut, 1000.0);
    c.max_iterations = 25;
    c.k0 = 4;
    c.solver.builtin.node_limit = 5000;
    c.seed = 17;
    const auto a1 = run(p, c);
    const auto a2 = run(p, c);
    CHECK(acp::testing::same_trace(a1.trace, a2.trace));
    CHECK(a1.best.values == a2.best.values);
    c.seed = 18;
    const auto b = run(p, c);
    CHECK_FALSE(acp::testing::same_trace(a1.trace, b.trace));
  }
}

TEST_CASE("12-variable set cover reaches the optimum") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto p = gen_sc({30, 12, 2, seed});
    auto c = config_for(Algorithm::ACP, Family::SC, 30.0);
    c.seed = seed;
    const auto r = run_acp(p, c);
    CHECK(r.best.objective == *enumerate(p).optimum);
    CHECK(trace_violation(p, c, r) == "");
  }
}

TEST_CASE("LNS keeps k fixed") {
  const auto p = gen_mvc({30, 60, 5});
  auto c = config_for(Algorithm::LNS, Family::MVC, 1000.0);
  c.stop_when_proven = false;
  c.max_iterations = 30;
  c.k0 = 2;
  const auto r = run_lns(p, c);
  REQUIRE(r.trace.size() == 30);
  for (const auto& e : r.trace) {
    CHECK(e.k == 2);
    CHECK(e.free_var_count == 15);
  }
  CHECK(r.final_k == 2);

  c.k0 = 1;
  c.stop_when_proven = true;
  const auto whole = run_lns(p, c);
  CHECK(whole.trace.front().free_var_count == 30);
  CHECK(whole.proven_optimal);
  CHECK(whole.trace.size() == 1);
}

TEST_CASE("on-k-change keeps the partition between decrements") {
  const auto p = gen_is({30, 60, 8});
  auto c = config_for(Algorithm::ACP, Family::IS, 1000.0);
  c.repartition = Repartition::OnKChange;
  c.k0 = 6;
  c.max_iterations = 40;
  c.stop_when_proven = false;
  const auto r = run_acp(p, c);
  CHECK(trace_violation(p, c, r) == "");
  // Same partition and no repeats means k=2 stretches alternate blocks.
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    if (r.trace[i].k == r.trace[i - 1].k && r.trace[i].k == 2) CHECK(r.trace[i].block != r.trace[i - 1].block);
}

TEST_CASE("solver-only baseline") {
  const auto p = gen_mvc({12, 25, 9});
  auto c = config_for(Algorithm::SolverOnly, Family::MVC, 30.0);
  const auto r = run_solver_only(p, c);
  REQUIRE(r.trace.size() == 1);
  CHECK(std::isnan(r.trace[0].objective_before));
  CHECK(r.best.objective == *enumerate(p).optimum);
  CHECK(r.proven_optimal);

  const auto infeasible = acp::testing::make_program(
      Sense::Maximize, 1, {}, {{{{0, 1}}, Comparator::GreaterEqual, 1}, {{{0, 1}}, Comparator::LessEqual, 0}});
  CHECK_THROWS_WITH_AS(run_solver_only(infeasible, c), "program is infeasible", NoSolutionError);

  auto tight = config_for(Algorithm::SolverOnly, Family::IS, 1e-9);
  const auto big = gen_is({2000, 6000, 1});
  try {
    const auto t = run_solver_only(big, tight);
    CHECK(is_feasible(big, t.best.values));
  } catch (const NoSolutionError& e) {
    CHECK(std::string(e.what()) == "no feasible solution in budget");
  }
}

TEST_CASE("ACP2 builds its start with the solver") {
  const auto p = gen_sc({60, 40, 3, 2});
  auto c = config_for(Algorithm::ACP2, Family::SC, 5.0);
  c.init_budget = Seconds(0.2);
  c.max_iterations = 10;
  const auto r = run_acp(p, c);
  CHECK(r.initial_objective <= 40.0);
  CHECK(trace_violation(p, c, r) == "");
}

TEST_CASE("external solver failures leave the run intact") {
  const auto p = gen_is({30, 60, 4});
  auto c = config_for(Algorithm::ACP, Family::IS, 5.0);
  c.solver.kind = SolverKind::External;
  c.solver.external.command_template = "echo boom >&2; exit 2";
  c.max_iterations = 5;
  const auto r = run_acp(p, c);
  CHECK(r.trace.size() == 5);
  CHECK(r.best.objective == r.initial_objective);
  for (const auto& e : r.trace) CHECK(e.sub_status == SolveStatus::SolverError);
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics[0].find("boom") != std::string::npos);
}

TEST_CASE("budget compliance") {
  const auto p = gen_is({2000, 6000, 3});
  for (Algorithm a : {Algorithm::ACP, Algorithm::ACP2, Algorithm::LNS, Algorithm::SolverOnly}) {
    auto c = config_for(a, Family::IS, 1.0);
    const auto r = run(p, c);
    CHECK(r.elapsed.count() <= 1.0 + 0.1 + 0.05);
    CHECK(trace_violation(p, c, r) == "");
  }
}

TEST_CASE("run config validation") {
  RunConfig c;
  c.p = 0;
  CHECK_THROWS_AS(c.validate(), ContractError);
  c = RunConfig{};
  c.t = 0;
  CHECK_THROWS_AS(c.validate(), ContractError);
  c = RunConfig{};
  c.total_time = Seconds(0);
  CHECK_THROWS_AS(c.validate(), ContractError);
  c = RunConfig{};
  c.solver.kind = SolverKind::External;
  CHECK_THROWS_AS(c.validate(), ContractError);
  c = RunConfig{};
  c.algorithm = Algorithm::LNS;
  CHECK_THROWS_AS(run_acp(gen_is({5, 4, 1}), c), ContractError);
  CHECK(parse_algorithm("solver-only") == Algorithm::SolverOnly);
  CHECK(parse_repartition("on_k_change") == Repartition::OnKChange);
  CHECK_FALSE(parse_algorithm("tabu").has_value());
}

TEST_CASE("property: trace invariants on random runs") {
  Rng rng(8080);
  const Family families[] = {Family::IS, Family::MVC, Family::MaxCut, Family::SC};
  const Algorithm algorithms[] = {Algorithm::ACP, Algorithm::ACP2, Algorithm::LNS};
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Family f = families[trial % 4];
    const auto p = small_family(f, rng, static_cast<std::uint64_t>(trial));
    auto c = config_for(algorithms[trial % 3], f, 100.0);
    c.seed = static_cast<std::uint64_t>(trial);
    c.k0 = 1 + rng.below(6);
    c.t = 1 + rng.below(3);
    c.epsilon = rng.below(2) ? 0.01 : 0.2;
    c.max_iterations = 5 + rng.below(40);
    c.stop_when_proven = rng.below(2) == 0;
    c.repartition = rng.below(2) ? Repartition::EveryIteration : Repartition::OnKChange;
    const auto r = run(p, c);
    const std::string problem = trace_violation(p, c, r);
    CHECK_MESSAGE(problem == "", "trial ", trial);
    ++checked;
    // Non-increasing k over the run.
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].k <= r.trace[i - 1].k);
  }
  CHECK(checked >= 100);
}
