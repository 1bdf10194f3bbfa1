#include "acp/run_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace acp {

using nlohmann::json;

namespace {

template <class T>
T get_number(const json& v, std::string_view key) {
  if (!v.is_number()) throw ContractError("config key '" + std::string(key) + "' must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (v.is_number_float() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      throw ContractError("config key '" + std::string(key) + "' must be a non-negative integer");
  }
  return v.get<T>();
}

std::string get_string(const json& v, std::string_view key) {
  if (!v.is_string()) throw ContractError("config key '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

json config_to_json(const RunConfig& c) {
  json j = {
      {"algo", to_string(c.algorithm)},
      {"time", c.total_time.count()},
      {"k0", c.k0},
      {"eps", c.epsilon},
      {"t", c.t},
      {"p", c.p},
      {"seed", c.seed},
      {"repartition", to_string(c.repartition)},
      {"family", to_string(c.family)},
      {"solver", to_string(c.solver.kind)},
      {"max_iterations", c.max_iterations},
      {"stop_when_proven", c.stop_when_proven},
  };
  if (c.init_budget) j["init_budget"] = c.init_budget->count();
  if (c.solver.kind == SolverKind::External) {
    j["solver_cmd"] = c.solver.external.command_template;
    j["solver_format"] = to_string(c.solver.external.format);
  } else {
    j["node_limit"] = c.solver.builtin.node_limit;
    j["stall_nodes"] = c.solver.builtin.stall_node_limit;
  }
  return j;
}

void apply_config_json(RunConfig& c, const json& j, std::initializer_list<std::string_view> ignored) {
  if (!j.is_object()) throw ContractError("run config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (std::find(ignored.begin(), ignored.end(), key) != ignored.end()) continue;
    if (key == "algo") {
      const auto a = parse_algorithm(get_string(v, key));
      if (!a) throw ContractError("unknown algorithm '" + v.get<std::string>() + "'");
      c.algorithm = *a;
    } else if (key == "time") {
      c.total_time = Seconds(get_number<double>(v, key));
    } else if (key == "k0") {
      c.k0 = get_number<std::size_t>(v, key);
    } else if (key == "eps" || key == "epsilon") {
      c.epsilon = get_number<double>(v, key);
    } else if (key == "t") {
      c.t = get_number<std::size_t>(v, key);
    } else if (key == "p") {
      c.p = get_number<double>(v, key);
    } else if (key == "seed") {
      c.seed = get_number<std::uint64_t>(v, key);
    } else if (key == "repartition") {
      const auto r = parse_repartition(get_string(v, key));
      if (!r) throw ContractError("unknown repartition policy '" + v.get<std::string>() + "'");
      c.repartition = *r;
    } else if (key == "family") {
      const auto f = parse_family(get_string(v, key));
      if (!f) throw ContractError("unknown family '" + v.get<std::string>() + "'");
      c.family = *f;
    } else if (key == "solver") {
      const auto s = parse_solver_kind(get_string(v, key));
      if (!s) throw ContractError("unknown solver '" + v.get<std::string>() + "'");
      c.solver.kind = *s;
    } else if (key == "solver_cmd") {
      c.solver.external.command_template = get_string(v, key);
      c.solver.kind = SolverKind::External;
    } else if (key == "solver_format") {
      const auto f = parse_solution_format(get_string(v, key));
      if (!f) throw ContractError("unknown solution format '" + v.get<std::string>() + "'");
      c.solver.external.format = *f;
    } else if (key == "solver_workdir") {
      c.solver.external.working_dir = get_string(v, key);
    } else if (key == "init_budget") {
      c.init_budget = Seconds(get_number<double>(v, key));
    } else if (key == "max_iterations") {
      c.max_iterations = get_number<std::size_t>(v, key);
    } else if (key == "node_limit") {
      c.solver.builtin.node_limit = get_number<std::uint64_t>(v, key);
    } else if (key == "stall_nodes") {
      c.solver.builtin.stall_node_limit = get_number<std::uint64_t>(v, key);
    } else if (key == "check_every") {
      c.check_every = get_number<std::size_t>(v, key);
    } else if (key == "stop_when_proven") {
      if (!v.is_boolean()) throw ContractError("config key 'stop_when_proven' must be a boolean");
      c.stop_when_proven = v.get<bool>();
    } else {
      throw ContractError("unknown config key '" + key + "'");
    }
  }
}

json result_to_json(const IntegerProgram& p, const RunConfig& config, const RunResult& r) {
  std::size_t accepted = 0;
  for (const TraceEvent& e : r.trace) accepted += e.accepted ? 1 : 0;
  return json{
      {"instance", p.name()},
      {"algorithm", to_string(r.algorithm)},
      {"sense", to_string(p.sense())},
      {"status", "ok"},
      {"objective", r.best.objective},
      {"feasible", r.best.feasible},
      {"initial_objective", number_or_null(r.initial_objective)},
      {"iterations", r.trace.size()},
      {"accepted_iterations", accepted},
      {"final_k", r.final_k},
      {"elapsed", r.elapsed.count()},
      {"proven_optimal", r.proven_optimal},
      {"variables", p.num_variables()},
      {"constraints", p.num_constraints()},
      {"diagnostics", r.diagnostics.size() > 20
                          ? std::vector<std::string>(r.diagnostics.begin(), r.diagnostics.begin() + 20)
                          : r.diagnostics},
      {"config", config_to_json(config)},
  };
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace acp
