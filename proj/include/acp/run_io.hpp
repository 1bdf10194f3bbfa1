#pragma once

#include <filesystem>

#include <json.hpp>

#include "acp/driver.hpp"

namespace acp {

/// Config echo written into result files.
nlohmann::json config_to_json(const RunConfig& config);

/// Overrides fields of `config` from a JSON object. Recognised keys: algo,
/// time, k0, eps (or epsilon), t, p, seed, repartition, family, solver, solver_cmd,
/// solver_format, solver_workdir, init_budget, max_iterations, node_limit,
/// stall_nodes, check_every, stop_when_proven. Unknown keys raise
/// ContractError naming the key; `ignored` keys are skipped.
void apply_config_json(RunConfig& config, const nlohmann::json& j,
                       std::initializer_list<std::string_view> ignored = {});

/// Summary of one run: objective, sense, status, iteration count, final k,
/// elapsed seconds and the config echo.
nlohmann::json result_to_json(const IntegerProgram& p, const RunConfig& config, const RunResult& result);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace acp
