#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acp/driver.hpp"
#include "acp/instances.hpp"

namespace acp {

/// Per-(family, algorithm) parameters of a named preset.
struct PresetParams {
  double time = 10.0;  ///< total wall-clock budget, seconds
  std::size_t k0 = 1;
  double epsilon = 0.0;
  std::size_t t = 1;
  double p = 1.0;
};

/// Instance sizes that go with a preset.
struct PresetSizes {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t items = 0;
  std::size_t sets = 0;
  std::size_t coverage = 0;
};

/// paper-small, paper-medium, paper-large (SCIP columns), the same three with
/// a -gurobi suffix, and desk (small-row parameters on 1,000-node graphs and a
/// 2,000-item set cover with a 60 s budget). Family::Generic selects the
/// real-world row.
std::vector<std::string> preset_names();
bool is_preset(std::string_view name);
std::optional<PresetParams> preset_params(std::string_view preset, Family family, Algorithm algorithm);
std::optional<PresetSizes> preset_sizes(std::string_view preset);

/// Copies a preset's time, k0, epsilon, t and p into `config`. Unknown
/// presets raise ContractError.
void apply_preset(RunConfig& config, std::string_view preset, Family family);

}  // namespace acp
