#include "acp/presets.hpp"

#include <array>

namespace acp {

namespace {

// One table row: the LNS, ACP and ACP2 columns for k and p, the ACP and ACP2
// columns for epsilon and t, and the family's time budget.
struct Row {
  std::array<std::size_t, 3> k;
  std::array<double, 2> eps;
  std::array<std::size_t, 2> t;
  std::array<double, 3> p;
  double time;
};

// Rows in Family order: IS, MVC, MAXCUT, SC, real-world.
using Table = std::array<Row, 5>;

constexpr Table kScipSmall{{
    {{2, 6, 4}, {0.002, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 10},
    {{3, 5, 4}, {0.002, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 10},
    {{2, 3, 2}, {0.1, 0.01}, {3, 3}, {0.3, 0.2, 0.3}, 10},
    {{4, 10, 10}, {0.002, 0.01}, {3, 3}, {0.2, 0.2, 0.2}, 20},
    {{5, 10, 10}, {0.001, 0.05}, {3, 2}, {0.2, 0.25, 0.3}, 10},
}};

constexpr Table kScipMedium{{
    {{6, 8, 8}, {0.1, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 100},
    {{6, 8, 8}, {0.002, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 100},
    {{4, 6, 6}, {0.1, 0.01}, {3, 3}, {0.1, 0.1, 0.1}, 180},
    {{6, 12, 12}, {0.002, 0.01}, {3, 3}, {0.2, 0.2, 0.2}, 100},
    {{6, 10, 10}, {0.02, 0.05}, {2, 3}, {0.2, 0.2, 0.2}, 50},
}};

constexpr Table kScipLarge{{
    {{8, 10, 10}, {0.1, 0.01}, {3, 3}, {0.1, 0.1, 0.1}, 1500},
    {{8, 10, 10}, {0.002, 0.01}, {3, 3}, {0.1, 0.1, 0.1}, 1500},
    {{15, 15, 15}, {0.1, 0.01}, {3, 3}, {0.1, 0.1, 0.1}, 1800},
    {{20, 25, 25}, {0.002, 0.01}, {3, 3}, {0.2, 0.2, 0.2}, 500},
    {{6, 50, 50}, {0.0007, 0.0007}, {5, 5}, {0.1, 0.1, 0.1}, 100},
}};

constexpr Table kGurobiSmall{{
    {{2, 4, 4}, {0.01, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 10},
    {{2, 4, 4}, {0.01, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 10},
    {{2, 3, 3}, {0.01, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 10},
    {{3, 7, 8}, {0.01, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 20},
    {{2, 3, 3}, {0.001, 0.001}, {3, 3}, {0.2, 0.3, 0.1}, 10},
}};

constexpr Table kGurobiMedium{{
    {{3, 6, 6}, {0.01, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 100},
    {{3, 6, 6}, {0.01, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 100},
    {{4, 5, 4}, {0.005, 0.005}, {3, 2}, {0.1, 0.1, 0.1}, 180},
    {{3, 5, 6}, {0.01, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 100},
    {{3, 4, 4}, {0.01, 0.0007}, {3, 3}, {0.2, 0.2, 0.1}, 50},
}};

constexpr Table kGurobiLarge{{
    {{6, 6, 6}, {0.01, 0.01}, {3, 3}, {0.2, 0.1, 0.2}, 1500},
    {{3, 8, 8}, {0.01, 0.01}, {3, 3}, {0.1, 0.1, 0.2}, 1500},
    {{6, 10, 5}, {0.1, 0.005}, {2, 2}, {0.1, 0.3, 0.2}, 1800},
    {{4, 5, 5}, {0.01, 0.01}, {3, 3}, {0.3, 0.3, 0.2}, 500},
    {{3, 7, 6}, {0.01, 0.0007}, {3, 3}, {0.2, 0.2, 0.1}, 100},
}};

struct Named {
  std::string_view name;
  const Table* table;
  PresetSizes sizes;
  double time_override;  // 0 keeps the table's budget
};

constexpr PresetSizes kSmall{10'000, 30'000, 20'000, 20'000, 4};
constexpr PresetSizes kMedium{100'000, 300'000, 200'000, 200'000, 4};
constexpr PresetSizes kLarge{1'000'000, 3'000'000, 1'000'000, 1'000'000, 4};
constexpr PresetSizes kDesk{1'000, 3'000, 2'000, 2'000, 4};

constexpr std::array<Named, 7> kPresets{{
    {"paper-small", &kScipSmall, kSmall, 0},
    {"paper-medium", &kScipMedium, kMedium, 0},
    {"paper-large", &kScipLarge, kLarge, 0},
    {"paper-small-gurobi", &kGurobiSmall, kSmall, 0},
    {"paper-medium-gurobi", &kGurobiMedium, kMedium, 0},
    {"paper-large-gurobi", &kGurobiLarge, kLarge, 0},
    {"desk", &kScipSmall, kDesk, 60},
}};

const Named* find(std::string_view name) {
  for (const Named& n : kPresets)
    if (n.name == name) return &n;
  return nullptr;
}

std::size_t row_index(Family f) {
  switch (f) {
    case Family::IS: return 0;
    case Family::MVC: return 1;
    case Family::MaxCut: return 2;
    case Family::SC: return 3;
    case Family::Generic: return 4;
  }
  return 4;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const Named& n : kPresets) out.emplace_back(n.name);
  return out;
}

bool is_preset(std::string_view name) { return find(name) != nullptr; }

std::optional<PresetParams> preset_params(std::string_view preset, Family family, Algorithm algorithm) {
  const Named* named = find(preset);
  if (!named) return std::nullopt;
  const Row& row = (*named->table)[row_index(family)];
  PresetParams out;
  out.time = named->time_override > 0 ? named->time_override : row.time;
  switch (algorithm) {
    case Algorithm::SolverOnly:
      out.k0 = 1;
      out.epsilon = row.eps[0];
      out.t = row.t[0];
      out.p = 1.0;
      break;
    case Algorithm::LNS:
      out.k0 = row.k[0];
      out.epsilon = row.eps[0];
      out.t = row.t[0];
      out.p = row.p[0];
      break;
    case Algorithm::ACP:
      out.k0 = row.k[1];
      out.epsilon = row.eps[0];
      out.t = row.t[0];
      out.p = row.p[1];
      break;
    case Algorithm::ACP2:
      out.k0 = row.k[2];
      out.epsilon = row.eps[1];
      out.t = row.t[1];
      out.p = row.p[2];
      break;
  }
  return out;
}

std::optional<PresetSizes> preset_sizes(std::string_view preset) {
  const Named* named = find(preset);
  if (!named) return std::nullopt;
  return named->sizes;
}

void apply_preset(RunConfig& config, std::string_view preset, Family family) {
  const auto params = preset_params(preset, family, config.algorithm);
  if (!params) throw ContractError("unknown preset '" + std::string(preset) + "'");
  config.total_time = Seconds(params->time);
  config.k0 = params->k0;
  config.epsilon = params->epsilon;
  config.t = params->t;
  config.p = params->p;
}

}  // namespace acp
