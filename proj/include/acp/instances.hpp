#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "acp/program.hpp"

namespace acp {

/// Invalid generator parameters.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family { IS, MVC, MaxCut, SC, Generic };

const char* to_string(Family f);
/// Accepts "is", "mvc", "maxcut", "sc", "generic" (case-insensitive).
std::optional<Family> parse_family(std::string_view s);

struct GraphSpec {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SetCoverSpec {
  std::uint64_t items = 0;
  std::uint64_t sets = 0;
  std::uint64_t coverage = 0;  ///< sets per item
  std::uint64_t seed = 0;

  void validate() const;
};

struct Edge {
  std::size_t u;
  std::size_t v;

  auto operator<=>(const Edge&) const = default;
};

// Stream ids split off the spec seed. Changing them changes every instance.
inline constexpr std::uint64_t kGraphStream = 0x6772617068ULL;      // "graph"
inline constexpr std::uint64_t kSetCoverStream = 0x7365746376ULL;   // "setcv"

/// Uniform simple graph G(n, m): exactly `edges` distinct unordered pairs
/// drawn without replacement (Floyd's sampler over the pair universe),
/// returned sorted with u < v.
std::vector<Edge> gen_graph(const GraphSpec& spec);

// Formulations over an explicit edge list.
IntegerProgram is_program(std::size_t nodes, const std::vector<Edge>& edges, std::string name);
IntegerProgram mvc_program(std::size_t nodes, const std::vector<Edge>& edges, std::string name);
/// Variables: x_v for each node, then y_e for each edge (in edge order).
/// Rows per edge: y_e - x_u - x_v <= 0 and y_e + x_u + x_v <= 2.
IntegerProgram maxcut_program(std::size_t nodes, const std::vector<Edge>& edges, std::string name);
/// `membership[i]` lists the sets that contain item i.
IntegerProgram sc_program(std::size_t sets, const std::vector<std::vector<std::size_t>>& membership,
                          std::string name);

IntegerProgram gen_is(const GraphSpec& spec);
IntegerProgram gen_mvc(const GraphSpec& spec);
IntegerProgram gen_maxcut(const GraphSpec& spec);
IntegerProgram gen_sc(const SetCoverSpec& spec);

/// Per item, `coverage` distinct sets chosen uniformly; each list sorted.
std::vector<std::vector<std::size_t>> gen_set_membership(const SetCoverSpec& spec);

}  // namespace acp
