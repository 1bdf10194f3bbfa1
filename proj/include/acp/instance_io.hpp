#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "acp/instances.hpp"
#include "acp/program.hpp"

namespace acp {

/// Malformed instance, LP, or trace input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceFile {
  IntegerProgram program;
  nlohmann::json metadata = nlohmann::json::object();

  /// Family recorded by the generator, or Generic.
  Family family() const;
};

// Canonical JSON instance format:
//   {"name", "sense": "maximize"|"minimize",
//    "variables": [{"name", "lower", "upper", "integral"}],
//    "objective": [[index, coeff], ...],
//    "constraints": [{"coeffs": [[index, coeff], ...], "cmp": "le"|"ge"|"eq", "rhs"}],
//    "metadata": {...}}
// Infinite bounds are written as the strings "inf" / "-inf".
nlohmann::json to_json(const IntegerProgram& p, const nlohmann::json& metadata = nlohmann::json::object());
InstanceFile instance_from_json(const nlohmann::json& j);

std::string dump_instance(const IntegerProgram& p, const nlohmann::json& metadata = nlohmann::json::object());
void write_instance(const std::filesystem::path& path, const IntegerProgram& p,
                    const nlohmann::json& metadata = nlohmann::json::object());
InstanceFile read_instance(const std::filesystem::path& path);

/// Provenance block the generators embed: family plus the spec fields.
nlohmann::json graph_metadata(Family family, const GraphSpec& spec);
nlohmann::json set_cover_metadata(const SetCoverSpec& spec);

// CPLEX-LP text, linear terms only. The writer lists every variable in the
// objective (zero coefficients included) so that reading back preserves
// variable order; names must be valid LP identifiers.
std::string write_lp(const IntegerProgram& p);
IntegerProgram read_lp(std::string_view text, std::string name = "lp");
void write_lp_file(const std::filesystem::path& path, const IntegerProgram& p);
IntegerProgram read_lp_file(const std::filesystem::path& path);

bool is_valid_lp_name(std::string_view name);

}  // namespace acp
