#include "acp/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace acp {

using nlohmann::json;

namespace {

json bound_to_json(double b) {
  if (std::isinf(b)) return b > 0 ? json("inf") : json("-inf");
  return b;
}

double bound_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw FormatError("instance: bad bound '" + s + "'");
  }
  if (!j.is_number()) throw FormatError("instance: bound must be a number or \"inf\"/\"-inf\"");
  return j.get<double>();
}

std::vector<Term> terms_from_json(const json& arr, const char* what) {
  if (!arr.is_array()) throw FormatError(std::string("instance: ") + what + " must be an array");
  std::vector<Term> out;
  out.reserve(arr.size());
  for (const json& t : arr) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_number())
      throw FormatError(std::string("instance: ") + what + " entries must be [index, coeff]");
    const auto idx = t[0].get<long long>();
    if (idx < 0) throw FormatError("instance: negative variable index");
    out.push_back({static_cast<std::size_t>(idx), t[1].get<double>()});
  }
  return out;
}

json terms_to_json(const std::vector<Term>& terms) {
  json arr = json::array();
  for (const Term& t : terms) arr.push_back(json::array({t.var, t.coef}));
  return arr;
}

}  // namespace

Family InstanceFile::family() const {
  if (metadata.is_object() && metadata.contains("family") && metadata["family"].is_string())
    if (auto f = parse_family(metadata["family"].get<std::string>())) return *f;
  return Family::Generic;
}

json to_json(const IntegerProgram& p, const json& metadata) {
  json j;
  j["name"] = p.name();
  j["sense"] = to_string(p.sense());
  json vars = json::array();
  for (const VariableDef& v : p.variables())
    vars.push_back({{"name", v.name},
                    {"lower", bound_to_json(v.lower)},
                    {"upper", bound_to_json(v.upper)},
                    {"integral", v.integral}});
  j["variables"] = std::move(vars);
  j["objective"] = terms_to_json(p.objective());
  json rows = json::array();
  for (const LinearConstraint& c : p.constraints())
    rows.push_back({{"coeffs", terms_to_json(c.terms)}, {"cmp", to_string(c.cmp)}, {"rhs", c.rhs}});
  j["constraints"] = std::move(rows);
  j["metadata"] = metadata;
  return j;
}

InstanceFile instance_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("instance: top level must be an object");
  for (const char* key : {"sense", "variables", "objective", "constraints"})
    if (!j.contains(key)) throw FormatError(std::string("instance: missing field '") + key + "'");

  const auto sense_text = j["sense"].get<std::string>();
  Sense sense;
  if (sense_text == "maximize")
    sense = Sense::Maximize;
  else if (sense_text == "minimize")
    sense = Sense::Minimize;
  else
    throw FormatError("instance: sense must be \"maximize\" or \"minimize\"");

  std::vector<VariableDef> vars;
  for (const json& v : j["variables"]) {
    VariableDef def;
    def.name = v.at("name").get<std::string>();
    def.lower = bound_from_json(v.at("lower"));
    def.upper = bound_from_json(v.at("upper"));
    def.integral = v.at("integral").get<bool>();
    vars.push_back(std::move(def));
  }

  std::vector<LinearConstraint> rows;
  for (const json& c : j["constraints"]) {
    LinearConstraint row;
    row.terms = terms_from_json(c.at("coeffs"), "constraint coeffs");
    const auto cmp = c.at("cmp").get<std::string>();
    if (cmp == "le")
      row.cmp = Comparator::LessEqual;
    else if (cmp == "ge")
      row.cmp = Comparator::GreaterEqual;
    else if (cmp == "eq")
      row.cmp = Comparator::Equal;
    else
      throw FormatError("instance: cmp must be le, ge or eq (got '" + cmp + "')");
    row.rhs = c.at("rhs").get<double>();
    rows.push_back(std::move(row));
  }

  InstanceFile out;
  try {
    out.program = IntegerProgram(j.value("name", std::string("instance")), sense, std::move(vars),
                                 terms_from_json(j["objective"], "objective"), std::move(rows));
  } catch (const ContractError& e) {
    throw FormatError(std::string("instance: ") + e.what());
  }
  if (j.contains("metadata")) out.metadata = j["metadata"];
  return out;
}

std::string dump_instance(const IntegerProgram& p, const json& metadata) {
  return to_json(p, metadata).dump() + "\n";
}

void write_instance(const std::filesystem::path& path, const IntegerProgram& p, const json& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << dump_instance(p, metadata);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

InstanceFile read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

json graph_metadata(Family family, const GraphSpec& spec) {
  return {{"family", to_string(family)},
          {"nodes", spec.nodes},
          {"edges", spec.edges},
          {"seed", spec.seed},
          {"generator", "acp-instance-gen/1"}};
}

json set_cover_metadata(const SetCoverSpec& spec) {
  return {{"family", "sc"},
          {"items", spec.items},
          {"sets", spec.sets},
          {"coverage", spec.coverage},
          {"seed", spec.seed},
          {"generator", "acp-instance-gen/1"}};
}

}  // namespace acp
