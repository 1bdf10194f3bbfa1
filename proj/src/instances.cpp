#include "acp/instances.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "acp/rng.hpp"

namespace acp {

namespace {

// Floyd's algorithm: `count` distinct values from [0, universe).
std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t universe, std::uint64_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(count * 2);
  for (std::uint64_t j = universe - count; j < universe; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = taken.contains(t) ? j : t;
    taken.insert(pick);
    out.push_back(pick);
  }
  return out;
}

// Row-major index over the strict upper triangle of an n x n matrix.
Edge decode_pair(std::uint64_t n, std::uint64_t index) {
  auto offset = [n](std::uint64_t u) { return u * n - u * (u + 1) / 2; };
  std::uint64_t lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const std::uint64_t mid = (lo + hi) / 2;
    if (offset(mid) <= index)
      lo = mid;
    else
      hi = mid;
  }
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(lo + 1 + index - offset(lo))};
}

std::vector<VariableDef> binaries(std::string_view prefix, std::size_t count) {
  std::vector<VariableDef> vars(count);
  for (std::size_t j = 0; j < count; ++j) vars[j].name = std::string(prefix) + std::to_string(j);
  return vars;
}

std::vector<Term> unit_objective(std::size_t count) {
  std::vector<Term> obj(count);
  for (std::size_t j = 0; j < count; ++j) obj[j] = {j, 1.0};
  return obj;
}

void check_edges(std::size_t nodes, const std::vector<Edge>& edges) {
  for (const Edge& e : edges)
    if (e.u >= nodes || e.v >= nodes || e.u == e.v) throw SpecError("invalid edge in edge list");
}

std::string graph_name(std::string_view family, const GraphSpec& s) {
  return std::string(family) + "_n" + std::to_string(s.nodes) + "_m" + std::to_string(s.edges) +
         "_seed" + std::to_string(s.seed);
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::IS: return "is";
    case Family::MVC: return "mvc";
    case Family::MaxCut: return "maxcut";
    case Family::SC: return "sc";
    case Family::Generic: return "generic";
  }
  return "generic";
}

std::optional<Family> parse_family(std::string_view s) {
  std::string lower(s);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (Family f : {Family::IS, Family::MVC, Family::MaxCut, Family::SC, Family::Generic})
    if (lower == to_string(f)) return f;
  return std::nullopt;
}

void GraphSpec::validate() const {
  const std::uint64_t max_edges = nodes < 2 ? 0 : nodes * (nodes - 1) / 2;
  if (edges > max_edges)
    throw SpecError("graph spec: " + std::to_string(edges) + " edges exceed the simple-graph maximum " +
                    std::to_string(max_edges) + " for " + std::to_string(nodes) + " nodes");
}

void SetCoverSpec::validate() const {
  if (coverage < 1) throw SpecError("set cover spec: coverage must be at least 1");
  if (coverage > sets)
    throw SpecError("set cover spec: coverage " + std::to_string(coverage) + " exceeds set count " +
                    std::to_string(sets));
}

std::vector<Edge> gen_graph(const GraphSpec& spec) {
  spec.validate();
  std::vector<Edge> edges;
  if (spec.edges == 0) return edges;
  Rng rng = Rng(spec.seed).split(kGraphStream);
  const std::uint64_t universe = spec.nodes * (spec.nodes - 1) / 2;
  const auto picks = sample_distinct(rng, universe, spec.edges);
  edges.reserve(picks.size());
  for (std::uint64_t idx : picks) edges.push_back(decode_pair(spec.nodes, idx));
  std::sort(edges.begin(), edges.end());
  return edges;
}

IntegerProgram is_program(std::size_t nodes, const std::vector<Edge>& edges, std::string name) {
  check_edges(nodes, edges);
  std::vector<LinearConstraint> rows;
  rows.reserve(edges.size());
  for (const Edge& e : edges) rows.push_back({{{e.u, 1.0}, {e.v, 1.0}}, Comparator::LessEqual, 1.0});
  return {std::move(name), Sense::Maximize, binaries("x", nodes), unit_objective(nodes), std::move(rows)};
}

IntegerProgram mvc_program(std::size_t nodes, const std::vector<Edge>& edges, std::string name) {
  check_edges(nodes, edges);
  std::vector<LinearConstraint> rows;
  rows.reserve(edges.size());
  for (const Edge& e : edges)
    rows.push_back({{{e.u, 1.0}, {e.v, 1.0}}, Comparator::GreaterEqual, 1.0});
  return {std::move(name), Sense::Minimize, binaries("x", nodes), unit_objective(nodes), std::move(rows)};
}

IntegerProgram maxcut_program(std::size_t nodes, const std::vector<Edge>& edges, std::string name) {
  check_edges(nodes, edges);
  auto vars = binaries("x", nodes);
  vars.reserve(nodes + edges.size());
  std::vector<Term> obj;
  obj.reserve(edges.size());
  std::vector<LinearConstraint> rows;
  rows.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    const std::size_t y = vars.size();
    vars.push_back({"y" + std::to_string(e.u) + "_" + std::to_string(e.v), 0.0, 1.0, true});
    obj.push_back({y, 1.0});
    rows.push_back({{{y, 1.0}, {e.u, -1.0}, {e.v, -1.0}}, Comparator::LessEqual, 0.0});
    rows.push_back({{{y, 1.0}, {e.u, 1.0}, {e.v, 1.0}}, Comparator::LessEqual, 2.0});
  }
  return {std::move(name), Sense::Maximize, std::move(vars), std::move(obj), std::move(rows)};
}

IntegerProgram sc_program(std::size_t sets, const std::vector<std::vector<std::size_t>>& membership,
                          std::string name) {
  std::vector<LinearConstraint> rows;
  rows.reserve(membership.size());
  for (const auto& item_sets : membership) {
    LinearConstraint row{{}, Comparator::GreaterEqual, 1.0};
    for (std::size_t s : item_sets) {
      if (s >= sets) throw SpecError("set index out of range in membership list");
      row.terms.push_back({s, 1.0});
    }
    rows.push_back(std::move(row));
  }
  return {std::move(name), Sense::Minimize, binaries("s", sets), unit_objective(sets), std::move(rows)};
}

IntegerProgram gen_is(const GraphSpec& spec) {
  return is_program(spec.nodes, gen_graph(spec), graph_name("is", spec));
}

IntegerProgram gen_mvc(const GraphSpec& spec) {
  return mvc_program(spec.nodes, gen_graph(spec), graph_name("mvc", spec));
}

IntegerProgram gen_maxcut(const GraphSpec& spec) {
  return maxcut_program(spec.nodes, gen_graph(spec), graph_name("maxcut", spec));
}

std::vector<std::vector<std::size_t>> gen_set_membership(const SetCoverSpec& spec) {
  spec.validate();
  Rng rng = Rng(spec.seed).split(kSetCoverStream);
  std::vector<std::vector<std::size_t>> membership(spec.items);
  for (auto& item_sets : membership) {
    for (std::uint64_t s : sample_distinct(rng, spec.sets, spec.coverage))
      item_sets.push_back(static_cast<std::size_t>(s));
    std::sort(item_sets.begin(), item_sets.end());
  }
  return membership;
}

IntegerProgram gen_sc(const SetCoverSpec& spec) {
  const std::string name = "sc_i" + std::to_string(spec.items) + "_s" + std::to_string(spec.sets) +
                           "_c" + std::to_string(spec.coverage) + "_seed" + std::to_string(spec.seed);
  return sc_program(spec.sets, gen_set_membership(spec), name);
}

}  // namespace acp
