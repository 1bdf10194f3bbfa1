#include "acp/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace acp {

namespace {

template <class T>
T parse_unsigned(const std::string& field, const std::string& where) {
  T v{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size())
    throw TraceFormatError(where + ": expected an integer, got '" + field + "'");
  return v;
}

double parse_double(const std::string& field, const std::string& where) {
  if (field == "nan" || field == "NaN" || field.empty()) return std::nan("");
  if (field == "inf") return HUGE_VAL;
  if (field == "-inf") return -HUGE_VAL;
  double v{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size())
    throw TraceFormatError(where + ": expected a number, got '" + field + "'");
  return v;
}

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceEvent>& trace) {
  out << kTraceHeader << '\n';
  for (const TraceEvent& e : trace) {
    out << e.iteration << ',' << format_double(e.wall_clock) << ',' << e.k << ',' << e.block << ','
        << e.free_var_count << ',' << to_string(e.sub_status) << ',' << format_double(e.objective_before) << ','
        << format_double(e.objective_after) << ',' << (e.accepted ? 1 : 0) << ',' << e.stall_count << '\n';
  }
}

void write_trace_jsonl(std::ostream& out, const std::vector<TraceEvent>& trace) {
  for (const TraceEvent& e : trace) {
    nlohmann::json j = {
        {"iteration", e.iteration},
        {"wall_clock", e.wall_clock},
        {"k", e.k},
        {"block", e.block},
        {"free_var_count", e.free_var_count},
        {"sub_status", to_string(e.sub_status)},
        {"objective_before", json_number(e.objective_before)},
        {"objective_after", json_number(e.objective_after)},
        {"accepted", e.accepted},
        {"stall_count", e.stall_count},
    };
    out << j.dump() << '\n';
  }
}

void write_trace_csv_file(const std::filesystem::path& path, const std::vector<TraceEvent>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_trace_csv(out, trace);
}

void write_trace_jsonl_file(const std::filesystem::path& path, const std::vector<TraceEvent>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_trace_jsonl(out, trace);
}

std::vector<TraceEvent> read_trace_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw TraceFormatError(source + ":1: empty trace");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw TraceFormatError(source + ":1: unexpected header");

  std::vector<TraceEvent> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 10) throw TraceFormatError(where + ": expected 10 fields, got " + std::to_string(f.size()));

    TraceEvent e;
    e.iteration = parse_unsigned<std::size_t>(f[0], where);
    e.wall_clock = parse_double(f[1], where);
    e.k = parse_unsigned<std::size_t>(f[2], where);
    e.block = parse_unsigned<std::size_t>(f[3], where);
    e.free_var_count = parse_unsigned<std::size_t>(f[4], where);
    const auto status = parse_solve_status(f[5]);
    if (!status) throw TraceFormatError(where + ": unknown status '" + f[5] + "'");
    e.sub_status = *status;
    e.objective_before = parse_double(f[6], where);
    e.objective_after = parse_double(f[7], where);
    if (f[8] != "0" && f[8] != "1") throw TraceFormatError(where + ": accepted must be 0 or 1");
    e.accepted = f[8] == "1";
    e.stall_count = parse_unsigned<std::size_t>(f[9], where);
    if (std::isnan(e.wall_clock) || std::isnan(e.objective_after))
      throw TraceFormatError(where + ": wall_clock and objective_after are required");
    out.push_back(e);
  }
  return out;
}

std::vector<TraceEvent> read_trace_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TraceFormatError(path.string() + ": cannot open");
  return read_trace_csv(in, path.string());
}

}  // namespace acp
