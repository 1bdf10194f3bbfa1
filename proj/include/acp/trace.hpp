#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "acp/driver.hpp"

namespace acp {

/// Malformed trace input; the message names the source and line.
class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kTraceHeader =
    "iteration,wall_clock,k,block,free_var_count,sub_status,objective_before,objective_after,accepted,stall_count";

void write_trace_csv(std::ostream& out, const std::vector<TraceEvent>& trace);
void write_trace_jsonl(std::ostream& out, const std::vector<TraceEvent>& trace);
void write_trace_csv_file(const std::filesystem::path& path, const std::vector<TraceEvent>& trace);
void write_trace_jsonl_file(const std::filesystem::path& path, const std::vector<TraceEvent>& trace);

/// `source` only labels error messages.
std::vector<TraceEvent> read_trace_csv(std::istream& in, const std::string& source = "trace");
std::vector<TraceEvent> read_trace_csv_file(const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double ("nan", "inf"
/// and "-inf" for the special values).
std::string format_double(double v);

}  // namespace acp
