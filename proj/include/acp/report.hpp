#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acp/driver.hpp"

namespace acp {

struct SeriesPoint {
  double time = 0.0;
  double value = 0.0;  ///< NaN when nothing is known yet
};

/// Best-objective-so-far step function of one trace. The first point is the
/// start of the run (time 0, the first event's objective_before, NaN for a
/// solo-solver trace); then one point per event.
struct Series {
  std::string label;
  Sense sense = Sense::Maximize;
  std::vector<SeriesPoint> points;

  /// Step value at `time`: the last point at or before it, NaN before the
  /// first known value.
  double value_at(double time) const;
};

Series best_so_far(const std::vector<TraceEvent>& trace, Sense sense, std::string label);

/// Direction the trace moves in; nullopt when it never changes.
std::optional<Sense> infer_sense(const std::vector<TraceEvent>& trace);

struct AlignedSeries {
  std::vector<double> times;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> columns;  ///< columns[s][i] is series s at times[i]
};

/// Samples every series on a shared grid: the union of all point times, or
/// `uniform_points` evenly spaced times from 0 to the latest point.
AlignedSeries align(const std::vector<Series>& series, std::size_t uniform_points = 0);

void write_aligned_csv(std::ostream& out, const AlignedSeries& table);

/// Sense for a trace file: "sense" from a result.json next to it when present,
/// otherwise inferred from the trace, otherwise maximize.
Sense sense_for_trace(const std::filesystem::path& trace_path, const std::vector<TraceEvent>& trace);

/// True when `a` is at least as good as `b` at every grid time from `from`
/// onward where both have values. Times where only `a` has a value count as
/// dominated by `a`; times where only `b` has one count against `a`.
bool weakly_dominates(const Series& a, const Series& b, double from);

}  // namespace acp
