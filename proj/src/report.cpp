#include "acp/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "acp/run_io.hpp"
#include "acp/trace.hpp"

namespace acp {

double Series::value_at(double time) const {
  double v = std::nan("");
  for (const SeriesPoint& pt : points) {
    if (pt.time > time) break;
    if (!std::isnan(pt.value)) v = pt.value;
  }
  return v;
}

Series best_so_far(const std::vector<TraceEvent>& trace, Sense sense, std::string label) {
  Series s;
  s.label = std::move(label);
  s.sense = sense;
  double best = trace.empty() ? std::nan("") : trace.front().objective_before;
  s.points.push_back({0.0, best});
  for (const TraceEvent& e : trace) {
    if (std::isnan(best) || strictly_better(sense, e.objective_after, best)) best = e.objective_after;
    s.points.push_back({std::max(e.wall_clock, s.points.back().time), best});
  }
  return s;
}

std::optional<Sense> infer_sense(const std::vector<TraceEvent>& trace) {
  for (const TraceEvent& e : trace) {
    if (std::isnan(e.objective_before)) continue;
    if (e.objective_after > e.objective_before + kObjectiveTol) return Sense::Maximize;
    if (e.objective_after < e.objective_before - kObjectiveTol) return Sense::Minimize;
  }
  return std::nullopt;
}

AlignedSeries align(const std::vector<Series>& series, std::size_t uniform_points) {
  AlignedSeries out;
  double latest = 0.0;
  for (const Series& s : series) {
    out.labels.push_back(s.label);
    for (const SeriesPoint& pt : s.points) {
      latest = std::max(latest, pt.time);
      if (uniform_points == 0) out.times.push_back(pt.time);
    }
  }
  if (uniform_points == 1) {
    out.times = {latest};
  } else if (uniform_points > 1) {
    for (std::size_t i = 0; i < uniform_points; ++i)
      out.times.push_back(latest * static_cast<double>(i) / static_cast<double>(uniform_points - 1));
  }
  std::sort(out.times.begin(), out.times.end());
  out.times.erase(std::unique(out.times.begin(), out.times.end()), out.times.end());
  for (const Series& s : series) {
    std::vector<double> col;
    col.reserve(out.times.size());
    for (double t : out.times) col.push_back(s.value_at(t));
    out.columns.push_back(std::move(col));
  }
  return out;
}

void write_aligned_csv(std::ostream& out, const AlignedSeries& table) {
  out << "time";
  for (const std::string& l : table.labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < table.times.size(); ++i) {
    out << format_double(table.times[i]);
    for (const auto& col : table.columns) {
      out << ',';
      if (!std::isnan(col[i])) out << format_double(col[i]);
    }
    out << '\n';
  }
}

Sense sense_for_trace(const std::filesystem::path& trace_path, const std::vector<TraceEvent>& trace) {
  const auto result_path = trace_path.parent_path() / "result.json";
  std::error_code ec;
  if (std::filesystem::exists(result_path, ec)) {
    try {
      const auto j = read_json_file(result_path);
      if (j.contains("sense") && j.at("sense") == "minimize") return Sense::Minimize;
      if (j.contains("sense") && j.at("sense") == "maximize") return Sense::Maximize;
    } catch (const std::exception&) {
    }
  }
  return infer_sense(trace).value_or(Sense::Maximize);
}

bool weakly_dominates(const Series& a, const Series& b, double from) {
  const AlignedSeries grid = align({a, b});
  for (std::size_t i = 0; i < grid.times.size(); ++i) {
    if (grid.times[i] < from) continue;
    const double va = grid.columns[0][i], vb = grid.columns[1][i];
    if (std::isnan(vb)) continue;
    if (std::isnan(va) || strictly_better(a.sense, vb, va)) return false;
  }
  return true;
}

}  // namespace acp
