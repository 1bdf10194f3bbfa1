#include "acp/external_solver.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "acp/instance_io.hpp"

namespace acp {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

std::string lower_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string tail(const std::string& s, std::size_t n) { return s.size() <= n ? s : "..." + s.substr(s.size() - n); }

void scan_markers(const std::string& line, ParsedSolution& out) {
  const auto l = lower_case(line);
  if (l.find("infeasible") != std::string::npos)
    out.infeasible_marker = true;
  else if (l.find("optimal") != std::string::npos)
    out.optimal_marker = true;
}

struct ProcessOutcome {
  bool started = false;
  bool timed_out = false;
  int exit_code = -1;
  std::string error;
};

ProcessOutcome run_shell(const std::string& command, const fs::path& cwd, const fs::path& log,
                         Seconds kill_after) {
  ProcessOutcome out;
  const pid_t pid = ::fork();
  if (pid < 0) {
    out.error = "fork failed";
    return out;
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    if (::chdir(cwd.c_str()) != 0) ::_exit(126);
    const int fd = ::open(log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      ::dup2(fd, STDOUT_FILENO);
      ::dup2(fd, STDERR_FILENO);
      ::close(fd);
    }
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  out.started = true;
  ::setpgid(pid, pid);
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(kill_after);
  int status = 0;
  for (;;) {
    const pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0) {
      out.error = "waitpid failed";
      return out;
    }
    if (Clock::now() >= deadline) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      out.timed_out = true;
      return out;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  if (WIFEXITED(status))
    out.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    out.exit_code = 128 + WTERMSIG(status);
  return out;
}

fs::path make_scratch_dir(const fs::path& parent) {
  const fs::path base = parent.empty() ? fs::temp_directory_path() : parent;
  fs::create_directories(base);
  std::string templ = (base / "acp-solve-XXXXXX").string();
  if (::mkdtemp(templ.data()) == nullptr) throw std::runtime_error("cannot create scratch directory in " + base.string());
  return templ;
}

}  // namespace

std::optional<SolutionFormat> parse_solution_format(std::string_view s) {
  const auto l = lower_case(s);
  if (l == "plain") return SolutionFormat::Plain;
  if (l == "gurobi") return SolutionFormat::Gurobi;
  return std::nullopt;
}

const char* to_string(SolutionFormat f) { return f == SolutionFormat::Plain ? "plain" : "gurobi"; }

ParsedSolution parse_solution_text(std::string_view text, SolutionFormat format) {
  ParsedSolution out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      scan_markers(line, out);
      continue;
    }
    std::string cleaned = line.substr(first);
    std::replace(cleaned.begin(), cleaned.end(), '=', ' ');
    std::istringstream fields(cleaned);
    std::string name, value_text;
    fields >> name >> value_text;
    if (format == SolutionFormat::Plain) {
      const auto key = lower_case(name);
      if (key == "status" || key == "solution" || key == "objective" || key == "obj") {
        scan_markers(line, out);
        continue;
      }
    }
    if (value_text.empty()) throw FormatError("solution line " + std::to_string(lineno) + ": missing value");
    char* end = nullptr;
    const double v = std::strtod(value_text.c_str(), &end);
    if (end == value_text.c_str() || *end != '\0')
      throw FormatError("solution line " + std::to_string(lineno) + ": bad value '" + value_text + "'");
    out.values[name] = v;
  }
  return out;
}

std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

std::string expand_command(std::string_view command_template, const fs::path& lp_file, double time_limit_s,
                           const fs::path& sol_file) {
  char limit[64];
  std::snprintf(limit, sizeof limit, "%.3f", time_limit_s);
  const std::pair<std::string_view, std::string> subs[] = {
      {"{lp_file}", shell_quote(lp_file.string())},
      {"{sol_file}", shell_quote(sol_file.string())},
      {"{time_limit_s}", limit},
  };
  std::string out;
  std::size_t i = 0;
  while (i < command_template.size()) {
    bool replaced = false;
    for (const auto& [key, value] : subs) {
      if (command_template.substr(i, key.size()) == key) {
        out += value;
        i += key.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out += command_template[i++];
  }
  return out;
}

SolveResult ExternalSolver::solve(const SolveRequest& request) {
  const auto start = Clock::now();
  const IntegerProgram& p = request.program;
  SolveResult result;
  auto finish = [&]() -> SolveResult {
    result.elapsed = Clock::now() - start;
    return result;
  };
  auto fail = [&](std::string msg) {
    result = SolveResult{};
    result.status = SolveStatus::SolverError;
    result.diagnostic = std::move(msg);
    return finish();
  };

  if (config_.command_template.empty()) return fail("external solver: empty command template");

  fs::path dir;
  try {
    dir = make_scratch_dir(config_.working_dir);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  struct Cleanup {
    fs::path dir;
    bool keep;
    ~Cleanup() {
      std::error_code ec;
      if (!keep) fs::remove_all(dir, ec);
    }
  } cleanup{dir, config_.keep_files};

  const fs::path lp_file = dir / "problem.lp";
  const fs::path sol_file = dir / "problem.sol";
  const fs::path log_file = dir / "solver.log";
  try {
    write_lp_file(lp_file, p);
  } catch (const std::exception& e) {
    return fail(std::string("external solver: cannot write LP: ") + e.what());
  }

  const double limit = std::max(request.time_limit.count(), 0.0);
  const std::string command = expand_command(config_.command_template, lp_file, limit, sol_file);
  const ProcessOutcome proc = run_shell(command, dir, log_file, Seconds(limit * (1.0 + config_.grace_fraction)));
  if (!proc.started) return fail("external solver: " + proc.error);
  if (!proc.timed_out && proc.exit_code != 0)
    return fail("external solver exited with status " + std::to_string(proc.exit_code) + ": " +
                tail(read_file(log_file), 400));

  ParsedSolution parsed;
  const bool have_file = fs::exists(sol_file) && fs::file_size(sol_file) > 0;
  if (have_file) {
    try {
      parsed = parse_solution_text(read_file(sol_file), config_.format);
    } catch (const std::exception& e) {
      return fail(std::string("external solver: ") + e.what());
    }
  }

  const bool found = have_file && !parsed.infeasible_marker && !parsed.values.empty();
  if (found) {
    std::vector<double> x(p.num_variables(), 0.0);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < p.num_variables(); ++j) index.emplace(p.variable(j).name, j);
    for (const auto& [name, v] : parsed.values) {
      auto it = index.find(name);
      if (it == index.end()) continue;
      const VariableDef& def = p.variable(it->second);
      x[it->second] = def.integral ? std::round(v) : v;
    }
    if (!is_feasible(p, x)) return fail("external solver returned an infeasible assignment");
    result.status = parsed.optimal_marker && !proc.timed_out ? SolveStatus::Optimal : SolveStatus::FeasibleTimeLimit;
    result.objective = evaluate_objective(p, x);
    result.solution = std::move(x);
  } else if (parsed.infeasible_marker || (!proc.timed_out && lower_case(read_file(log_file)).find("infeasible") !=
                                                                 std::string::npos)) {
    result.status = SolveStatus::Infeasible;
  } else {
    result.status = SolveStatus::NoSolutionTimeLimit;
  }

  if (request.warm_start && request.warm_start->size() == p.num_variables() && is_feasible(p, *request.warm_start)) {
    const double warm = evaluate_objective(p, *request.warm_start);
    if (!result.solution || strictly_better(p.sense(), warm, *result.objective)) {
      result.solution = *request.warm_start;
      result.objective = warm;
      result.status = SolveStatus::FeasibleTimeLimit;
    }
  }
  if (proc.timed_out) result.diagnostic = "external solver killed at the time limit";
  return finish();
}

}  // namespace acp
