#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fppn/gantt.hpp"
#include "fppn/io.hpp"
#include "fppn/model.hpp"
#include "fppn/schedule.hpp"
#include "fppn/sim.hpp"
#include "fppn/taskgraph.hpp"

namespace fppn::cli {

namespace detail {

// Carries the exit code with the diagnostic: 2 for unreadable or unparseable
// inputs, 1 for inputs that parse but violate the model's laws.
struct failure {
  int code;
  std::string message;  // newline terminated
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw failure{2, "cannot read " + path + "\n"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void deliver(const std::string& out_path, const std::string& text,
                    std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw failure{2, "cannot write " + out_path + "\n"};
  file << text;
}

inline std::string format_parse_errors(const std::string& path,
                                       const std::vector<ParseError>& errors) {
  std::ostringstream out;
  for (const auto& e : errors) {
    out << path << ":" << e.line << ":" << e.col << ": " << e.message << "\n";
  }
  return out.str();
}

inline std::string format_violations(const std::vector<Violation>& violations) {
  std::ostringstream out;
  for (const auto& v : violations) out << v.entity << ": " << v.message << "\n";
  return out.str();
}

inline NetworkModel load_model(const std::string& path) {
  auto parsed = parse_model(slurp(path));
  if (!parsed.model) throw failure{2, format_parse_errors(path, parsed.errors)};
  const auto violations = validate_network(*parsed.model);
  if (!violations.empty()) throw failure{1, format_violations(violations)};
  return std::move(*parsed.model);
}

inline std::vector<Event> load_events(const std::string& path,
                                      const NetworkModel& net) {
  if (path.empty()) return {};
  auto parsed = parse_events(slurp(path));
  if (!parsed.events) throw failure{2, format_parse_errors(path, parsed.errors)};
  const auto violations = validate_events(net, *parsed.events);
  if (!violations.empty()) throw failure{1, format_violations(violations)};
  return *parsed.events;
}

inline std::string verdict_line(const Verdict& v) {
  if (v.feasible) return "feasible\n";
  return "infeasible: " + v.reason + "\n";
}

// Comment prefixed so the whole command output stays a parseable trace.
inline std::string completion_text(const CompletionReport& report) {
  std::ostringstream out;
  out << "# completion per period (base " << format_ms(report.base) << " ms)\n";
  for (std::size_t i = 0; i < report.per_period.size(); ++i) {
    out << "# period " << i << ": ";
    if (report.per_period[i]) {
      out << format_ms(*report.per_period[i]) << " ms";
    } else {
      out << "-";
    }
    out << "\n";
  }
  return out.str();
}

inline std::string title_of(const std::string& model_path) {
  const auto stem = std::filesystem::path(model_path).stem().string();
  return stem.empty() ? "schedule" : stem;
}

}  // namespace detail

/// Exit codes: 0 success or feasible, 1 infeasible or law violations,
/// 2 usage or parse errors.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"FPPN design flow: validation, task graphs, multicore "
               "scheduling, simulation"};
  app.require_subcommand(1);

  std::string model_path, events_path, out_path;
  std::string format = "csv";
  std::optional<std::int64_t> horizon_ms;
  int cores = 1;
  int max_cores = 8;
  std::int64_t delta_us = 0;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", model_path, "network model file")->required();
  };
  auto add_horizon = [&](CLI::App* sub) {
    sub->add_option("--horizon", horizon_ms,
                    "horizon in ms (default: one hyperperiod)");
  };
  auto add_cores = [&](CLI::App* sub) {
    sub->add_option("--cores", cores, "total core count")->required();
  };
  auto add_delta = [&](CLI::App* sub) {
    sub->add_option("--delta", delta_us, "engine transition overhead in us");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out,-o", out_path, "write to a file instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "check a network model");
  add_model(validate);

  CLI::App* taskgraph = app.add_subcommand(
      "taskgraph", "unroll the jobs and precedence edges over a horizon");
  add_model(taskgraph);
  add_horizon(taskgraph);
  add_out(taskgraph);

  CLI::App* schedule = app.add_subcommand(
      "schedule", "build a static multicore schedule table");
  add_model(schedule);
  add_horizon(schedule);
  add_cores(schedule);
  add_delta(schedule);
  add_out(schedule);
  schedule->add_option("--format", format, "csv, text or svg")
      ->check(CLI::IsMember({"csv", "text", "svg"}));

  CLI::App* asap = app.add_subcommand(
      "asap", "run the self-timed execution and report per-period completion");
  add_model(asap);
  add_horizon(asap);
  add_cores(asap);
  add_delta(asap);
  asap->add_option("--events", events_path, "event trace file");
  add_out(asap);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "schedule, replay and emit the execution trace");
  add_model(simulate);
  add_horizon(simulate);
  add_cores(simulate);
  add_delta(simulate);
  simulate->add_option("--events", events_path, "event trace file");
  add_out(simulate);

  CLI::App* gantt =
      app.add_subcommand("gantt", "render the schedule table as SVG");
  add_model(gantt);
  add_horizon(gantt);
  add_cores(gantt);
  add_delta(gantt);
  add_out(gantt);

  CLI::App* mincores = app.add_subcommand(
      "mincores", "smallest core count with a feasible schedule");
  add_model(mincores);
  add_horizon(mincores);
  add_delta(mincores);
  mincores->add_option("--cores", max_cores, "largest core count to try");

  std::vector<const char*> argv;
  argv.push_back("fppn");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) {
      auto parsed = parse_model(detail::slurp(model_path));
      if (!parsed.model) {
        throw detail::failure{
            2, detail::format_parse_errors(model_path, parsed.errors)};
      }
      const auto violations = validate_network(*parsed.model);
      if (violations.empty()) {
        out << "ok\n";
        return 0;
      }
      out << detail::format_violations(violations);
      return 1;
    }

    const auto net = detail::load_model(model_path);
    const time_us horizon = horizon_ms ? ms(*horizon_ms) : hyperperiod(net);

    if (taskgraph->parsed()) {
      const auto tg = build_task_graph(net, horizon);
      detail::deliver(out_path, emit_task_graph(tg), out);
      return 0;
    }

    if (schedule->parsed()) {
      const auto tg = build_task_graph(net, horizon);
      const auto table = list_schedule(tg, net, cores, delta_us);
      const std::string text =
          format == "svg" ? gantt_svg(table, detail::title_of(model_path))
                          : emit_schedule(table);
      detail::deliver(out_path, text, out);
      if (!out_path.empty()) out << detail::verdict_line(table.verdict);
      return table.verdict.feasible ? 0 : 1;
    }

    if (asap->parsed()) {
      const auto events = detail::load_events(events_path, net);
      const auto result = run_asap(net, horizon, cores, delta_us, events);
      const std::string text = "# verdict: " +
                               detail::verdict_line(result.table.verdict) +
                               emit_trace(result.trace) +
                               detail::completion_text(result.report);
      detail::deliver(out_path, text, out);
      if (!out_path.empty()) out << detail::verdict_line(result.table.verdict);
      return result.table.verdict.feasible ? 0 : 1;
    }

    if (simulate->parsed()) {
      const auto events = detail::load_events(events_path, net);
      const auto tg = build_task_graph(net, horizon);
      const auto table = list_schedule(tg, net, cores, delta_us);
      const auto trace = fppn::simulate(net, tg, table, events);
      const std::string text =
          "# verdict: " + detail::verdict_line(table.verdict) + emit_trace(trace);
      detail::deliver(out_path, text, out);
      if (!out_path.empty()) out << detail::verdict_line(table.verdict);
      return table.verdict.feasible ? 0 : 1;
    }

    if (gantt->parsed()) {
      const auto tg = build_task_graph(net, horizon);
      const auto table = list_schedule(tg, net, cores, delta_us);
      detail::deliver(out_path, gantt_svg(table, detail::title_of(model_path)),
                      out);
      return table.verdict.feasible ? 0 : 1;
    }

    if (mincores->parsed()) {
      const auto tg = build_task_graph(net, horizon);
      const auto found = min_cores(tg, net, delta_us, max_cores);
      if (!found) {
        err << "no feasible schedule up to " << max_cores << " cores\n";
        return 1;
      }
      out << *found << "\n";
      return 0;
    }
  } catch (const detail::failure& f) {
    err << f.message;
    return f.code;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace fppn::cli
