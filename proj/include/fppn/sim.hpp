#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fppn/channel.hpp"
#include "fppn/schedule.hpp"

namespace fppn {

struct Event {
  time_us time = 0;
  std::string process;
  Value payload = 0;

  bool operator==(const Event&) const = default;
};

/// Events must be listed in non-decreasing time order, name existing
/// sporadic processes, carry non-negative times and keep at least the
/// process's minimal inter-arrival time between consecutive events.
/// Violations come back in scan order.
inline std::vector<Violation> validate_events(const NetworkModel& net,
                                              const std::vector<Event>& events) {
  std::vector<Violation> out;
  auto add = [&](const std::string& entity, const std::string& message) {
    out.push_back({entity, message});
  };
  std::optional<time_us> prev;
  std::map<std::string, time_us> last;
  for (const auto& e : events) {
    if (prev && e.time < *prev) {
      add(e.process, "event times must be non-decreasing: " + format_ms(e.time) +
                         " ms after " + format_ms(*prev) + " ms");
    }
    prev = e.time;
    const ProcessSpec* p = net.find_process(e.process);
    if (!p) {
      add(e.process, "event names unknown process");
      continue;
    }
    if (p->kind != ProcessKind::sporadic) {
      add(e.process, "event targets a periodic process");
      continue;
    }
    if (e.time < 0) {
      add(e.process, "event time is negative");
      continue;
    }
    const auto it = last.find(e.process);
    if (it != last.end() && e.time - it->second < p->period) {
      add(e.process, "events at " + format_ms(it->second) + " ms and " +
                         format_ms(e.time) +
                         " ms violate the minimal inter-arrival time of " +
                         format_ms(p->period) + " ms");
    }
    last[e.process] = e.time;
  }
  return out;
}

struct BehaviorContext {
  const ProcessSpec* process = nullptr;
  int k = 0;
  // Input values read this job, keyed by channel id; absent value means the
  // channel had nothing to read.
  std::map<std::string, std::optional<Value>> inputs;
  std::vector<std::string> outputs;  // output channel ids, declaration order
  std::optional<Value> event_payload;
  std::int64_t* state = nullptr;
};

struct BehaviorResult {
  std::map<std::string, Value> writes;  // keyed by output channel id
  std::optional<Value> output;
};

using BehaviorFn = std::function<BehaviorResult(const BehaviorContext&)>;
using BehaviorFactory = std::function<BehaviorFn(const std::vector<Value>&)>;
using BehaviorSet = std::map<std::string, BehaviorFactory>;

namespace detail {

inline std::optional<Value> first_present(const BehaviorContext& ctx) {
  if (ctx.event_payload) return ctx.event_payload;
  for (const auto& [channel, value] : ctx.inputs) {
    if (value) return value;
  }
  return std::nullopt;
}

inline BehaviorResult broadcast(std::optional<Value> value,
                                const std::vector<std::string>& outputs) {
  BehaviorResult r;
  if (!value) return r;
  for (const auto& channel : outputs) r.writes[channel] = *value;
  r.output = value;
  return r;
}

}  // namespace detail

/// identity forwards the event payload (sporadic) or the first available
/// input; square squares it; constant:c always produces c; sum adds every
/// available input; sink produces nothing; source:v0,v1,... produces the
/// k-th element of its cycle, ignoring inputs.
inline BehaviorSet default_behaviors() {
  BehaviorSet set;
  set["identity"] = [](const std::vector<Value>& params) -> BehaviorFn {
    if (!params.empty()) throw error("behavior identity takes no parameters");
    return [](const BehaviorContext& ctx) {
      return detail::broadcast(detail::first_present(ctx), ctx.outputs);
    };
  };
  set["square"] = [](const std::vector<Value>& params) -> BehaviorFn {
    if (!params.empty()) throw error("behavior square takes no parameters");
    return [](const BehaviorContext& ctx) {
      auto v = detail::first_present(ctx);
      if (v) v = *v * *v;
      return detail::broadcast(v, ctx.outputs);
    };
  };
  set["constant"] = [](const std::vector<Value>& params) -> BehaviorFn {
    if (params.size() != 1) {
      throw error("behavior constant takes exactly one parameter");
    }
    const Value c = params[0];
    return [c](const BehaviorContext& ctx) {
      return detail::broadcast(c, ctx.outputs);
    };
  };
  set["sum"] = [](const std::vector<Value>& params) -> BehaviorFn {
    if (!params.empty()) throw error("behavior sum takes no parameters");
    return [](const BehaviorContext& ctx) {
      Value total = 0;
      if (ctx.event_payload) total += *ctx.event_payload;
      for (const auto& [channel, value] : ctx.inputs) {
        if (value) total += *value;
      }
      return detail::broadcast(total, ctx.outputs);
    };
  };
  set["sink"] = [](const std::vector<Value>& params) -> BehaviorFn {
    if (!params.empty()) throw error("behavior sink takes no parameters");
    return [](const BehaviorContext&) { return BehaviorResult{}; };
  };
  set["source"] = [](const std::vector<Value>& params) -> BehaviorFn {
    if (params.empty()) {
      throw error("behavior source needs at least one parameter");
    }
    return [params](const BehaviorContext& ctx) {
      const Value v = params[ctx.k % static_cast<int>(params.size())];
      return detail::broadcast(v, ctx.outputs);
    };
  };
  return set;
}

enum class TraceKind { job_start, read, write, output, job_end };

struct TraceRecord {
  TraceKind kind = TraceKind::job_start;
  time_us time = 0;
  std::string process;
  int k = 0;
  std::string channel;                // read, write
  std::optional<Value> value;         // read (absent when empty), write, output
  std::optional<WriteStatus> status;  // write
  int core = -1;                      // job_start

  bool operator==(const TraceRecord&) const = default;
};

struct ExecutionTrace {
  std::vector<TraceRecord> records;

  bool operator==(const ExecutionTrace&) const = default;
};

namespace detail {

/// Event-to-job matching is fixed by arrivals alone: walking jobs in order,
/// job k consumes the earliest unconsumed event at or before its arrival.
/// The result is independent of how the jobs end up placed on cores.
/// Assumes the event list already passed validation, so it is time sorted.
inline std::map<std::pair<std::string, int>, Value> match_events(
    const NetworkModel& net, const TaskGraph& tg,
    const std::vector<Event>& events) {
  std::map<std::string, std::vector<Event>> per_process;
  for (const auto& e : events) per_process[e.process].push_back(e);
  std::map<std::pair<std::string, int>, Value> matched;
  std::map<std::string, std::size_t> cursor;
  for (const auto& j : tg.jobs) {
    if (net.process(j.process).kind != ProcessKind::sporadic) continue;
    auto it = per_process.find(j.process);
    if (it == per_process.end()) continue;
    std::size_t& c = cursor[j.process];
    if (c < it->second.size() && it->second[c].time <= j.arrival) {
      matched[{j.process, j.k}] = it->second[c].payload;
      ++c;
    }
  }
  return matched;
}

}  // namespace detail

inline BehaviorFn make_behavior(const BehaviorSpec& spec,
                                const BehaviorSet& set) {
  const auto it = set.find(spec.name);
  if (it == set.end()) throw error("unknown behavior " + spec.name);
  return it->second(spec.params);
}

/// Replays the table under the read-execute-write discipline: a job reads
/// all its input channels when its compute segment starts and performs its
/// writes and output when it ends. Actions at equal instants apply ends
/// before starts, then follow the jobs' priority order, so the functional
/// outcome does not depend on core placement. Sporadic jobs with no event
/// pending at their arrival keep their reservation but do no work; their
/// trace still marks where the reservation began.
inline ExecutionTrace simulate(const NetworkModel& net, const TaskGraph& tg,
                               const ScheduleTable& table,
                               const std::vector<Event>& events,
                               const BehaviorSet& behaviors = default_behaviors()) {
  {
    const auto violations = validate_events(net, events);
    if (!violations.empty()) {
      throw error(violations.front().entity + ": " + violations.front().message);
    }
  }

  std::map<std::pair<std::string, int>, const ScheduleEntry*> segment;
  for (const auto& e : table.entries) {
    if (e.kind != EntryKind::compute) continue;
    if (!segment.emplace(std::make_pair(e.process, e.k), &e).second) {
      throw error("table schedules " + e.process + "[" + std::to_string(e.k) +
                  "] more than once");
    }
  }

  const auto order = priority_order(tg, net);
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  const auto matched = detail::match_events(net, tg, events);

  struct JobRun {
    std::size_t index;
    const Job* job;
    const ScheduleEntry* seg;
    bool active;
    std::optional<Value> payload;
  };
  std::vector<JobRun> runs;
  runs.reserve(tg.jobs.size());
  for (std::size_t i = 0; i < tg.jobs.size(); ++i) {
    const Job& j = tg.jobs[i];
    const auto it = segment.find({j.process, j.k});
    if (it == segment.end()) {
      throw error("table does not schedule job " + j.label());
    }
    JobRun run{i, &j, it->second, true, std::nullopt};
    if (net.process(j.process).kind == ProcessKind::sporadic) {
      const auto m = matched.find({j.process, j.k});
      run.active = m != matched.end();
      if (run.active) run.payload = m->second;
    }
    runs.push_back(run);
  }

  // phase 0: job end (writes happen before reads at the same instant)
  // phase 1: job start
  struct Action {
    time_us time;
    int phase;
    std::size_t rank;
    std::size_t run;
  };
  std::vector<Action> actions;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (!runs[r].active) {
      actions.push_back({runs[r].seg->start, 1, rank[runs[r].index], r});
      continue;
    }
    actions.push_back({runs[r].seg->start, 1, rank[runs[r].index], r});
    actions.push_back({runs[r].seg->end(), 0, rank[runs[r].index], r});
  }
  std::sort(actions.begin(), actions.end(), [](const Action& a, const Action& b) {
    return std::tie(a.time, a.phase, a.rank) < std::tie(b.time, b.phase, b.rank);
  });

  std::map<std::string, BehaviorFn> behavior;
  std::map<std::string, std::int64_t> state;
  for (const auto& p : net.processes) {
    behavior[p.id] = make_behavior(p.behavior, behaviors);
    state[p.id] = 0;
  }
  std::map<std::string, ChannelState> channels;
  for (const auto& c : net.channels) channels.emplace(c.id, ChannelState::initial(c));

  std::map<std::size_t, BehaviorContext> pending;  // run -> context of started job
  ExecutionTrace trace;

  for (const auto& a : actions) {
    JobRun& run = runs[a.run];
    const Job& j = *run.job;
    const ProcessSpec& p = net.process(j.process);
    if (!run.active) {
      // The reservation is held but no work happens: the job starts and ends
      // on the spot with no reads, writes or output.
      trace.records.push_back({TraceKind::job_start, a.time, j.process, j.k, "",
                               {}, {}, run.seg->core});
      trace.records.push_back(
          {TraceKind::job_end, a.time, j.process, j.k, "", {}, {}, -1});
      continue;
    }
    if (a.phase == 1) {
      trace.records.push_back({TraceKind::job_start, a.time, j.process, j.k, "",
                               {}, {}, run.seg->core});
      BehaviorContext ctx;
      ctx.process = &p;
      ctx.k = j.k;
      ctx.event_payload = run.payload;
      ctx.state = &state[p.id];
      for (const auto& c : net.channels) {
        if (c.writer == p.id) ctx.outputs.push_back(c.id);
      }
      for (const auto& c : net.channels) {
        if (c.reader != p.id) continue;
        auto r = channel_read(channels.at(c.id), c);
        channels.at(c.id) = r.state;
        ctx.inputs[c.id] = r.value;
        trace.records.push_back({TraceKind::read, a.time, j.process, j.k, c.id,
                                 r.value, {}, -1});
      }
      pending[a.run] = std::move(ctx);
    } else {
      auto it = pending.find(a.run);
      const BehaviorResult result = behavior[p.id](it->second);
      pending.erase(it);
      for (const auto& [channel, value] : result.writes) {
        const ChannelSpec* c = net.find_channel(channel);
        if (!c || c->writer != p.id) {
          throw error("behavior of " + p.id + " writes to " + channel +
                      ", which is not one of its output channels");
        }
        (void)value;
      }
      for (const auto& c : net.channels) {
        if (c.writer != p.id) continue;
        const auto w = result.writes.find(c.id);
        if (w == result.writes.end()) continue;
        auto wr = channel_write(channels.at(c.id), c, w->second);
        channels.at(c.id) = wr.state;
        trace.records.push_back({TraceKind::write, a.time, j.process, j.k, c.id,
                                 w->second, wr.status, -1});
      }
      if (result.output) {
        trace.records.push_back({TraceKind::output, a.time, j.process, j.k, "",
                                 result.output, {}, -1});
      }
      trace.records.push_back(
          {TraceKind::job_end, a.time, j.process, j.k, "", {}, {}, -1});
    }
  }
  return trace;
}

struct CompletionReport {
  time_us base = 0;  // gcd of process periods
  std::vector<std::optional<time_us>> per_period;  // relative completion

  bool operator==(const CompletionReport&) const = default;
};

/// Latest job end within each base window, relative to the window start.
/// Skipped jobs end the instant they start and do not contribute; a window
/// with no finished job reports nothing.
inline CompletionReport completion_report(const NetworkModel& net,
                                          const TaskGraph& tg,
                                          const ExecutionTrace& trace,
                                          time_us horizon) {
  time_us base = 0;
  for (const auto& p : net.processes) base = std::gcd(base, p.period);
  if (base <= 0) throw error("completion report needs at least one process");

  std::map<std::pair<std::string, int>, time_us> arrivals;
  for (const auto& j : tg.jobs) arrivals[{j.process, j.k}] = j.arrival;

  std::map<std::pair<std::string, int>, time_us> starts;
  for (const auto& r : trace.records) {
    if (r.kind == TraceKind::job_start) starts[{r.process, r.k}] = r.time;
  }

  CompletionReport report;
  report.base = base;
  report.per_period.assign(static_cast<std::size_t>(horizon / base), std::nullopt);
  for (const auto& r : trace.records) {
    if (r.kind != TraceKind::job_end) continue;
    // Real work always takes time; a zero length job is a skipped one.
    const auto s = starts.find({r.process, r.k});
    if (s != starts.end() && s->second == r.time) continue;
    const time_us arrival = arrivals.at({r.process, r.k});
    const std::size_t period = static_cast<std::size_t>(arrival / base);
    if (period >= report.per_period.size()) continue;
    const time_us relative = r.time - static_cast<time_us>(period) * base;
    auto& slot = report.per_period[period];
    if (!slot || relative > *slot) slot = relative;
  }
  return report;
}

struct AsapResult {
  TaskGraph graph;
  ScheduleTable table;
  ExecutionTrace trace;
  CompletionReport report;
};

/// Self-timed execution: the dispatch engine runs jobs as soon as their
/// precedences allow on the given cores, then the functional replay runs
/// over the resulting placement. Sporadic jobs without a pending event keep
/// their worst-case reservation but perform no work.
inline AsapResult run_asap(const NetworkModel& net, time_us horizon, int cores,
                           time_us delta, const std::vector<Event>& events,
                           const BehaviorSet& behaviors = default_behaviors()) {
  AsapResult result;
  result.graph = build_task_graph(net, horizon);
  result.table = list_schedule(result.graph, net, cores, delta);
  result.trace = simulate(net, result.graph, result.table, events, behaviors);
  result.report = completion_report(net, result.graph, result.trace, horizon);
  return result;
}

struct TraceComparison {
  bool equivalent = true;
  std::string detail;  // empty when equivalent
};

/// Functional equivalence: same per-process output value sequences and same
/// per-channel sequences of written values. Timing, placement and whether a
/// mailbox accepted or dropped a given write are allowed to differ.
inline TraceComparison compare_traces(const ExecutionTrace& a,
                                      const ExecutionTrace& b) {
  auto outputs = [](const ExecutionTrace& t) {
    std::map<std::string, std::vector<Value>> out;
    for (const auto& r : t.records) {
      if (r.kind == TraceKind::output) out[r.process].push_back(*r.value);
    }
    return out;
  };
  auto writes = [](const ExecutionTrace& t) {
    std::map<std::string, std::vector<Value>> out;
    for (const auto& r : t.records) {
      if (r.kind == TraceKind::write) out[r.channel].push_back(*r.value);
    }
    return out;
  };
  const auto oa = outputs(a);
  const auto ob = outputs(b);
  if (oa != ob) {
    for (const auto& [process, values] : oa) {
      const auto it = ob.find(process);
      if (it == ob.end() || it->second != values) {
        return {false, "output sequences of " + process + " differ"};
      }
    }
    for (const auto& [process, values] : ob) {
      if (!oa.count(process)) {
        return {false, "output sequences of " + process + " differ"};
      }
    }
  }
  const auto wa = writes(a);
  const auto wb = writes(b);
  if (wa != wb) {
    for (const auto& [channel, values] : wa) {
      const auto it = wb.find(channel);
      if (it == wb.end() || it->second != values) {
        return {false, "write sequences on " + channel + " differ"};
      }
    }
    for (const auto& [channel, values] : wb) {
      if (!wa.count(channel)) {
        return {false, "write sequences on " + channel + " differ"};
      }
    }
  }
  return {true, ""};
}

}  // namespace fppn
