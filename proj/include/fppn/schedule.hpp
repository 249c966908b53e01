#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fppn/taskgraph.hpp"

namespace fppn {

enum class EntryKind { compute, transition };
enum class TransitionTag { arrive, start, finish, complete };

inline const char* to_string(TransitionTag t) {
  switch (t) {
    case TransitionTag::arrive: return "arrive";
    case TransitionTag::start: return "start";
    case TransitionTag::finish: return "finish";
    case TransitionTag::complete: return "complete";
  }
  return "?";
}

/// One block of the time-triggered table: either a job's compute segment on a
/// compute core or one engine transition. When delta is zero no transition
/// entries exist; a job's lifecycle collapses to its compute segment.
struct ScheduleEntry {
  EntryKind kind = EntryKind::compute;
  std::string process;
  int k = 0;
  int core = 0;
  time_us start = 0;
  time_us duration = 0;
  std::optional<TransitionTag> tag;

  time_us end() const { return start + duration; }

  bool operator==(const ScheduleEntry&) const = default;
};

struct Verdict {
  bool feasible = true;
  std::string reason;  // empty when feasible

  bool operator==(const Verdict&) const = default;
};

struct ScheduleTable {
  std::vector<ScheduleEntry> entries;  // sorted by (start, core)
  int core_count = 0;
  time_us delta = 0;
  Verdict verdict;

  bool operator==(const ScheduleTable&) const = default;

  time_us makespan() const {
    time_us m = 0;
    for (const auto& e : entries) m = std::max(m, e.end());
    return m;
  }
};

/// A total order over the jobs, consistent with the task graph: a
/// topological order with ties broken by (deadline, arrival, Fpriority,
/// job id). Returns job indices, highest priority first.
inline std::vector<std::size_t> priority_order(const TaskGraph& tg,
                                               const NetworkModel& net) {
  const std::size_t n = tg.jobs.size();
  auto succs = tg.successors();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [u, v] : tg.edges) ++indeg[v];

  auto key = [&](std::size_t i) {
    const Job& j = tg.jobs[i];
    return std::make_tuple(j.deadline, j.arrival, net.process(j.process).fpriority,
                           j.process, j.k);
  };
  using Key = decltype(key(0));

  std::set<std::pair<Key, std::size_t>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.insert({key(i), i});
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t u = ready.begin()->second;
    ready.erase(ready.begin());
    order.push_back(u);
    for (std::size_t v : succs[u]) {
      if (--indeg[v] == 0) ready.insert({key(v), v});
    }
  }
  if (order.size() != n) {
    throw error("priority_order: task graph is cyclic");
  }
  return order;
}

namespace detail {

/// Processor demand argument for a single processor: total work (WCET plus
/// four engine transitions per job) of the jobs whose windows fit inside
/// [s, e] must fit in e - s. Returns the worst violated window, if any.
struct DemandViolation {
  time_us demand = 0;
  time_us window = 0;
};

inline std::optional<DemandViolation> worst_demand_violation(
    const TaskGraph& tg, time_us delta) {
  std::set<time_us> starts, ends;
  for (const auto& j : tg.jobs) {
    starts.insert(j.arrival);
    ends.insert(j.deadline);
  }
  std::optional<DemandViolation> worst;
  time_us worst_excess = 0;
  for (time_us s : starts) {
    for (time_us e : ends) {
      if (s >= e) continue;
      time_us demand = 0;
      for (const auto& j : tg.jobs) {
        if (j.arrival >= s && j.deadline <= e) demand += j.wcet + 4 * delta;
      }
      const time_us excess = demand - (e - s);
      if (excess > worst_excess) {
        worst_excess = excess;
        worst = DemandViolation{demand, e - s};
      }
    }
  }
  return worst;
}

}  // namespace detail

/// Non-preemptive fixed-priority dispatch simulation with the engine
/// transition model: each job costs four transitions of duration delta
/// (arrive and start before its compute segment, finish and complete after),
/// all serialized on the engine core. With one total core the engine shares
/// it with the compute segments; with two or more, core 0 is the engine core
/// and compute runs on cores 1..cores-1.
///
/// `rank` maps each job index to its dispatch priority (lower wins); it must
/// be a permutation consistent with the task graph, normally
/// priority_order's inverse.
inline ScheduleTable list_schedule_ranked(const TaskGraph& tg,
                                          const NetworkModel& net, int cores,
                                          time_us delta,
                                          const std::vector<std::size_t>& rank) {
  if (cores < 1) throw error("core count must be >= 1");
  if (delta < 0) throw error("delta must be >= 0");
  (void)net;

  const std::size_t n = tg.jobs.size();
  auto succs = tg.successors();
  std::vector<std::size_t> unmet(n, 0);
  for (const auto& [u, v] : tg.edges) ++unmet[v];

  const int compute_cores = cores == 1 ? 1 : cores - 1;
  const int first_compute_core = cores == 1 ? 0 : 1;
  std::vector<time_us> core_free(compute_cores, 0);
  time_us engine_free = 0;

  std::vector<time_us> ready(n), complete(n, 0);
  for (std::size_t i = 0; i < n; ++i) ready[i] = tg.jobs[i].arrival;

  // (rank, job) sets give deterministic selection.
  std::set<std::pair<std::size_t, std::size_t>> eligible;
  for (std::size_t i = 0; i < n; ++i) {
    if (unmet[i] == 0) eligible.insert({rank[i], i});
  }
  // (compute end, rank, job)
  std::set<std::tuple<time_us, std::size_t, std::size_t>> pending_retire;

  ScheduleTable table;
  table.core_count = cores;
  table.delta = delta;

  auto push_transition = [&](const Job& j, TransitionTag tag, time_us at) {
    if (delta == 0) return;
    table.entries.push_back(ScheduleEntry{EntryKind::transition, j.process, j.k,
                                          0, at, delta, tag});
  };

  std::size_t retired = 0;
  while (retired < n) {
    // Candidate retire: earliest finished compute, engine permitting.
    std::optional<std::tuple<time_us, std::size_t, std::size_t>> retire;
    if (!pending_retire.empty()) {
      auto [end, r, job] = *pending_retire.begin();
      retire = {std::max(engine_free, end), r, job};
    }

    // Candidate dispatch: the eligible job (and core) with the earliest
    // possible arrive transition; ties by rank. Transitions may overlap
    // other cores' compute segments, so the arrive pair may be issued
    // while the chosen core is still busy.
    std::optional<std::tuple<time_us, std::size_t, std::size_t, int>> dispatch;
    for (const auto& [r, job] : eligible) {
      time_us t0;
      int core_index = 0;
      if (cores == 1) {
        t0 = std::max(engine_free, ready[job]);
      } else {
        const time_us base = std::max(engine_free, ready[job]) + 2 * delta;
        time_us best_start = 0;
        int best_core = -1;
        for (int c = 0; c < compute_cores; ++c) {
          const time_us cs = std::max(base, core_free[c]);
          if (best_core < 0 || cs < best_start) {
            best_start = cs;
            best_core = c;
          }
        }
        t0 = best_start - 2 * delta;
        core_index = best_core;
      }
      if (!dispatch || t0 < std::get<0>(*dispatch) ||
          (t0 == std::get<0>(*dispatch) && r < std::get<1>(*dispatch))) {
        dispatch = {t0, r, job, core_index};
      }
    }

    const bool take_retire =
        retire && (!dispatch || std::get<0>(*retire) <= std::get<0>(*dispatch));

    if (take_retire) {
      auto [at, r, job] = *retire;
      pending_retire.erase(pending_retire.begin());
      const Job& j = tg.jobs[job];
      push_transition(j, TransitionTag::finish, at);
      push_transition(j, TransitionTag::complete, at + delta);
      engine_free = at + 2 * delta;
      complete[job] = at + 2 * delta;
      ++retired;
      for (std::size_t v : succs[job]) {
        ready[v] = std::max(ready[v], complete[job]);
        if (--unmet[v] == 0) eligible.insert({rank[v], v});
      }
    } else {
      auto [t0, r, job, core_index] = *dispatch;
      eligible.erase({r, job});
      const Job& j = tg.jobs[job];
      push_transition(j, TransitionTag::arrive, t0);
      push_transition(j, TransitionTag::start, t0 + delta);
      const time_us compute_start = t0 + 2 * delta;
      const time_us compute_end = compute_start + j.wcet;
      table.entries.push_back(ScheduleEntry{
          EntryKind::compute, j.process, j.k,
          first_compute_core + core_index, compute_start, j.wcet, {}});
      engine_free = t0 + 2 * delta;
      if (cores == 1) {
        engine_free = compute_end;
      } else {
        core_free[core_index] = compute_end;
      }
      pending_retire.insert({compute_end, r, job});
    }
  }

  std::sort(table.entries.begin(), table.entries.end(),
            [](const ScheduleEntry& a, const ScheduleEntry& b) {
              auto tag_rank = [](const ScheduleEntry& e) {
                return e.tag ? static_cast<int>(*e.tag) : -1;
              };
              return std::tie(a.start, a.core, a.process, a.k) <
                         std::tie(b.start, b.core, b.process, b.k) ||
                     (std::tie(a.start, a.core, a.process, a.k) ==
                          std::tie(b.start, b.core, b.process, b.k) &&
                      tag_rank(a) < tag_rank(b));
            });

  // Verdict: a job is late when its complete transition ends after its
  // absolute deadline.
  std::vector<std::size_t> misses;
  for (std::size_t i = 0; i < n; ++i) {
    if (complete[i] > tg.jobs[i].deadline) misses.push_back(i);
  }
  if (misses.empty()) {
    table.verdict = {true, ""};
  } else if (cores == 1) {
    if (auto dv = detail::worst_demand_violation(tg, delta)) {
      table.verdict = {false, "demand " + format_ms(dv->demand) + " ms > " +
                                  format_ms(dv->window) + " ms"};
    }
  }
  if (!misses.empty() && table.verdict.feasible) {
    std::sort(misses.begin(), misses.end(), [&](std::size_t a, std::size_t b) {
      const Job& ja = tg.jobs[a];
      const Job& jb = tg.jobs[b];
      return std::tie(ja.deadline, ja.process, ja.k) <
             std::tie(jb.deadline, jb.process, jb.k);
    });
    const Job& j = tg.jobs[misses.front()];
    table.verdict = {false, "job " + j.label() + " misses deadline: complete at " +
                               format_ms(complete[misses.front()]) + " ms > " +
                               format_ms(j.deadline) + " ms"};
  }
  return table;
}

inline ScheduleTable list_schedule(const TaskGraph& tg, const NetworkModel& net,
                                   int cores, time_us delta) {
  const auto order = priority_order(tg, net);
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  return list_schedule_ranked(tg, net, cores, delta, rank);
}

enum class ScheduleViolationKind {
  unknown_job,
  missing_job,
  duplicate_job,
  transition_shape,
  overlap,
  precedence,
  deadline_miss,
  verdict,
};

struct ScheduleViolation {
  ScheduleViolationKind kind;
  std::string message;

  bool operator==(const ScheduleViolation&) const = default;
};

/// Verifies a table against its task graph: jobs scheduled exactly once,
/// transitions well-formed, no per-core overlap, precedence respected
/// (predecessor complete before successor start transition) and deadlines
/// met. Empty result iff the table's verdict is feasible.
inline std::vector<ScheduleViolation> check_schedule(const ScheduleTable& table,
                                                     const TaskGraph& tg) {
  std::vector<ScheduleViolation> out;
  auto add = [&](ScheduleViolationKind kind, const std::string& message) {
    out.push_back({kind, message});
  };

  struct JobEntries {
    std::vector<const ScheduleEntry*> compute;
    std::map<TransitionTag, std::vector<const ScheduleEntry*>> transitions;
  };
  std::map<std::pair<std::string, int>, JobEntries> by_job;
  std::map<std::pair<std::string, int>, const Job*> known;
  for (const auto& j : tg.jobs) known[{j.process, j.k}] = &j;

  for (const auto& e : table.entries) {
    if (!known.count({e.process, e.k})) {
      add(ScheduleViolationKind::unknown_job,
          "entry refers to unknown job " + e.process + "[" +
              std::to_string(e.k) + "]");
      continue;
    }
    auto& je = by_job[{e.process, e.k}];
    if (e.kind == EntryKind::compute) {
      je.compute.push_back(&e);
    } else if (e.tag) {
      je.transitions[*e.tag].push_back(&e);
    }
  }

  for (const auto& j : tg.jobs) {
    const auto it = by_job.find({j.process, j.k});
    const std::size_t count =
        it == by_job.end() ? 0 : it->second.compute.size();
    if (count == 0) {
      add(ScheduleViolationKind::missing_job,
          "job " + j.label() + " is not scheduled");
    } else if (count > 1) {
      add(ScheduleViolationKind::duplicate_job,
          "job " + j.label() + " is scheduled " + std::to_string(count) +
              " times");
    }
  }

  // Lifecycle positions per job; with delta == 0 the compute segment stands
  // for the whole lifecycle.
  std::map<std::pair<std::string, int>, std::pair<time_us, time_us>> lifecycle;
  for (const auto& j : tg.jobs) {
    const auto it = by_job.find({j.process, j.k});
    if (it == by_job.end() || it->second.compute.size() != 1) continue;
    const ScheduleEntry& c = *it->second.compute.front();
    time_us start_begin = c.start;
    time_us complete_end = c.end();
    if (table.delta > 0) {
      bool shape_ok = true;
      for (TransitionTag tag : {TransitionTag::arrive, TransitionTag::start,
                                TransitionTag::finish, TransitionTag::complete}) {
        const auto& ts = it->second.transitions[tag];
        if (ts.size() != 1) {
          add(ScheduleViolationKind::transition_shape,
              "job " + j.label() + " has " + std::to_string(ts.size()) + " " +
                  to_string(tag) + " transitions");
          shape_ok = false;
          continue;
        }
        const ScheduleEntry& t = *ts.front();
        if (t.duration != table.delta) {
          add(ScheduleViolationKind::transition_shape,
              "job " + j.label() + " " + to_string(tag) +
                  " transition has duration " + std::to_string(t.duration) +
                  " us, expected " + std::to_string(table.delta) + " us");
          shape_ok = false;
        }
        if (t.core != 0) {
          add(ScheduleViolationKind::transition_shape,
              "job " + j.label() + " " + to_string(tag) +
                  " transition is not on the engine core");
          shape_ok = false;
        }
      }
      if (shape_ok) {
        const ScheduleEntry& a = *it->second.transitions[TransitionTag::arrive][0];
        const ScheduleEntry& s = *it->second.transitions[TransitionTag::start][0];
        const ScheduleEntry& f = *it->second.transitions[TransitionTag::finish][0];
        const ScheduleEntry& cm =
            *it->second.transitions[TransitionTag::complete][0];
        if (!(a.end() <= s.start && s.end() <= c.start && c.end() <= f.start &&
              f.end() <= cm.start)) {
          add(ScheduleViolationKind::transition_shape,
              "job " + j.label() +
                  " transitions are not ordered around its compute segment");
        } else {
          start_begin = s.start;
          complete_end = cm.end();
        }
      }
    }
    lifecycle[{j.process, j.k}] = {start_begin, complete_end};
  }

  // Per-core overlap.
  std::map<int, std::vector<const ScheduleEntry*>> per_core;
  for (const auto& e : table.entries) per_core[e.core].push_back(&e);
  for (auto& [core, entries] : per_core) {
    std::sort(entries.begin(), entries.end(),
              [](const ScheduleEntry* a, const ScheduleEntry* b) {
                return std::tie(a->start, a->process, a->k) <
                       std::tie(b->start, b->process, b->k);
              });
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
      const ScheduleEntry& a = *entries[i];
      const ScheduleEntry& b = *entries[i + 1];
      if (a.end() > b.start) {
        add(ScheduleViolationKind::overlap,
            "entries for " + a.process + "[" + std::to_string(a.k) + "] and " +
                b.process + "[" + std::to_string(b.k) + "] overlap on core " +
                std::to_string(core));
      }
    }
  }

  for (const auto& [u, v] : tg.edges) {
    const Job& pu = tg.jobs[u];
    const Job& pv = tg.jobs[v];
    const auto lu = lifecycle.find({pu.process, pu.k});
    const auto lv = lifecycle.find({pv.process, pv.k});
    if (lu == lifecycle.end() || lv == lifecycle.end()) continue;
    if (lu->second.second > lv->second.first) {
      add(ScheduleViolationKind::precedence,
          "precedence violated: " + pu.label() + " completes at " +
              format_ms(lu->second.second) + " ms after " + pv.label() +
              " starts at " + format_ms(lv->second.first) + " ms");
    }
  }

  for (const auto& j : tg.jobs) {
    const auto it = lifecycle.find({j.process, j.k});
    if (it == lifecycle.end()) continue;
    if (it->second.second > j.deadline) {
      add(ScheduleViolationKind::deadline_miss,
          "job " + j.label() + " misses deadline: complete at " +
              format_ms(it->second.second) + " ms > " + format_ms(j.deadline) +
              " ms");
    }
  }

  if (!table.verdict.feasible && out.empty()) {
    add(ScheduleViolationKind::verdict,
        "verdict is infeasible but the table meets every constraint");
  }
  return out;
}

/// Smallest total core count in 1..max_cores whose list schedule is
/// feasible, or nullopt.
inline std::optional<int> min_cores(const TaskGraph& tg, const NetworkModel& net,
                                    time_us delta, int max_cores) {
  if (max_cores < 1) throw error("max_cores must be >= 1");
  for (int c = 1; c <= max_cores; ++c) {
    if (list_schedule(tg, net, c, delta).verdict.feasible) return c;
  }
  return std::nullopt;
}

}  // namespace fppn
