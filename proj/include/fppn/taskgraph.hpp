#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fppn/model.hpp"

namespace fppn {

/// One invocation of a process: arrival, absolute deadline and WCET in
/// microseconds.
struct Job {
  std::string process;
  int k = 0;
  time_us arrival = 0;
  time_us deadline = 0;
  time_us wcet = 0;

  std::string label() const {
    return process + "[" + std::to_string(k) + "]";
  }

  bool operator==(const Job&) const = default;
};

/// Jobs over a horizon plus execution-order constraints. Jobs are sorted by
/// (process, k); edges are index pairs into that vector, sorted, and form a
/// transitively reduced DAG.
struct TaskGraph {
  std::vector<Job> jobs;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool operator==(const TaskGraph&) const = default;

  std::optional<std::size_t> find_index(const std::string& process, int k) const {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].process == process && jobs[i].k == k) return i;
    }
    return std::nullopt;
  }

  std::size_t index_of(const std::string& process, int k) const {
    if (const auto i = find_index(process, k)) return *i;
    throw error("unknown job " + process + "[" + std::to_string(k) + "]");
  }

  std::vector<std::vector<std::size_t>> successors() const {
    std::vector<std::vector<std::size_t>> adj(jobs.size());
    for (const auto& [u, v] : edges) adj[u].push_back(v);
    return adj;
  }

  std::vector<std::vector<std::size_t>> predecessors() const {
    std::vector<std::vector<std::size_t>> adj(jobs.size());
    for (const auto& [u, v] : edges) adj[v].push_back(u);
    return adj;
  }
};

/// Unrolls every process over the horizon: job p[k] arrives at k*T with
/// deadline k*T + d and the process WCET. Release offsets are zero. Sporadic
/// processes unroll at their minimal inter-arrival rate.
inline std::vector<Job> unroll_jobs(const NetworkModel& net, time_us horizon) {
  if (horizon <= 0) {
    throw error("horizon must be positive");
  }
  const time_us hp = hyperperiod(net);
  if (horizon % hp != 0) {
    throw error("horizon " + std::to_string(horizon) +
                " us is not a multiple of the hyperperiod " +
                std::to_string(hp) + " us");
  }
  std::vector<Job> jobs;
  for (const auto& p : net.processes) {
    if (!p.wcet) {
      throw error("process " + p.id + " has no WCET");
    }
    const std::int64_t count = horizon / p.period;
    for (std::int64_t k = 0; k < count; ++k) {
      jobs.push_back(Job{p.id, static_cast<int>(k), k * p.period,
                         k * p.period + p.deadline, *p.wcet});
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return std::tie(a.process, a.k) < std::tie(b.process, b.k);
  });
  return jobs;
}

namespace detail {

inline bool windows_overlap(const Job& a, const Job& b) {
  return a.arrival < b.deadline && b.arrival < a.deadline;
}

/// Keeps only edges without an alternate path of length >= 2. For a DAG the
/// reduction is unique.
inline std::vector<std::pair<std::size_t, std::size_t>> transitive_reduction(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    ++indeg[v];
  }
  // Kahn topological order.
  std::vector<std::size_t> topo;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) stack.push_back(i);
  }
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    topo.push_back(u);
    for (std::size_t v : adj[u]) {
      if (--indeg[v] == 0) stack.push_back(v);
    }
  }
  if (topo.size() != n) {
    throw error("task graph edges contain a cycle");
  }

  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    std::size_t u = *it;
    for (std::size_t v : adj[u]) {
      reach[u][v] = 1;
      for (std::size_t w = 0; w < n; ++w) {
        if (reach[v][w]) reach[u][w] = 1;
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> kept;
  for (const auto& [u, v] : edges) {
    bool redundant = false;
    for (std::size_t w : adj[u]) {
      if (w != v && reach[w][v]) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back({u, v});
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

}  // namespace detail

/// Precedence edges: p[k] -> q[m] whenever p functionally precedes q and the
/// two scheduling windows overlap, plus serialization edges p[k] -> p[k+1].
/// Non-overlapping windows cannot race on a channel, so no edge is needed.
inline std::vector<std::pair<std::size_t, std::size_t>> derive_edges(
    const NetworkModel& net, const std::vector<Job>& jobs) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  // fp_precedes per process pair, computed once.
  std::map<std::pair<std::string, std::string>, bool> fp;
  for (const auto& p : net.processes) {
    for (const auto& q : net.processes) {
      if (p.id != q.id) fp[{p.id, q.id}] = fp_precedes(net, p.id, q.id);
    }
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!net.find_process(jobs[i].process)) {
      throw error("job references unknown process " + jobs[i].process);
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (i == j) continue;
      const Job& a = jobs[i];
      const Job& b = jobs[j];
      if (a.process == b.process) {
        if (b.k == a.k + 1) edges.push_back({i, j});
      } else if (fp.at({a.process, b.process}) &&
                 detail::windows_overlap(a, b)) {
        edges.push_back({i, j});
      }
    }
  }
  return detail::transitive_reduction(jobs.size(), edges);
}

inline TaskGraph build_task_graph(const NetworkModel& net, time_us horizon) {
  TaskGraph tg;
  tg.jobs = unroll_jobs(net, horizon);
  tg.edges = derive_edges(net, tg.jobs);
  return tg;
}

}  // namespace fppn
