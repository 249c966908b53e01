#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fppn/time.hpp"

namespace fppn {

using Value = std::int64_t;

enum class ProcessKind { periodic, sporadic };
enum class ChannelKind { mailbox, blackboard };

/// Scripted behavior reference: a registry name plus integer parameters,
/// e.g. {"source", {1, 2, 3}} or {"constant", {5}}.
struct BehaviorSpec {
  std::string name = "sink";
  std::vector<Value> params;

  bool operator==(const BehaviorSpec&) const = default;
};

struct ProcessSpec {
  std::string id;
  ProcessKind kind = ProcessKind::periodic;
  /// Period for periodic processes, minimal inter-arrival time for sporadic.
  time_us period = 0;
  time_us deadline = 0;
  /// Absent means a task graph cannot be built from this process.
  std::optional<time_us> wcet;
  /// Unique per network; a smaller index means higher functional priority.
  int fpriority = 0;
  BehaviorSpec behavior;

  bool operator==(const ProcessSpec&) const = default;
};

struct ChannelSpec {
  std::string id;
  ChannelKind kind = ChannelKind::blackboard;
  std::string writer;
  std::string reader;
  /// Minimum size in bytes of the communicated data type; informational.
  std::int64_t data_size = 1;
  /// FIFO capacity; mailboxes only.
  std::optional<int> length;
  /// Whether the channel carries a functional-priority arrow.
  bool ordered = true;

  bool operator==(const ChannelSpec&) const = default;
};

struct NetworkModel {
  std::vector<ProcessSpec> processes;
  std::vector<ChannelSpec> channels;
  /// sporadic process id -> the periodic process polling for it.
  std::map<std::string, std::string> couplings;

  bool operator==(const NetworkModel&) const = default;

  const ProcessSpec* find_process(const std::string& id) const {
    for (const auto& p : processes) {
      if (p.id == id) return &p;
    }
    return nullptr;
  }

  const ChannelSpec* find_channel(const std::string& id) const {
    for (const auto& c : channels) {
      if (c.id == id) return &c;
    }
    return nullptr;
  }

  const ProcessSpec& process(const std::string& id) const {
    if (const ProcessSpec* p = find_process(id)) return *p;
    throw error("unknown process: " + id);
  }
};

/// A structural problem found by validate_network, keyed by the offending
/// entity id.
struct Violation {
  std::string entity;
  std::string message;

  bool operator==(const Violation&) const = default;
};

namespace detail {

inline bool channel_connects(const ChannelSpec& c, const std::string& a,
                             const std::string& b) {
  return (c.writer == a && c.reader == b) || (c.writer == b && c.reader == a);
}

/// Ids are restricted so that every serialized format can embed them
/// without quoting.
inline bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

/// Checks every structural invariant of the network. Violations are data,
/// not failures; the list is sorted by (entity, message) and empty for a
/// valid model.
inline std::vector<Violation> validate_network(const NetworkModel& net) {
  std::vector<Violation> out;
  auto add = [&](const std::string& entity, const std::string& message) {
    out.push_back({entity, message});
  };

  std::set<std::string> seen_proc;
  for (const auto& p : net.processes) {
    if (!detail::valid_id(p.id)) {
      add(p.id, "id must be non-empty and use only [A-Za-z0-9_]");
    }
    if (!seen_proc.insert(p.id).second) {
      add(p.id, "duplicate process id");
      continue;
    }
    const bool sporadic = p.kind == ProcessKind::sporadic;
    if (p.period <= 0) {
      add(p.id, sporadic ? "min inter-arrival time must be positive"
                         : "period must be positive");
    }
    if (p.deadline <= 0) {
      add(p.id, "deadline must be positive");
    }
    if (p.wcet) {
      if (*p.wcet <= 0) {
        add(p.id, "wcet must be positive");
      } else if (*p.wcet > p.deadline) {
        add(p.id, "wcet exceeds deadline");
      }
    }
    if (p.fpriority <= 0) {
      add(p.id, "Fpriority must be a positive integer");
    }
  }

  // Functional priorities are unique network-wide; one violation per
  // colliding pair, naming both processes.
  std::map<int, std::vector<std::string>> by_prio;
  for (const auto& p : net.processes) by_prio[p.fpriority].push_back(p.id);
  for (auto& [prio, ids] : by_prio) {
    if (ids.size() < 2) continue;
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        add(ids[i], "Fpriority " + std::to_string(prio) +
                        " is also used by process " + ids[j]);
      }
    }
  }

  std::set<std::string> seen_chan;
  for (const auto& c : net.channels) {
    if (!detail::valid_id(c.id)) {
      add(c.id, "id must be non-empty and use only [A-Za-z0-9_]");
    }
    if (!seen_chan.insert(c.id).second) {
      add(c.id, "duplicate channel id");
      continue;
    }
    if (!net.find_process(c.writer)) {
      add(c.id, "writer references unknown process " + c.writer);
    }
    if (!net.find_process(c.reader)) {
      add(c.id, "reader references unknown process " + c.reader);
    }
    if (c.writer == c.reader) {
      add(c.id, "writer and reader must differ");
    }
    if (c.data_size <= 0) {
      add(c.id, "DataChannelSize must be positive");
    }
    if (c.kind == ChannelKind::mailbox) {
      if (!c.length) {
        add(c.id, "mailbox requires a length");
      } else if (*c.length < 1) {
        add(c.id, "mailbox length must be >= 1");
      }
    } else if (c.length) {
      add(c.id, "blackboard must not declare a length");
    }
  }

  for (const auto& [sporadic, periodic] : net.couplings) {
    const ProcessSpec* s = net.find_process(sporadic);
    const ProcessSpec* p = net.find_process(periodic);
    if (!s) {
      add(sporadic, "coupling references unknown process " + sporadic);
    } else if (s->kind != ProcessKind::sporadic) {
      add(sporadic, "coupling source is not a sporadic process");
    }
    if (!p) {
      add(sporadic, "coupling references unknown process " + periodic);
    } else if (p->kind != ProcessKind::periodic) {
      add(sporadic, "coupling target " + periodic + " is not a periodic process");
    }
    if (s && p) {
      bool connected = false;
      for (const auto& c : net.channels) {
        if (detail::channel_connects(c, sporadic, periodic)) connected = true;
      }
      if (!connected) {
        add(sporadic, "no channel connects sporadic " + sporadic +
                          " to its coupled periodic process " + periodic);
      }
    }
  }
  for (const auto& p : net.processes) {
    if (p.kind == ProcessKind::sporadic && !net.couplings.count(p.id)) {
      add(p.id, "sporadic process has no coupled periodic process");
    }
  }

  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.entity, a.message) < std::tie(b.entity, b.message);
  });
  return out;
}

/// True iff p functionally precedes q: p has the smaller priority index and
/// some channel between the two carries a priority arrow. Only communicating
/// pairs are ever related.
inline bool fp_precedes(const NetworkModel& net, const std::string& p,
                        const std::string& q) {
  if (p == q) {
    throw error("fp_precedes: reflexive query for process " + p);
  }
  const ProcessSpec& a = net.process(p);
  const ProcessSpec& b = net.process(q);
  if (a.fpriority >= b.fpriority) return false;
  for (const auto& c : net.channels) {
    if (c.ordered && detail::channel_connects(c, p, q)) return true;
  }
  return false;
}

/// Least common multiple of all periods and minimal inter-arrival times.
inline time_us hyperperiod(const NetworkModel& net) {
  if (net.processes.empty()) {
    throw error("hyperperiod of an empty network");
  }
  time_us acc = 1;
  for (const auto& p : net.processes) {
    if (p.period <= 0) {
      throw error("process " + p.id + " has a non-positive period");
    }
    acc = checked_lcm(acc, p.period);
  }
  return acc;
}

}  // namespace fppn
