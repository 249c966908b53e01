#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fppn/model.hpp"
#include "fppn/schedule.hpp"
#include "fppn/sim.hpp"
#include "fppn/taskgraph.hpp"

namespace fppn {

struct ParseError {
  int line = 0;  // 1-based
  int col = 0;   // 1-based
  std::string message;

  bool operator==(const ParseError&) const = default;
};

namespace detail {

struct Token {
  std::string text;
  int col = 0;
};

inline std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

inline bool parse_int(std::string_view text, std::int64_t& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto r = std::from_chars(begin, end, out);
  return r.ec == std::errc{} && r.ptr == end;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

inline bool parse_behavior(const std::string& text, BehaviorSpec& out) {
  const auto colon = text.find(':');
  out.name = text.substr(0, colon == std::string::npos ? text.size() : colon);
  out.params.clear();
  if (out.name.empty()) return false;
  if (colon == std::string::npos) return true;
  for (const auto& part : split(text.substr(colon + 1), ',')) {
    std::int64_t v = 0;
    if (!parse_int(part, v)) return false;
    out.params.push_back(v);
  }
  return true;
}

inline std::string behavior_text(const BehaviorSpec& b) {
  std::string out = b.name;
  for (std::size_t i = 0; i < b.params.size(); ++i) {
    out += i == 0 ? ':' : ',';
    out += std::to_string(b.params[i]);
  }
  return out;
}

}  // namespace detail

struct ModelParseResult {
  std::optional<NetworkModel> model;  // present iff errors is empty
  std::vector<ParseError> errors;
};

/// Line-oriented model text. `#` starts a comment; sections `processes:`,
/// `channels:` and `couplings:` introduce records. A process or channel
/// record is its id followed by key=value fields; a coupling record is
/// `<sporadic> -> <periodic>`.
inline ModelParseResult parse_model(const std::string& text) {
  ModelParseResult result;
  NetworkModel net;
  auto fail = [&](int line, int col, const std::string& message) {
    result.errors.push_back({line, col, message});
  };

  enum class Section { none, processes, channels, couplings };
  Section section = Section::none;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = detail::tokenize(detail::strip_comment(raw));
    if (tokens.empty()) continue;
    const auto& head = tokens.front();
    if (head.text == "processes:" || head.text == "channels:" ||
        head.text == "couplings:") {
      if (tokens.size() > 1) {
        fail(line_no, tokens[1].col, "unexpected text after section header");
        continue;
      }
      section = head.text == "processes:"  ? Section::processes
                : head.text == "channels:" ? Section::channels
                                           : Section::couplings;
      continue;
    }
    switch (section) {
      case Section::none:
        fail(line_no, head.col, "expected a section header");
        break;
      case Section::couplings: {
        if (tokens.size() != 3 || tokens[1].text != "->") {
          fail(line_no, head.col, "expected '<sporadic> -> <periodic>'");
          break;
        }
        if (net.couplings.count(head.text)) {
          fail(line_no, head.col,
               "duplicate coupling for process " + head.text);
          break;
        }
        net.couplings[head.text] = tokens[2].text;
        break;
      }
      case Section::processes: {
        ProcessSpec p;
        p.id = head.text;
        bool have_class = false, have_period = false, have_deadline = false,
             have_priority = false;
        bool ok = true;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          const auto& t = tokens[i];
          const auto eq = t.text.find('=');
          if (eq == std::string::npos) {
            fail(line_no, t.col, "expected key=value");
            ok = false;
            continue;
          }
          const std::string key = t.text.substr(0, eq);
          const std::string value = t.text.substr(eq + 1);
          const int vcol = t.col + static_cast<int>(eq) + 1;
          std::int64_t num = 0;
          if (key == "FPPNClass") {
            if (value == "periodic") {
              p.kind = ProcessKind::periodic;
            } else if (value == "sporadic") {
              p.kind = ProcessKind::sporadic;
            } else {
              fail(line_no, vcol, "FPPNClass must be periodic or sporadic");
              ok = false;
              continue;
            }
            have_class = true;
          } else if (key == "period_us" || key == "miat_us") {
            if (!detail::parse_int(value, num)) {
              fail(line_no, vcol, key + " must be an integer");
              ok = false;
              continue;
            }
            if (have_period) {
              fail(line_no, t.col, "duplicate period");
              ok = false;
              continue;
            }
            p.period = num;
            have_period = true;
          } else if (key == "deadline_us") {
            if (!detail::parse_int(value, num)) {
              fail(line_no, vcol, "deadline_us must be an integer");
              ok = false;
              continue;
            }
            p.deadline = num;
            have_deadline = true;
          } else if (key == "wcet_us") {
            if (!detail::parse_int(value, num)) {
              fail(line_no, vcol, "wcet_us must be an integer");
              ok = false;
              continue;
            }
            p.wcet = num;
          } else if (key == "Fpriority") {
            if (!detail::parse_int(value, num)) {
              fail(line_no, vcol, "Fpriority must be an integer");
              ok = false;
              continue;
            }
            p.fpriority = static_cast<int>(num);
            have_priority = true;
          } else if (key == "behavior") {
            if (!detail::parse_behavior(value, p.behavior)) {
              fail(line_no, vcol, "malformed behavior");
              ok = false;
              continue;
            }
          } else {
            fail(line_no, t.col, "unknown process key " + key);
            ok = false;
          }
        }
        if (!have_class) {
          fail(line_no, head.col, p.id + ": missing FPPNClass");
          ok = false;
        }
        if (!have_period) {
          fail(line_no, head.col, p.id + ": missing period_us or miat_us");
          ok = false;
        }
        if (!have_deadline) {
          fail(line_no, head.col, p.id + ": missing deadline_us");
          ok = false;
        }
        if (!have_priority) {
          fail(line_no, head.col, p.id + ": missing Fpriority");
          ok = false;
        }
        if (ok) net.processes.push_back(std::move(p));
        break;
      }
      case Section::channels: {
        ChannelSpec c;
        c.id = head.text;
        bool have_kind = false, have_writer = false, have_reader = false,
             have_size = false;
        bool ok = true;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          const auto& t = tokens[i];
          const auto eq = t.text.find('=');
          if (eq == std::string::npos) {
            fail(line_no, t.col, "expected key=value");
            ok = false;
            continue;
          }
          const std::string key = t.text.substr(0, eq);
          const std::string value = t.text.substr(eq + 1);
          const int vcol = t.col + static_cast<int>(eq) + 1;
          std::int64_t num = 0;
          if (key == "kind") {
            if (value == "mailbox") {
              c.kind = ChannelKind::mailbox;
            } else if (value == "blackboard") {
              c.kind = ChannelKind::blackboard;
            } else {
              fail(line_no, vcol, "kind must be mailbox or blackboard");
              ok = false;
              continue;
            }
            have_kind = true;
          } else if (key == "writer") {
            c.writer = value;
            have_writer = true;
          } else if (key == "reader") {
            c.reader = value;
            have_reader = true;
          } else if (key == "DataChannelSize") {
            if (!detail::parse_int(value, num)) {
              fail(line_no, vcol, "DataChannelSize must be an integer");
              ok = false;
              continue;
            }
            c.data_size = num;
            have_size = true;
          } else if (key == "DataChannelLength") {
            if (!detail::parse_int(value, num)) {
              fail(line_no, vcol, "DataChannelLength must be an integer");
              ok = false;
              continue;
            }
            c.length = num;
          } else if (key == "ordered") {
            if (value == "true") {
              c.ordered = true;
            } else if (value == "false") {
              c.ordered = false;
            } else {
              fail(line_no, vcol, "ordered must be true or false");
              ok = false;
              continue;
            }
          } else {
            fail(line_no, t.col, "unknown channel key " + key);
            ok = false;
          }
        }
        if (!have_kind) {
          fail(line_no, head.col, c.id + ": missing kind");
          ok = false;
        }
        if (!have_writer) {
          fail(line_no, head.col, c.id + ": missing writer");
          ok = false;
        }
        if (!have_reader) {
          fail(line_no, head.col, c.id + ": missing reader");
          ok = false;
        }
        if (!have_size) {
          fail(line_no, head.col, c.id + ": missing DataChannelSize");
          ok = false;
        }
        if (ok) net.channels.push_back(std::move(c));
        break;
      }
    }
  }
  if (result.errors.empty()) result.model = std::move(net);
  return result;
}

inline std::string emit_model(const NetworkModel& net) {
  std::ostringstream out;
  out << "processes:\n";
  for (const auto& p : net.processes) {
    out << "  " << p.id
        << " FPPNClass=" << (p.kind == ProcessKind::periodic ? "periodic" : "sporadic")
        << (p.kind == ProcessKind::periodic ? " period_us=" : " miat_us=")
        << p.period << " deadline_us=" << p.deadline;
    if (p.wcet) out << " wcet_us=" << *p.wcet;
    out << " Fpriority=" << p.fpriority
        << " behavior=" << detail::behavior_text(p.behavior) << "\n";
  }
  out << "channels:\n";
  for (const auto& c : net.channels) {
    out << "  " << c.id
        << " kind=" << (c.kind == ChannelKind::mailbox ? "mailbox" : "blackboard")
        << " writer=" << c.writer << " reader=" << c.reader
        << " DataChannelSize=" << c.data_size;
    if (c.length) out << " DataChannelLength=" << *c.length;
    if (!c.ordered) out << " ordered=false";
    out << "\n";
  }
  if (!net.couplings.empty()) {
    out << "couplings:\n";
    for (const auto& [sporadic, periodic] : net.couplings) {
      out << "  " << sporadic << " -> " << periodic << "\n";
    }
  }
  return out.str();
}

struct EventParseResult {
  std::optional<std::vector<Event>> events;
  std::vector<ParseError> errors;
};

/// One event per line: `<time_us> <process> <payload>`.
inline EventParseResult parse_events(const std::string& text) {
  EventParseResult result;
  std::vector<Event> events;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = detail::tokenize(detail::strip_comment(raw));
    if (tokens.empty()) continue;
    if (tokens.size() != 3) {
      result.errors.push_back(
          {line_no, tokens.front().col, "expected '<time_us> <process> <payload>'"});
      continue;
    }
    Event e;
    if (!detail::parse_int(tokens[0].text, e.time)) {
      result.errors.push_back({line_no, tokens[0].col, "time must be an integer"});
      continue;
    }
    e.process = tokens[1].text;
    if (!detail::parse_int(tokens[2].text, e.payload)) {
      result.errors.push_back(
          {line_no, tokens[2].col, "payload must be an integer"});
      continue;
    }
    events.push_back(std::move(e));
  }
  if (result.errors.empty()) result.events = std::move(events);
  return result;
}

inline std::string emit_events(const std::vector<Event>& events) {
  std::ostringstream out;
  for (const auto& e : events) {
    out << e.time << " " << e.process << " " << e.payload << "\n";
  }
  return out.str();
}

inline std::string emit_schedule(const ScheduleTable& table) {
  std::ostringstream out;
  out << "# fppn-schedule cores=" << table.core_count
      << " delta_us=" << table.delta << "\n";
  out << "# verdict: ";
  if (table.verdict.feasible) {
    out << "feasible";
  } else {
    out << "infeasible: " << table.verdict.reason;
  }
  out << "\n";
  out << "kind,process,k,core,start_us,duration_us,tag\n";
  for (const auto& e : table.entries) {
    out << (e.kind == EntryKind::compute ? "compute" : "transition") << ","
        << e.process << "," << e.k << "," << e.core << "," << e.start << ","
        << e.duration << "," << (e.tag ? to_string(*e.tag) : "") << "\n";
  }
  return out.str();
}

struct ScheduleParseResult {
  std::optional<ScheduleTable> table;
  std::vector<ParseError> errors;
};

inline ScheduleParseResult parse_schedule(const std::string& text) {
  ScheduleParseResult result;
  ScheduleTable table;
  bool have_meta = false;
  bool have_verdict = false;
  bool have_header = false;
  auto fail = [&](int line, int col, const std::string& message) {
    result.errors.push_back({line, col, message});
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.rfind("# fppn-schedule", 0) == 0) {
      for (const auto& t : detail::tokenize(raw.substr(15))) {
        const auto eq = t.text.find('=');
        if (eq == std::string::npos) {
          fail(line_no, t.col + 15, "expected key=value");
          continue;
        }
        const std::string key = t.text.substr(0, eq);
        const std::string value = t.text.substr(eq + 1);
        std::int64_t num = 0;
        if (key == "cores" && detail::parse_int(value, num)) {
          table.core_count = static_cast<int>(num);
        } else if (key == "delta_us" && detail::parse_int(value, num)) {
          table.delta = num;
        } else {
          fail(line_no, t.col + 15, "bad metadata " + t.text);
        }
      }
      have_meta = true;
      continue;
    }
    if (raw.rfind("# verdict:", 0) == 0) {
      std::string rest = raw.substr(10);
      if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
      if (rest == "feasible") {
        table.verdict.feasible = true;
      } else if (rest == "infeasible") {
        table.verdict.feasible = false;
      } else if (rest.rfind("infeasible: ", 0) == 0) {
        table.verdict.feasible = false;
        table.verdict.reason = rest.substr(12);
      } else {
        fail(line_no, 1, "verdict must be feasible or infeasible");
      }
      have_verdict = true;
      continue;
    }
    if (!raw.empty() && raw[0] == '#') continue;
    if (detail::tokenize(raw).empty()) continue;
    if (!have_header) {
      if (raw != "kind,process,k,core,start_us,duration_us,tag") {
        fail(line_no, 1, "expected the schedule header row");
      }
      have_header = true;
      continue;
    }
    const auto fields = detail::split(raw, ',');
    if (fields.size() != 7) {
      fail(line_no, 1, "expected 7 fields");
      continue;
    }
    ScheduleEntry e;
    if (fields[0] == "compute") {
      e.kind = EntryKind::compute;
    } else if (fields[0] == "transition") {
      e.kind = EntryKind::transition;
    } else {
      fail(line_no, 1, "kind must be compute or transition");
      continue;
    }
    e.process = fields[1];
    std::int64_t num = 0;
    if (!detail::parse_int(fields[2], num)) {
      fail(line_no, 1, "k must be an integer");
      continue;
    }
    e.k = static_cast<int>(num);
    if (!detail::parse_int(fields[3], num)) {
      fail(line_no, 1, "core must be an integer");
      continue;
    }
    e.core = static_cast<int>(num);
    if (!detail::parse_int(fields[4], e.start)) {
      fail(line_no, 1, "start_us must be an integer");
      continue;
    }
    if (!detail::parse_int(fields[5], e.duration)) {
      fail(line_no, 1, "duration_us must be an integer");
      continue;
    }
    if (e.kind == EntryKind::transition) {
      if (fields[6] == "arrive") {
        e.tag = TransitionTag::arrive;
      } else if (fields[6] == "start") {
        e.tag = TransitionTag::start;
      } else if (fields[6] == "finish") {
        e.tag = TransitionTag::finish;
      } else if (fields[6] == "complete") {
        e.tag = TransitionTag::complete;
      } else {
        fail(line_no, 1, "unknown transition tag " + fields[6]);
        continue;
      }
    } else if (!fields[6].empty()) {
      fail(line_no, 1, "compute entries take no tag");
      continue;
    }
    table.entries.push_back(std::move(e));
  }
  if (!have_meta) fail(1, 1, "missing '# fppn-schedule' metadata line");
  if (!have_verdict) fail(1, 1, "missing '# verdict:' line");
  if (!have_header) fail(1, 1, "missing the schedule header row");
  if (result.errors.empty()) result.table = std::move(table);
  return result;
}

inline std::string emit_task_graph(const TaskGraph& tg) {
  std::ostringstream out;
  for (const auto& j : tg.jobs) {
    out << "job " << j.process << " " << j.k << " " << j.arrival << " "
        << j.deadline << " " << j.wcet << "\n";
  }
  for (const auto& [u, v] : tg.edges) {
    out << "edge " << tg.jobs[u].process << " " << tg.jobs[u].k << " "
        << tg.jobs[v].process << " " << tg.jobs[v].k << "\n";
  }
  return out.str();
}

struct TaskGraphParseResult {
  std::optional<TaskGraph> graph;
  std::vector<ParseError> errors;
};

inline TaskGraphParseResult parse_task_graph(const std::string& text) {
  TaskGraphParseResult result;
  TaskGraph tg;
  struct PendingEdge {
    std::string p;
    int pk;
    std::string q;
    int qk;
    int line;
  };
  std::vector<PendingEdge> pending;
  auto fail = [&](int line, int col, const std::string& message) {
    result.errors.push_back({line, col, message});
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = detail::tokenize(detail::strip_comment(raw));
    if (tokens.empty()) continue;
    if (tokens[0].text == "job") {
      if (tokens.size() != 6) {
        fail(line_no, tokens[0].col,
             "expected 'job <process> <k> <arrival_us> <deadline_us> <wcet_us>'");
        continue;
      }
      Job j;
      j.process = tokens[1].text;
      std::int64_t num = 0;
      bool ok = true;
      if (!detail::parse_int(tokens[2].text, num)) {
        fail(line_no, tokens[2].col, "k must be an integer");
        ok = false;
      }
      j.k = static_cast<int>(num);
      if (!detail::parse_int(tokens[3].text, j.arrival)) {
        fail(line_no, tokens[3].col, "arrival_us must be an integer");
        ok = false;
      }
      if (!detail::parse_int(tokens[4].text, j.deadline)) {
        fail(line_no, tokens[4].col, "deadline_us must be an integer");
        ok = false;
      }
      if (!detail::parse_int(tokens[5].text, j.wcet)) {
        fail(line_no, tokens[5].col, "wcet_us must be an integer");
        ok = false;
      }
      if (ok) tg.jobs.push_back(std::move(j));
    } else if (tokens[0].text == "edge") {
      if (tokens.size() != 5) {
        fail(line_no, tokens[0].col, "expected 'edge <process> <k> <process> <k>'");
        continue;
      }
      std::int64_t pk = 0, qk = 0;
      if (!detail::parse_int(tokens[2].text, pk)) {
        fail(line_no, tokens[2].col, "k must be an integer");
        continue;
      }
      if (!detail::parse_int(tokens[4].text, qk)) {
        fail(line_no, tokens[4].col, "k must be an integer");
        continue;
      }
      pending.push_back({tokens[1].text, static_cast<int>(pk), tokens[3].text,
                         static_cast<int>(qk), line_no});
    } else {
      fail(line_no, tokens[0].col, "expected 'job' or 'edge'");
    }
  }
  for (const auto& e : pending) {
    const auto u = tg.find_index(e.p, e.pk);
    const auto v = tg.find_index(e.q, e.qk);
    if (!u || !v) {
      fail(e.line, 1, "edge refers to an undeclared job");
      continue;
    }
    tg.edges.emplace_back(*u, *v);
  }
  std::sort(tg.edges.begin(), tg.edges.end());
  if (result.errors.empty()) result.graph = std::move(tg);
  return result;
}

namespace detail {

inline const char* trace_kind_name(TraceKind k) {
  switch (k) {
    case TraceKind::job_start: return "job-start";
    case TraceKind::read: return "read";
    case TraceKind::write: return "write";
    case TraceKind::output: return "output";
    case TraceKind::job_end: return "job-end";
  }
  return "?";
}

}  // namespace detail

inline std::string emit_trace(const ExecutionTrace& trace) {
  std::ostringstream out;
  for (const auto& r : trace.records) {
    out << detail::trace_kind_name(r.kind) << " " << r.time << " " << r.process
        << " " << r.k;
    switch (r.kind) {
      case TraceKind::job_start:
        out << " " << r.core;
        break;
      case TraceKind::read:
        out << " " << r.channel << " ";
        if (r.value) {
          out << *r.value;
        } else {
          out << "-";
        }
        break;
      case TraceKind::write:
        out << " " << r.channel << " " << *r.value << " "
            << (*r.status == WriteStatus::accepted ? "accepted" : "dropped");
        break;
      case TraceKind::output:
        out << " " << *r.value;
        break;
      case TraceKind::job_end:
        break;
    }
    out << "\n";
  }
  return out.str();
}

struct TraceParseResult {
  std::optional<ExecutionTrace> trace;
  std::vector<ParseError> errors;
};

inline TraceParseResult parse_trace(const std::string& text) {
  TraceParseResult result;
  ExecutionTrace trace;
  auto fail = [&](int line, int col, const std::string& message) {
    result.errors.push_back({line, col, message});
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = detail::tokenize(detail::strip_comment(raw));
    if (tokens.empty()) continue;
    TraceRecord r;
    const std::string& kind = tokens[0].text;
    std::size_t expect = 0;
    if (kind == "job-start") {
      r.kind = TraceKind::job_start;
      expect = 5;
    } else if (kind == "read") {
      r.kind = TraceKind::read;
      expect = 6;
    } else if (kind == "write") {
      r.kind = TraceKind::write;
      expect = 7;
    } else if (kind == "output") {
      r.kind = TraceKind::output;
      expect = 5;
    } else if (kind == "job-end") {
      r.kind = TraceKind::job_end;
      expect = 4;
    } else {
      fail(line_no, tokens[0].col, "unknown record " + kind);
      continue;
    }
    if (tokens.size() != expect) {
      fail(line_no, tokens[0].col,
           "expected " + std::to_string(expect) + " fields for " + kind);
      continue;
    }
    if (!detail::parse_int(tokens[1].text, r.time)) {
      fail(line_no, tokens[1].col, "time must be an integer");
      continue;
    }
    r.process = tokens[2].text;
    std::int64_t num = 0;
    if (!detail::parse_int(tokens[3].text, num)) {
      fail(line_no, tokens[3].col, "k must be an integer");
      continue;
    }
    r.k = static_cast<int>(num);
    bool ok = true;
    switch (r.kind) {
      case TraceKind::job_start:
        if (!detail::parse_int(tokens[4].text, num)) {
          fail(line_no, tokens[4].col, "core must be an integer");
          ok = false;
          break;
        }
        r.core = static_cast<int>(num);
        break;
      case TraceKind::read:
        r.channel = tokens[4].text;
        if (tokens[5].text == "-") {
          r.value = std::nullopt;
        } else if (detail::parse_int(tokens[5].text, num)) {
          r.value = num;
        } else {
          fail(line_no, tokens[5].col, "value must be an integer or '-'");
          ok = false;
        }
        break;
      case TraceKind::write:
        r.channel = tokens[4].text;
        if (!detail::parse_int(tokens[5].text, num)) {
          fail(line_no, tokens[5].col, "value must be an integer");
          ok = false;
          break;
        }
        r.value = num;
        if (tokens[6].text == "accepted") {
          r.status = WriteStatus::accepted;
        } else if (tokens[6].text == "dropped") {
          r.status = WriteStatus::dropped;
        } else {
          fail(line_no, tokens[6].col, "status must be accepted or dropped");
          ok = false;
        }
        break;
      case TraceKind::output:
        if (!detail::parse_int(tokens[4].text, num)) {
          fail(line_no, tokens[4].col, "value must be an integer");
          ok = false;
          break;
        }
        r.value = num;
        break;
      case TraceKind::job_end:
        break;
    }
    if (ok) trace.records.push_back(std::move(r));
  }
  if (result.errors.empty()) result.trace = std::move(trace);
  return result;
}

}  // namespace fppn
