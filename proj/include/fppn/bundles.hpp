#pragma once

#include <string>
#include <vector>

#include "fppn/io.hpp"
#include "fppn/model.hpp"

namespace fppn {

struct ExampleBundle {
  std::string name;
  std::string model_text;
  std::string events_text;  // empty when the example has no event trace
};

/// fig1: a sporadic sampler feeding a squaring stage feeding an output
/// stage, with functional priorities running against the dataflow so each
/// stage consumes the previous period's value.
///
/// three_tasks: a 1 ms splitter and two independent workers on a shared
/// 25 ms frame.
///
/// gnc: slow guidance (500 ms) feeding control and a dispatcher (50 ms),
/// with priorities following the dataflow so one period carries the whole
/// chain.
///
/// gnc_pipelined: the same network with the output stage and dispatcher
/// raised above control and the dispatch mailbox double-buffered and
/// unordered, which frees them to run in parallel with guidance.
inline const std::vector<ExampleBundle>& example_bundles() {
  static const std::vector<ExampleBundle> bundles = {
      {"fig1",
       R"(# Sporadic input X, squaring stage, output stage Y. Priorities run
# against the dataflow: every stage reads before its upstream writer runs,
# so a value entered at X reaches Y two periods later.
processes:
  Y FPPNClass=periodic period_us=50000 deadline_us=50000 wcet_us=1000 Fpriority=1 behavior=identity
  Square FPPNClass=periodic period_us=50000 deadline_us=50000 wcet_us=1000 Fpriority=2 behavior=square
  X FPPNClass=sporadic miat_us=50000 deadline_us=50000 wcet_us=1000 Fpriority=3 behavior=identity
channels:
  x_to_square kind=mailbox writer=X reader=Square DataChannelSize=4 DataChannelLength=1
  square_to_y kind=mailbox writer=Square reader=Y DataChannelSize=4 DataChannelLength=1
couplings:
  X -> Square
)",
       "0 X 3\n"},
      {"three_tasks",
       R"(# A 1 ms splitter feeding two independent workers, all on a 25 ms
# frame. The workers share no channel, so they may run in parallel.
processes:
  split FPPNClass=periodic period_us=25000 deadline_us=25000 wcet_us=1000 Fpriority=1 behavior=constant:1
  A FPPNClass=periodic period_us=25000 deadline_us=25000 wcet_us=12000 Fpriority=2 behavior=identity
  B FPPNClass=periodic period_us=25000 deadline_us=25000 wcet_us=6000 Fpriority=3 behavior=identity
channels:
  split_to_A kind=mailbox writer=split reader=A DataChannelSize=4 DataChannelLength=1
  split_to_B kind=mailbox writer=split reader=B DataChannelSize=4 DataChannelLength=1
)",
       ""},
      {"gnc",
       R"(# Guidance navigation and control loop: guidance P1 publishes its slow
# 500 ms solution to control P2 and hands work to dispatcher P4, which
# reports back to P2; P2 commands the output stage P3 every 50 ms period.
# Priorities follow the dataflow, so one period carries the whole chain.
processes:
  P1 FPPNClass=periodic period_us=500000 deadline_us=500000 wcet_us=22000 Fpriority=1 behavior=constant:7
  P2 FPPNClass=periodic period_us=50000 deadline_us=50000 wcet_us=8000 Fpriority=2 behavior=sum
  P3 FPPNClass=periodic period_us=50000 deadline_us=50000 wcet_us=4000 Fpriority=3 behavior=identity
  P4 FPPNClass=periodic period_us=50000 deadline_us=50000 wcet_us=6000 Fpriority=4 behavior=identity
channels:
  guidance kind=blackboard writer=P1 reader=P2 DataChannelSize=8
  dispatch kind=mailbox writer=P1 reader=P4 DataChannelSize=8 DataChannelLength=1
  feedback kind=blackboard writer=P4 reader=P2 DataChannelSize=8
  command kind=blackboard writer=P2 reader=P3 DataChannelSize=8
)",
       ""},
      {"gnc_pipelined",
       R"(# The same loop re-prioritized for pipelining: the output stage P3 and
# dispatcher P4 run above control P2 and consume the previous period's
# data, and the dispatch mailbox becomes an unordered double buffer, so
# P1, P3 and P4 have no predecessors and may run in parallel.
processes:
  P1 FPPNClass=periodic period_us=500000 deadline_us=500000 wcet_us=22000 Fpriority=1 behavior=constant:7
  P3 FPPNClass=periodic period_us=50000 deadline_us=50000 wcet_us=4000 Fpriority=2 behavior=identity
  P4 FPPNClass=periodic period_us=50000 deadline_us=50000 wcet_us=6000 Fpriority=3 behavior=sink
  P2 FPPNClass=periodic period_us=50000 deadline_us=50000 wcet_us=8000 Fpriority=4 behavior=sum
channels:
  guidance kind=blackboard writer=P1 reader=P2 DataChannelSize=8
  dispatch kind=mailbox writer=P1 reader=P4 DataChannelSize=8 DataChannelLength=2 ordered=false
  feedback kind=blackboard writer=P4 reader=P2 DataChannelSize=8
  command kind=blackboard writer=P2 reader=P3 DataChannelSize=8
)",
       ""},
  };
  return bundles;
}

inline const ExampleBundle& load_example(const std::string& name) {
  for (const auto& b : example_bundles()) {
    if (b.name == name) return b;
  }
  throw error("unknown example " + name);
}

inline NetworkModel example_model(const std::string& name) {
  const auto parsed = parse_model(load_example(name).model_text);
  if (!parsed.model) {
    throw error("example " + name + " does not parse");
  }
  return *parsed.model;
}

}  // namespace fppn
