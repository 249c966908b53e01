#include <catch2/catch_amalgamated.hpp>

#include "fppn/model.hpp"

using namespace fppn;

namespace {

// Two periodic processes joined by one mailbox; structurally valid.
NetworkModel two_proc() {
  NetworkModel net;
  net.processes = {
      {"A", ProcessKind::periodic, ms(10), ms(10), ms(2), 1, {"identity", {}}},
      {"B", ProcessKind::periodic, ms(20), ms(20), ms(3), 2, {"sink", {}}},
  };
  net.channels = {
      {"a_to_b", ChannelKind::mailbox, "A", "B", 8, 2, true},
  };
  return net;
}

bool has(const std::vector<Violation>& vs, const std::string& entity,
         const std::string& message) {
  return std::find(vs.begin(), vs.end(), Violation{entity, message}) != vs.end();
}

}  // namespace

TEST_CASE("a well formed network has no violations") {
  CHECK(validate_network(two_proc()).empty());
}

TEST_CASE("ids are restricted to [A-Za-z0-9_]") {
  auto net = two_proc();
  net.processes[0].id = "A B";
  net.channels[0].writer = "A B";
  net.channels[0].id = "a-to-b";
  const auto vs = validate_network(net);
  CHECK(has(vs, "A B", "id must be non-empty and use only [A-Za-z0-9_]"));
  CHECK(has(vs, "a-to-b", "id must be non-empty and use only [A-Za-z0-9_]"));

  net = two_proc();
  net.processes[0].id = "";
  CHECK(has(validate_network(net), "",
            "id must be non-empty and use only [A-Za-z0-9_]"));
}

TEST_CASE("duplicate ids are reported once and skip further checks") {
  auto net = two_proc();
  net.processes.push_back(net.processes[0]);
  net.processes[2].period = 0;  // shadowed by the duplicate check
  auto vs = validate_network(net);
  CHECK(has(vs, "A", "duplicate process id"));
  CHECK_FALSE(has(vs, "A", "period must be positive"));

  net = two_proc();
  net.channels.push_back(net.channels[0]);
  vs = validate_network(net);
  CHECK(has(vs, "a_to_b", "duplicate channel id"));
}

TEST_CASE("process timing fields must be positive and consistent") {
  auto net = two_proc();
  net.processes[0].period = 0;
  net.processes[0].deadline = -1;
  net.processes[0].wcet = 0;
  net.processes[0].fpriority = 0;
  const auto vs = validate_network(net);
  CHECK(has(vs, "A", "period must be positive"));
  CHECK(has(vs, "A", "deadline must be positive"));
  CHECK(has(vs, "A", "wcet must be positive"));
  CHECK(has(vs, "A", "Fpriority must be a positive integer"));
}

TEST_CASE("sporadic processes report the inter-arrival wording") {
  auto net = two_proc();
  net.processes[0].kind = ProcessKind::sporadic;
  net.processes[0].period = 0;
  net.couplings["A"] = "B";
  const auto vs = validate_network(net);
  CHECK(has(vs, "A", "min inter-arrival time must be positive"));
  CHECK_FALSE(has(vs, "A", "period must be positive"));
}

TEST_CASE("wcet above the deadline is a violation") {
  auto net = two_proc();
  net.processes[1].wcet = ms(21);
  CHECK(has(validate_network(net), "B", "wcet exceeds deadline"));
  // wcet is optional; absence is not a violation
  net.processes[1].wcet.reset();
  CHECK(validate_network(net).empty());
}

TEST_CASE("functional priorities are unique network wide") {
  auto net = two_proc();
  net.processes[1].fpriority = 1;
  const auto vs = validate_network(net);
  CHECK(has(vs, "A", "Fpriority 1 is also used by process B"));
  CHECK(vs.size() == 1);
}

TEST_CASE("channel endpoint checks") {
  auto net = two_proc();
  net.channels[0].reader = "nobody";
  CHECK(has(validate_network(net), "a_to_b",
            "reader references unknown process nobody"));

  net = two_proc();
  net.channels[0].writer = "ghost";
  CHECK(has(validate_network(net), "a_to_b",
            "writer references unknown process ghost"));

  net = two_proc();
  net.channels[0].reader = "A";
  CHECK(has(validate_network(net), "a_to_b", "writer and reader must differ"));
}

TEST_CASE("data size must be positive") {
  auto net = two_proc();
  net.channels[0].data_size = 0;
  CHECK(has(validate_network(net), "a_to_b", "DataChannelSize must be positive"));
}

TEST_CASE("mailbox length rules") {
  auto net = two_proc();
  net.channels[0].length.reset();
  CHECK(has(validate_network(net), "a_to_b", "mailbox requires a length"));

  net = two_proc();
  net.channels[0].length = 0;
  CHECK(has(validate_network(net), "a_to_b", "mailbox length must be >= 1"));

  net = two_proc();
  net.channels[0].kind = ChannelKind::blackboard;
  CHECK(has(validate_network(net), "a_to_b",
            "blackboard must not declare a length"));
  net.channels[0].length.reset();
  CHECK(validate_network(net).empty());
}

TEST_CASE("coupling checks") {
  auto net = two_proc();
  net.processes[0].kind = ProcessKind::sporadic;

  SECTION("a sporadic process must be coupled") {
    CHECK(has(validate_network(net), "A",
              "sporadic process has no coupled periodic process"));
  }
  SECTION("a valid coupling silences it") {
    net.couplings["A"] = "B";
    CHECK(validate_network(net).empty());
  }
  SECTION("the target must be periodic") {
    net.processes[1].kind = ProcessKind::sporadic;
    net.couplings["A"] = "B";
    net.couplings["B"] = "A";
    const auto vs = validate_network(net);
    CHECK(has(vs, "A", "coupling target B is not a periodic process"));
    CHECK(has(vs, "B", "coupling target A is not a periodic process"));
  }
  SECTION("the source must be sporadic") {
    net.processes[0].kind = ProcessKind::periodic;
    net.couplings["A"] = "B";
    CHECK(has(validate_network(net), "A",
              "coupling source is not a sporadic process"));
  }
  SECTION("unknown endpoints") {
    net.couplings["X"] = "B";
    net.couplings["A"] = "Y";
    const auto vs = validate_network(net);
    CHECK(has(vs, "X", "coupling references unknown process X"));
    CHECK(has(vs, "A", "coupling references unknown process Y"));
  }
  SECTION("the pair must share a channel") {
    net.processes.push_back({"C", ProcessKind::periodic, ms(10), ms(10), ms(1),
                             3, {"sink", {}}});
    net.couplings["A"] = "C";
    CHECK(has(validate_network(net), "A",
              "no channel connects sporadic A to its coupled periodic process C"));
  }
}

TEST_CASE("violations come back sorted by entity then message") {
  auto net = two_proc();
  net.processes[1].period = 0;
  net.processes[0].deadline = 0;
  net.channels[0].data_size = -4;
  const auto vs = validate_network(net);
  REQUIRE(vs.size() == 4);
  CHECK(vs[0] == Violation{"A", "deadline must be positive"});
  CHECK(vs[1] == Violation{"A", "wcet exceeds deadline"});
  CHECK(vs[2] == Violation{"B", "period must be positive"});
  CHECK(vs[3] == Violation{"a_to_b", "DataChannelSize must be positive"});
}

TEST_CASE("fp_precedes needs both the priority order and an ordered channel") {
  auto net = two_proc();
  CHECK(fp_precedes(net, "A", "B"));
  CHECK_FALSE(fp_precedes(net, "B", "A"));

  net.channels[0].ordered = false;
  CHECK_FALSE(fp_precedes(net, "A", "B"));

  net = two_proc();
  net.processes.push_back(
      {"C", ProcessKind::periodic, ms(10), ms(10), ms(1), 3, {"sink", {}}});
  CHECK_FALSE(fp_precedes(net, "A", "C"));

  CHECK_THROWS_AS(fp_precedes(net, "A", "A"), error);
  CHECK_THROWS_AS(fp_precedes(net, "A", "missing"), error);
}

TEST_CASE("the direction of the channel does not matter for fp_precedes") {
  auto net = two_proc();
  std::swap(net.channels[0].writer, net.channels[0].reader);
  CHECK(fp_precedes(net, "A", "B"));
  CHECK_FALSE(fp_precedes(net, "B", "A"));
}

TEST_CASE("hyperperiod is the lcm of all periods") {
  auto net = two_proc();
  CHECK(hyperperiod(net) == ms(20));
  net.processes[1].period = ms(25);
  CHECK(hyperperiod(net) == ms(50));

  CHECK_THROWS_AS(hyperperiod(NetworkModel{}), error);

  net.processes[0].period = -5;
  CHECK_THROWS_AS(hyperperiod(net), error);
}

TEST_CASE("checked_lcm refuses to overflow") {
  CHECK(checked_lcm(4, 6) == 12);
  const time_us big = std::numeric_limits<time_us>::max() - 1;
  CHECK_THROWS_AS(checked_lcm(big, big - 1), error);
  CHECK_THROWS_AS(checked_lcm(0, 5), error);
}

TEST_CASE("process lookup") {
  const auto net = two_proc();
  CHECK(net.find_process("A") != nullptr);
  CHECK(net.find_process("Z") == nullptr);
  CHECK(net.process("B").fpriority == 2);
  CHECK_THROWS_AS(net.process("Z"), error);
  CHECK(net.find_channel("a_to_b") != nullptr);
  CHECK(net.find_channel("nope") == nullptr);
}

TEST_CASE("format_ms renders microseconds compactly") {
  CHECK(format_ms(31000) == "31");
  CHECK(format_ms(1500) == "1.5");
  CHECK(format_ms(1234) == "1.234");
  CHECK(format_ms(0) == "0");
  CHECK(format_ms(-2500) == "-2.5");
}
