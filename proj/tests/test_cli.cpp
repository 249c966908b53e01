#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fppn/bundles.hpp"
#include "fppn/cli.hpp"

using namespace fppn;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string model_path(const std::string& name) {
  return std::string(FPPN_MODELS_DIR) + "/" + name;
}

// Scratch file that removes itself when the test is done.
struct TempFile {
  std::string path;
  TempFile(const std::string& name, const std::string& content)
      : path("/tmp/fppn_cli_" + name) {
    std::ofstream(path) << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("validate accepts every shipped model") {
  for (const auto& b : example_bundles()) {
    const auto r = run_cli({"validate", "--model", model_path(b.name + ".fppn")});
    INFO(b.name << ": " << r.err);
    CHECK(r.code == 0);
    CHECK(r.out == "ok\n");
  }
}

TEST_CASE("validate reports law violations with exit 1") {
  const TempFile bad("dup_prio.fppn",
                     "processes:\n"
                     "  A FPPNClass=periodic period_us=10000 deadline_us=10000 "
                     "wcet_us=1000 Fpriority=1\n"
                     "  B FPPNClass=periodic period_us=10000 deadline_us=10000 "
                     "wcet_us=1000 Fpriority=1\n");
  const auto r = run_cli({"validate", "--model", bad.path});
  CHECK(r.code == 1);
  CHECK(r.out == "A: Fpriority 1 is also used by process B\n");
}

TEST_CASE("unparseable input exits 2 with file position diagnostics") {
  const TempFile bad("broken.fppn", "not a section\n");
  const auto r = run_cli({"validate", "--model", bad.path});
  CHECK(r.code == 2);
  CHECK(r.err == bad.path + ":1:1: expected a section header\n");

  const auto missing = run_cli({"validate", "--model", "/tmp/fppn_cli_nope"});
  CHECK(missing.code == 2);
  CHECK(missing.err == "cannot read /tmp/fppn_cli_nope\n");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"schedule", "--model", model_path("three_tasks.fppn")}).code ==
        2);  // --cores is required
  CHECK(run_cli({"schedule", "--model", model_path("three_tasks.fppn"),
                 "--cores", "3", "--format", "pdf"})
            .code == 2);
  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("mincores") != std::string::npos);
}

TEST_CASE("schedule emits the table and exits by verdict") {
  const auto infeasible =
      run_cli({"schedule", "--model", model_path("three_tasks.fppn"), "--cores",
               "1", "--delta", "1000"});
  CHECK(infeasible.code == 1);
  CHECK(infeasible.out.find("# verdict: infeasible: demand 31 ms > 25 ms\n") !=
        std::string::npos);

  const auto feasible =
      run_cli({"schedule", "--model", model_path("three_tasks.fppn"), "--cores",
               "3", "--delta", "1000"});
  CHECK(feasible.code == 0);
  const auto parsed = parse_schedule(feasible.out);
  REQUIRE(parsed.errors.empty());

  const auto net = example_model("three_tasks");
  const auto tg = build_task_graph(net, ms(25));
  CHECK(*parsed.table == list_schedule(tg, net, 3, 1000));
}

TEST_CASE("schedule formats: text equals csv and svg is svg") {
  const std::vector<std::string> base = {"schedule", "--model",
                                         model_path("three_tasks.fppn"),
                                         "--cores", "3", "--delta", "1000"};
  auto text_args = base;
  text_args.push_back("--format");
  text_args.push_back("text");
  CHECK(run_cli(text_args).out == run_cli(base).out);

  auto svg_args = base;
  svg_args.push_back("--format");
  svg_args.push_back("svg");
  const auto svg = run_cli(svg_args);
  CHECK(svg.code == 0);
  CHECK(svg.out.rfind("<svg", 0) == 0);
}

TEST_CASE("--out writes the file and echoes the verdict") {
  const std::string out_path = "/tmp/fppn_cli_table.csv";
  const auto r = run_cli({"schedule", "--model", model_path("three_tasks.fppn"),
                          "--cores", "3", "--delta", "1000", "-o", out_path});
  CHECK(r.code == 0);
  CHECK(r.out == "feasible\n");

  std::ifstream in(out_path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(parse_schedule(ss.str()).errors.empty());
  std::remove(out_path.c_str());
}

TEST_CASE("taskgraph defaults its horizon to one hyperperiod") {
  const auto r = run_cli({"taskgraph", "--model", model_path("gnc.fppn")});
  REQUIRE(r.code == 0);
  const auto parsed = parse_task_graph(r.out);
  REQUIRE(parsed.errors.empty());
  CHECK(parsed.graph->jobs.size() == 31);
  CHECK(parsed.graph->edges.size() == 48);

  const auto two = run_cli({"taskgraph", "--model", model_path("fig1.fppn"),
                            "--horizon", "100"});
  REQUIRE(two.code == 0);
  CHECK(parse_task_graph(two.out).graph->jobs.size() == 6);

  const auto bad = run_cli({"taskgraph", "--model", model_path("fig1.fppn"),
                            "--horizon", "120"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("not a multiple") != std::string::npos);
}

TEST_CASE("simulate emits a verdict line and a parseable trace") {
  const auto r = run_cli({"simulate", "--model", model_path("fig1.fppn"),
                          "--events", model_path("fig1.events"), "--cores", "2",
                          "--delta", "1000"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# verdict: feasible\n", 0) == 0);

  const auto parsed = parse_trace(r.out);
  REQUIRE(parsed.errors.empty());
  const auto reference =
      run_asap(example_model("fig1"), ms(50), 2, 1000, {{0, "X", 3}});
  CHECK(*parsed.trace == reference.trace);
}

TEST_CASE("asap appends the completion report as comments") {
  const auto r = run_cli({"asap", "--model", model_path("fig1.fppn"),
                          "--events", model_path("fig1.events"), "--horizon",
                          "150", "--cores", "2", "--delta", "1000"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# completion per period (base 50 ms)\n") !=
        std::string::npos);
  CHECK(r.out.find("# period 0: 13 ms\n") != std::string::npos);
  CHECK(r.out.find("# period 1: 8 ms\n") != std::string::npos);
  // the whole output is still a valid trace file
  CHECK(parse_trace(r.out).errors.empty());
}

TEST_CASE("invalid event lists are a law violation, not a parse error") {
  const TempFile events("bad.events", "0 X 1\n10000 X 2\n");
  const auto r = run_cli({"simulate", "--model", model_path("fig1.fppn"),
                          "--events", events.path, "--cores", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("minimal inter-arrival time") != std::string::npos);

  const TempFile garbled("garbled.events", "what\n");
  const auto g = run_cli({"simulate", "--model", model_path("fig1.fppn"),
                          "--events", garbled.path, "--cores", "2"});
  CHECK(g.code == 2);
}

TEST_CASE("mincores prints the smallest feasible count") {
  auto r = run_cli({"mincores", "--model", model_path("three_tasks.fppn"),
                    "--delta", "1000"});
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");

  r = run_cli({"mincores", "--model", model_path("three_tasks.fppn")});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");

  r = run_cli({"mincores", "--model", model_path("three_tasks.fppn"), "--cores",
               "2", "--delta", "1000"});
  CHECK(r.code == 1);
  CHECK(r.err == "no feasible schedule up to 2 cores\n");
}

TEST_CASE("gantt output is stable across runs") {
  const std::vector<std::string> args = {"gantt", "--model",
                                         model_path("gnc.fppn"), "--cores", "4",
                                         "--delta", "1000"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out.rfind("<svg", 0) == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("gnc") != std::string::npos);
}

TEST_CASE("golden outputs regenerate byte identically") {
  const auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const struct {
    std::string golden;
    std::vector<std::string> args;
  } cases[] = {
      {"gnc_pipelined_asap_c4_d1000.trace",
       {"asap", "--model", model_path("gnc_pipelined.fppn"), "--cores", "4",
        "--delta", "1000"}},
      {"fig1_asap_c2_d1000.trace",
       {"asap", "--model", model_path("fig1.fppn"), "--events",
        model_path("fig1.events"), "--cores", "2", "--delta", "1000"}},
      {"three_tasks_c3_d1000.sched.csv",
       {"schedule", "--model", model_path("three_tasks.fppn"), "--cores", "3",
        "--delta", "1000"}},
      {"three_tasks_c1_d1000.sched.csv",
       {"schedule", "--model", model_path("three_tasks.fppn"), "--cores", "1",
        "--delta", "1000"}},
      {"three_tasks_c3_d1000.svg",
       {"gantt", "--model", model_path("three_tasks.fppn"), "--cores", "3",
        "--delta", "1000"}},
  };
  for (const auto& c : cases) {
    INFO(c.golden);
    CHECK(run_cli(c.args).out == slurp(model_path("golden/" + c.golden)));
  }
}
