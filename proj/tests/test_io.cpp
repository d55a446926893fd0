#include <doctest.h>

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mapfla/harness.hpp"
#include "mapfla/io.hpp"
#include "mapfla/solver.hpp"
#include "support/testkit.hpp"

using namespace mapfla;

namespace {

template <typename Write>
std::string text(Write write) {
  std::ostringstream out;
  write(out);
  return out.str();
}

std::size_t error_line(const std::string& input, RoadmapFile (*)(std::istream&)) {
  std::istringstream in(input);
  try {
    parse_roadmap(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("format_real is the shortest exact representation") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(3.0) == "3");
  CHECK(format_real(-1.25) == "-1.25");
  CHECK(format_real(0.1) == "0.1");
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng);
    const std::string s = format_real(x);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(std::memcmp(&back, &x, sizeof x) == 0);
  }
}

TEST_CASE("generated files are byte-stable through parse and write") {
  for (const char* name : {"sparse-like", "dense-like"}) {
    const BenchCase bc = make_bench_case(preset(name), 3);
    const std::string map_text = text([&](std::ostream& o) { write_roadmap(o, bc.roadmap, bc.radius); });
    std::istringstream map_in(map_text);
    const RoadmapFile parsed = parse_roadmap(map_in);
    CHECK(parsed.roadmap == bc.roadmap);
    CHECK(parsed.radius == bc.radius);
    CHECK(text([&](std::ostream& o) { write_roadmap(o, parsed.roadmap, parsed.radius); }) == map_text);

    for (const Scenario& scen : bc.scenarios) {
      const std::string scen_text = text([&](std::ostream& o) { write_scenario(o, scen); });
      std::istringstream scen_in(scen_text);
      const Scenario back = parse_scenario(scen_in);
      CHECK(back == scen);
      CHECK(text([&](std::ostream& o) { write_scenario(o, back); }) == scen_text);
    }

    SolverConfig config;
    config.time_limit = std::chrono::seconds(10);
    const SolveResult res = solve(make_instance(bc.roadmap, bc.radius, bc.scenarios[0], 10), config);
    REQUIRE(res.status == SolveStatus::kSolved);
    const std::string plan_text = text([&](std::ostream& o) { write_plan(o, res.plan); });
    std::istringstream plan_in(plan_text);
    const Plan back = parse_plan(plan_in);
    CHECK(back == res.plan);
    CHECK(text([&](std::ostream& o) { write_plan(o, back); }) == plan_text);
  }
}

TEST_CASE("random roadmaps round-trip exactly") {
  std::mt19937_64 rng(72);
  for (int i = 0; i < 50; ++i) {
    const Instance inst = testkit::random_instance(rng, {});
    std::istringstream in(text([&](std::ostream& o) { write_roadmap(o, inst.roadmap, inst.radius); }));
    const RoadmapFile back = parse_roadmap(in);
    CHECK(back.roadmap == inst.roadmap);
    CHECK(back.radius == inst.radius);
  }
}

TEST_CASE("comments, blank lines and CRLF are accepted") {
  std::istringstream in("# hello\nmapfla-roadmap 1\r\n\n  # indented comment\nr 0.5\nv 0 0 0\nv 1 2 0\r\ne 0 1\n");
  const RoadmapFile f = parse_roadmap(in);
  CHECK(f.radius == 0.5);
  CHECK(f.roadmap.num_vertices() == 2);
  CHECK(f.roadmap.has_edge(0, 1));
  std::istringstream plan("mapfla-plan 1\n");
  CHECK(parse_plan(plan).empty());
}

TEST_CASE("parse errors carry the line number") {
  CHECK(error_line("", parse_roadmap) == 0);
  CHECK(error_line("mapfla-scen 1\n", parse_roadmap) == 1);
  CHECK(error_line("mapfla-roadmap 2\n", parse_roadmap) == 1);
  CHECK(error_line("mapfla-roadmap 1\nr 0.5\nv 0 0 0\nv 2 1 1\n", parse_roadmap) == 4);
  CHECK(error_line("mapfla-roadmap 1\nr 0.5\n\nv 0 0 x\n", parse_roadmap) == 4);
  CHECK(error_line("mapfla-roadmap 1\nr 0.5\nv 0 0 0\ne 0 1\n", parse_roadmap) == 4);
  CHECK(error_line("mapfla-roadmap 1\nr 0.5\nv 0 0 0 7\n", parse_roadmap) == 3);
  CHECK(error_line("mapfla-roadmap 1\nr 0.5\nq 1\n", parse_roadmap) == 3);
  CHECK(error_line("mapfla-roadmap 1\nr 0.5\nr 0.5\n", parse_roadmap) == 3);
  CHECK(error_line("mapfla-roadmap 1\nv 0 0 0\n", parse_roadmap) == 2);  // no radius

  std::istringstream scen("mapfla-scen 1\na 1 2\n");
  CHECK_THROWS_WITH_AS(parse_scenario(scen), "line 2: missing 'roadmap <path-or-name>' record",
                       ParseError);
  std::istringstream plan("mapfla-plan 1\nm 0 1\n");
  CHECK_THROWS_WITH_AS(parse_plan(plan), "line 2: 'm' takes 3 field(s), got 2", ParseError);
  std::istringstream neg("mapfla-plan 1\nm 0 1 2.5\n");
  CHECK_THROWS_AS(parse_plan(neg), ParseError);
}

TEST_CASE("file readers name the file") {
  const auto dir = std::filesystem::temp_directory_path() / "mapfla-io-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "bad.txt";
  std::ofstream(path) << "mapfla-plan 1\nm a b c\n";
  try {
    read_plan_file(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()) == path.string() + ":2: expected an integer, got 'a'");
  }
  CHECK_THROWS_AS(read_roadmap_file(dir / "missing.txt"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
