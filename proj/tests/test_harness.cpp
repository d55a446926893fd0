#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mapfla/harness.hpp"
#include "mapfla/render.hpp"
#include "mapfla/validator.hpp"
#include "support/testkit.hpp"

using namespace mapfla;

TEST_CASE("roadmap generation is deterministic and valid") {
  RoadmapParams p;
  p.vertices = 80;
  p.target_degree = 4;
  p.extent = {0, 0, 15, 15};
  p.seed = 4;
  const Roadmap a = gen_roadmap(p);
  CHECK(a == gen_roadmap(p));
  p.seed = 5;
  CHECK_FALSE(a == gen_roadmap(p));
  CHECK(validate_roadmap(testkit::make({a.points().begin(), a.points().end()},
                                       {a.edges().begin(), a.edges().end()}, 0.49, {}, {}))
            .ok());
  // Connected.
  const auto dist = [&] {
    std::vector<int> d(a.num_vertices(), -1);
    std::vector<VertexId> stack{0};
    d[0] = 0;
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (const Arc& arc : a.arcs(u)) {
        if (d[static_cast<std::size_t>(arc.to)] < 0) {
          d[static_cast<std::size_t>(arc.to)] = 1;
          stack.push_back(arc.to);
        }
      }
    }
    return d;
  }();
  CHECK(std::count(dist.begin(), dist.end(), -1) == 0);
}

TEST_CASE("generation edge cases") {
  RoadmapParams one;
  one.vertices = 1;
  const Roadmap g = gen_roadmap(one);
  CHECK(g.num_vertices() == 1);
  CHECK(g.num_edges() == 0);

  RoadmapParams crowded;
  crowded.vertices = 500;
  crowded.extent = {0, 0, 3, 3};
  CHECK_THROWS_AS(gen_roadmap(crowded), std::invalid_argument);
  RoadmapParams none;
  none.vertices = 0;
  CHECK_THROWS_AS(gen_roadmap(none), std::invalid_argument);

  CHECK_THROWS_AS(gen_scenario(g, 2, 1), std::invalid_argument);
  const Scenario s = gen_scenario(g, 1, 1);
  REQUIRE(s.pairs.size() == 1);
  CHECK(s.pairs[0] == std::pair<VertexId, VertexId>{0, 0});
  CHECK_THROWS_AS(make_instance(g, 0.5, s, 2), std::invalid_argument);
  CHECK_THROWS_AS(preset("nope"), std::invalid_argument);
}

TEST_CASE("scenarios are injective and instances are prefixes") {
  const BenchCase bc = make_bench_case(preset("sparse-like"), 7);
  CHECK(bc.scenarios.size() == 25);
  CHECK(bc.roadmap.num_vertices() > 100);
  for (const Scenario& s : bc.scenarios) {
    REQUIRE(s.pairs.size() == 40);
    std::set<VertexId> starts, goals;
    for (const auto& [a, b] : s.pairs) {
      starts.insert(a);
      goals.insert(b);
    }
    CHECK(starts.size() == 40);
    CHECK(goals.size() == 40);
    const Instance small = make_instance(bc.roadmap, bc.radius, s, 5);
    const Instance big = make_instance(bc.roadmap, bc.radius, s, 6);
    CHECK(std::equal(small.starts.begin(), small.starts.end(), big.starts.begin()));
    CHECK(std::equal(small.goals.begin(), small.goals.end(), big.goals.begin()));
    CHECK(validate_roadmap(big).ok());
  }
  const BenchCase again = make_bench_case(preset("sparse-like"), 7);
  CHECK(again.roadmap == bc.roadmap);
  CHECK(again.scenarios == bc.scenarios);
}

TEST_CASE("bench rows, skipping and CSV") {
  const BenchCase bc = make_bench_case(preset("sparse-like"), 2);
  BenchCase small = bc;
  small.scenarios.resize(3);
  small.scenarios[2].pairs.resize(3);  // too short for n > 3

  BenchOptions opt;
  opt.n_min = 2;
  opt.n_max = 5;
  opt.time_limit = std::chrono::seconds(5);
  const BenchReport rep = run_bench(std::vector<BenchCase>{small}, opt);
  REQUIRE(rep.rows.size() == 8);
  CHECK(rep.rows[0].mode == SolverMode::kLA);
  CHECK(rep.rows[4].mode == SolverMode::kNaive);
  CHECK(rep.rows[0].n == 2);
  CHECK(rep.rows[1].runs() == 3);
  CHECK(rep.rows[2].runs() == 2);

  opt.jobs = 3;
  const BenchReport parallel = run_bench(std::vector<BenchCase>{small}, opt);
  REQUIRE(parallel.rows.size() == rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(parallel.rows[i].solved == rep.rows[i].solved);
    CHECK(parallel.rows[i].failed == rep.rows[i].failed);
  }

  std::ostringstream csv;
  write_csv(csv, rep);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "roadmap,mode,n,solved,failed,timeout,success_rate,mean_ms");
  CHECK(first.rfind("sparse-like,la,2,", 0) == 0);

  CHECK(run_bench(std::vector<BenchCase>{}, opt).rows.empty());
  opt.n_min = 50;
  opt.n_max = 60;
  CHECK(run_bench(std::vector<BenchCase>{small}, opt).rows.empty());
}

TEST_CASE("mode names") {
  CHECK(parse_mode("la") == SolverMode::kLA);
  CHECK(parse_mode("naive") == SolverMode::kNaive);
  CHECK(mode_name(SolverMode::kNaive) == "naive");
  CHECK_THROWS_AS(parse_mode("LA!"), std::invalid_argument);
}

TEST_CASE("render writes one frame per state") {
  const auto dir = std::filesystem::temp_directory_path() / "mapfla-render-test";
  std::filesystem::remove_all(dir);
  const Instance inst = testkit::order_pair();
  CHECK(render_frames(inst, Plan{}, dir) == 1);
  CHECK(std::filesystem::exists(dir / "frame-0000.svg"));
  CHECK(render_frames(inst, Plan{{1, 2, 3}, {0, 0, 1}}, dir) == 3);
  std::ifstream in(dir / "frame-0001.svg");
  const std::string svg((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::filesystem::remove_all(dir);
}
