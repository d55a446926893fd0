#include <doctest.h>

#include <random>

#include "mapfla/oracle.hpp"
#include "mapfla/validator.hpp"
#include "support/testkit.hpp"

using namespace mapfla;
namespace f3 = testkit::spur;

TEST_CASE("transitions on the interference layout") {
  Instance inst = testkit::spur::layout();
  // Green and red only.
  inst.starts = {f3::v1, f3::v3};
  inst.goals = {f3::v2, f3::v3};
  const State s = start_state(inst);
  const Move go{f3::green, f3::v1, f3::v2};
  const auto why = transition_error(s, go, inst);
  REQUIRE(why.has_value());
  CHECK(why->find("agent 1") != std::string::npos);

  const State moved = apply_move(s, Move{f3::red, f3::v3, f3::v5});
  const auto& g = inst.roadmap;
  CHECK(segdist(g.point(f3::v5), g.point(f3::v1), g.point(f3::v2)) > 2 * inst.radius);
  CHECK(is_valid_transition(moved, go, inst));
}

TEST_CASE("transition preconditions") {
  const Instance inst = testkit::corridor::layout();
  const State s = start_state(inst);
  CHECK(is_valid_transition(s, Move{testkit::corridor::red, 1, 2}, inst));
  CHECK_FALSE(is_valid_transition(s, Move{testkit::corridor::red, 2, 3}, inst));  // not at from
  CHECK_FALSE(is_valid_transition(s, Move{testkit::corridor::green, 0, 1}, inst));  // occupied
  CHECK_FALSE(is_valid_transition(s, Move{testkit::corridor::red, 1, 3}, inst));  // no edge
  CHECK_FALSE(is_valid_transition(s, Move{7, 1, 2}, inst));                     // no agent
  CHECK_FALSE(is_valid_transition(s, Move{testkit::corridor::red, 1, 40}, inst));  // no vertex
}

TEST_CASE("lone agent can take any edge") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    Instance inst = testkit::random_instance(rng, {});
    inst.starts.resize(1);
    inst.goals.resize(1);
    const VertexId at = inst.starts[0];
    const State s = start_state(inst);
    for (const Arc& arc : inst.roadmap.arcs(at)) CHECK(is_valid_transition(s, {0, at, arc.to}, inst));
  }
}

TEST_CASE("transition verdict agrees with a direct clearance check and is monotone in r") {
  std::mt19937_64 rng(22);
  std::size_t valid_seen = 0;
  for (int i = 0; i < 400; ++i) {
    const Instance inst = testkit::random_instance(rng, {});
    const State s = testkit::random_state(rng, inst.roadmap.num_vertices(), inst.num_agents());
    const auto a = static_cast<AgentId>(rng() % inst.num_agents());
    const VertexId at = s.position(a);
    for (const Arc& arc : inst.roadmap.arcs(at)) {
      const Move m{a, at, arc.to};
      bool expected = !s.occupied(arc.to);
      for (std::size_t b = 0; b < inst.num_agents(); ++b) {
        if (static_cast<AgentId>(b) == a) continue;
        const Point2D& p = inst.roadmap.point(s.position(static_cast<AgentId>(b)));
        expected &= testkit::sampled_segdist(p, inst.roadmap.point(at), inst.roadmap.point(arc.to)) >
                    2 * inst.radius + 1e-6;
      }
      const bool got = is_valid_transition(s, m, inst);
      if (got != expected) {
        // Only allowed inside the sampling tolerance band.
        bool near = false;
        for (std::size_t b = 0; b < inst.num_agents(); ++b) {
          const Point2D& p = inst.roadmap.point(s.position(static_cast<AgentId>(b)));
          const double d = segdist(p, inst.roadmap.point(at), inst.roadmap.point(arc.to));
          near |= std::abs(d - 2 * inst.radius) < 1e-5;
        }
        CHECK(near);
      }
      if (!got) continue;
      ++valid_seen;
      Instance smaller = inst;
      for (double scale : {0.9, 0.5, 0.1}) {
        smaller.radius = inst.radius * scale;
        CHECK(is_valid_transition(s, m, smaller));
      }
    }
  }
  CHECK(valid_seen > 100);
}

TEST_CASE("validate_plan reports") {
  SUBCASE("start equals goal") {
    Instance inst = testkit::corridor::layout();
    CHECK(validate_plan(inst, Plan{}).ok());
  }
  SUBCASE("bad instance") {
    const Instance inst = testkit::make({{0, 0}, {0.5, 0}}, {}, 0.5, {}, {});
    CHECK(validate_plan(inst, Plan{}).kind == PlanReport::Kind::kBadInstance);
  }
  SUBCASE("illegal move carries its index") {
    Instance inst = testkit::corridor::layout();
    const Plan plan{{testkit::corridor::blue, 4, 5}, {testkit::corridor::red, 1, 3}};
    const PlanReport rep = validate_plan(inst, plan);
    CHECK(rep.kind == PlanReport::Kind::kIllegalMove);
    CHECK(rep.move_index == 1);
    CHECK(rep.to_string().rfind("move 1:", 0) == 0);
  }
  SUBCASE("last move deleted") {
    Instance inst = testkit::order_pair();
    const Plan plan{{1, 2, 3}, {0, 0, 1}};
    REQUIRE(validate_plan(inst, plan).ok());
    const PlanReport rep = validate_plan(inst, Plan{plan.front()});
    CHECK(rep.kind == PlanReport::Kind::kGoalNotReached);
    CHECK(rep.to_string().rfind("goal not reached", 0) == 0);
  }
}

TEST_CASE("deleting any move of a move-minimal plan is detected") {
  std::mt19937_64 rng(23);
  std::size_t mutants = 0;
  for (int i = 0; i < 150; ++i) {
    const Instance inst = testkit::random_instance(rng, {5, 9, 1, 3});
    const OracleResult res = joint_bfs_solve(inst, 200000);
    if (res.status != OracleResult::Status::kSolved) continue;
    REQUIRE(validate_plan(inst, res.plan).ok());
    for (std::size_t drop = 0; drop < res.plan.size(); ++drop) {
      Plan mutant = res.plan;
      mutant.erase(mutant.begin() + static_cast<std::ptrdiff_t>(drop));
      CHECK_FALSE(validate_plan(inst, mutant).ok());
      ++mutants;
    }
  }
  CHECK(mutants > 200);
}
