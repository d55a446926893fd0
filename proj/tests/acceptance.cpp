// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mapfla/harness.hpp"
#include "mapfla/io.hpp"
#include "mapfla/oracle.hpp"
#include "mapfla/solver.hpp"
#include "mapfla/validator.hpp"
#include "support/testkit.hpp"

using namespace mapfla;
using namespace std::chrono_literals;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

SolverConfig config(SolverMode mode, AgentOrder order = AgentOrder::index()) {
  SolverConfig c;
  c.mode = mode;
  c.order = std::move(order);
  c.time_limit = 5s;
  return c;
}

/// Solved plans must validate; a solver-side rejection counts as a violation.
struct SoundnessCount {
  std::size_t runs = 0, solved = 0, violations = 0;

  void run(const Instance& inst, SolverMode mode) {
    ++runs;
    try {
      const SolveResult res = solve(inst, config(mode));
      if (res.status != SolveStatus::kSolved) return;
      ++solved;
      if (!validate_plan(inst, res.plan).ok()) ++violations;
    } catch (const std::logic_error&) {
      ++violations;
    }
  }
};

std::vector<Roadmap> generated;  // every roadmap made by criteria 1 and 2, for criterion 7

Outcome plan_soundness() {
  std::mt19937_64 rng(1001);
  SoundnessCount count;
  for (int i = 0; i < 1000; ++i) {
    const Instance inst = testkit::random_instance(rng, {10, 60, 2, 10});
    generated.push_back(inst.roadmap);
    for (SolverMode mode : {SolverMode::kLA, SolverMode::kNaive}) count.run(inst, mode);
  }
  std::ostringstream d;
  d << "1000 instances x 2 modes: " << count.solved << "/" << count.runs << " solved, "
    << count.violations << " invalid plans";
  return {count.violations == 0 && count.runs == 2000, d.str()};
}

Outcome oracle_soundness() {
  std::mt19937_64 rng(1002);
  std::size_t instances = 0, solver_solved = 0, violations = 0, oracle_only = 0;
  while (instances < 500) {
    const Instance inst = testkit::random_instance(rng, {3, 10, 1, 3});
    const OracleResult truth = joint_bfs_solve(inst, 5'000'000);
    if (truth.status == OracleResult::Status::kBudgetExceeded) continue;
    ++instances;
    generated.push_back(inst.roadmap);
    for (SolverMode mode : {SolverMode::kLA, SolverMode::kNaive}) {
      SoundnessCount count;
      count.run(inst, mode);
      violations += count.violations;
      if (count.solved == 1) {
        ++solver_solved;
        if (truth.status != OracleResult::Status::kSolved) ++violations;
      } else if (truth.status == OracleResult::Status::kSolved) {
        ++oracle_only;
      }
    }
  }
  std::ostringstream d;
  d << instances << " instances x 2 modes: " << solver_solved << " solver-solved, " << violations
    << " not oracle-solvable; " << oracle_only << " solvable runs the solver missed";
  return {violations == 0, d.str()};
}

Outcome unsolvable_fixture() {
  const Instance inst = testkit::bent_path();
  const OracleResult truth = joint_bfs_solve(inst, 10'000'000);
  const SolveResult res = solve(inst, config(SolverMode::kLA));
  std::ostringstream d;
  d << "oracle " << (truth.status == OracleResult::Status::kUnsolvable ? "unsolvable" : "solvable?")
    << " after " << truth.expanded << " states; solver " << to_string(res.status) << " in "
    << res.stats.elapsed_ms << " ms";
  return {truth.status == OracleResult::Status::kUnsolvable && res.status == SolveStatus::kFailed &&
              res.stats.elapsed_ms < 1000.0,
          d.str()};
}

Outcome ordering_fixture() {
  const Instance inst = testkit::order_pair();
  const SolveResult index = solve(inst, config(SolverMode::kLA));
  const SolveResult restarts = solve(inst, config(SolverMode::kLA, AgentOrder::random_restarts(10, 1)));
  const SolveResult reversed = solve(inst, config(SolverMode::kLA, AgentOrder::given({1, 0})));
  const bool restarts_ok = restarts.status == SolveStatus::kSolved && validate_plan(inst, restarts.plan).ok();
  const bool reversed_ok = reversed.status == SolveStatus::kSolved && validate_plan(inst, reversed.plan).ok();
  std::ostringstream d;
  d << "index " << to_string(index.status) << " (case-3 " << index.stats.case3_failures
    << "), random-restarts:10 " << to_string(restarts.status) << " after " << restarts.stats.attempts
    << " orders, reversed " << to_string(reversed.status);
  return {index.status == SolveStatus::kFailed && restarts_ok && reversed_ok, d.str()};
}

Outcome procedure_contracts() {
  testkit::Tally tally;
  testkit::fuzz_procedure_contracts(1005, 12000, tally);
  std::ostringstream d;
  d << tally.checks << " assertions, " << tally.failures << " failures; outcomes:";
  for (const auto& [what, n] : tally.outcomes) d << ' ' << what << '=' << n;
  for (const std::string& m : tally.messages) d << "\n    " << m;
  return {tally.ok() && tally.checks >= 10000, d.str()};
}

Outcome comparative_success() {
  const BenchCase bc = make_bench_case(preset("sparse-like"), 7);
  BenchOptions opt;
  opt.n_min = 2;
  opt.n_max = 40;
  opt.time_limit = 30s;
  const BenchReport rep = run_bench(std::vector<BenchCase>{bc}, opt);
  const BenchRow* la40 = nullptr;
  const BenchRow* naive40 = nullptr;
  bool dominated = true;
  std::size_t rows = 0;
  for (const BenchRow& la : rep.rows) {
    if (la.mode != SolverMode::kLA) continue;
    for (const BenchRow& nv : rep.rows) {
      if (nv.mode != SolverMode::kNaive || nv.n != la.n) continue;
      ++rows;
      dominated &= la.success_rate() >= nv.success_rate();
      if (la.n == 40) {
        la40 = &la;
        naive40 = &nv;
      }
    }
  }
  std::ostringstream d;
  bool pass = dominated && rows == 39 && la40 != nullptr;
  if (la40 != nullptr) {
    pass = pass && la40->runs() == 25 && la40->solved > naive40->solved &&
           naive40->success_rate() <= 0.20 && la40->success_rate() >= 0.50;
    d << "n=40: la " << la40->solved << "/25, naive " << naive40->solved << "/25; ";
  }
  d << "la >= naive at " << (dominated ? "every" : "NOT every") << " n of " << rows;
  return {pass, d.str()};
}

Outcome geometry_and_cache() {
  std::mt19937_64 rng(1007);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Point2D p{u(rng), u(rng)}, a{u(rng), u(rng)}, b{u(rng), u(rng)};
    worst = std::max(worst, std::abs(segdist(p, a, b) - testkit::sampled_segdist(p, a, b)));
  }
  for (const char* name : {"sparse-like", "dense-like"}) generated.push_back(make_bench_case(preset(name), 7).roadmap);
  std::size_t mismatched = 0;
  std::mt19937_64 radii(1008);
  for (const Roadmap& g : generated) {
    const double r = std::uniform_real_distribution<double>(0.05, 0.49)(radii);
    if (!testkit::cache_mismatch(g, build_interference(g, r)).empty()) ++mismatched;
  }
  std::ostringstream d;
  d << "max |segdist - sampled| = " << worst << " over 10000 triples; " << mismatched << "/"
    << generated.size() << " caches differ from recomputation";
  return {worst <= 1e-6 && mismatched == 0, d.str()};
}

Outcome format_round_trips() {
  std::size_t files = 0, unstable = 0;
  auto stable = [&](const std::string& first, const std::function<std::string(const std::string&)>& cycle) {
    ++files;
    if (cycle(first) != first) ++unstable;
  };
  for (const char* name : {"sparse-like", "dense-like"}) {
    for (std::uint64_t seed : {1, 7, 42}) {
      const BenchCase bc = make_bench_case(preset(name), seed);
      std::ostringstream map;
      write_roadmap(map, bc.roadmap, bc.radius);
      stable(map.str(), [](const std::string& s) {
        std::istringstream in(s);
        const RoadmapFile f = parse_roadmap(in);
        std::ostringstream out;
        write_roadmap(out, f.roadmap, f.radius);
        return out.str();
      });
      for (const Scenario& scen : bc.scenarios) {
        std::ostringstream text;
        write_scenario(text, scen);
        stable(text.str(), [](const std::string& s) {
          std::istringstream in(s);
          std::ostringstream out;
          write_scenario(out, parse_scenario(in));
          return out.str();
        });
      }
      const SolveResult res = solve(make_instance(bc.roadmap, bc.radius, bc.scenarios[0], 8),
                                    config(SolverMode::kLA));
      std::ostringstream plan;
      write_plan(plan, res.plan);
      stable(plan.str(), [](const std::string& s) {
        std::istringstream in(s);
        std::ostringstream out;
        write_plan(out, parse_plan(in));
        return out.str();
      });
    }
  }
  std::ostringstream d;
  d << files << " roadmap/scenario/plan files, " << unstable << " changed on a second cycle";
  return {unstable == 0, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "plan soundness", plan_soundness},
      {2, "oracle soundness", oracle_soundness},
      {3, "unsolvable five-vertex fixture", unsolvable_fixture},
      {4, "agent-order fixture", ordering_fixture},
      {5, "procedure contracts", procedure_contracts},
      {6, "comparative success rate", comparative_success},
      {7, "geometry and interference cache", geometry_and_cache},
      {8, "format round-trips", format_round_trips},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%d] %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                out.detail.c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
