#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mapfla/model.hpp"
#include "mapfla/scenario.hpp"
#include "mapfla/solver.hpp"

namespace mapfla {

struct Extent {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 1.0;
  double max_y = 1.0;
};

struct RoadmapParams {
  std::size_t vertices = 1;
  double target_degree = 4.0;
  double min_separation = 1.0;  // strict lower bound on vertex spacing
  /// Candidate edges passing closer than this to a third vertex are dropped.
  double edge_clearance = 0.5;
  /// Candidate edges (each vertex's nearest neighbours) are taken shortest
  /// first, or in seeded random order when set.
  bool shuffle_candidates = false;
  Extent extent;
  std::uint64_t seed = 0;
};

/// Seeded random roadmap: dart-throwing vertex placement, nearest-neighbour
/// edges up to the target degree, largest component kept
/// (so the result may have fewer vertices than requested). Throws
/// std::invalid_argument when the vertices cannot be placed.
Roadmap gen_roadmap(const RoadmapParams& params);

/// Starts and goals each sampled without replacement. Throws
/// std::invalid_argument when n_pairs exceeds the vertex count.
Scenario gen_scenario(const Roadmap& roadmap, std::size_t n_pairs, std::uint64_t seed);

struct Preset {
  std::string name;
  RoadmapParams roadmap;
  double radius = 0.0;
  std::size_t scenarios = 25;
  std::size_t pairs = 40;
};

/// "sparse-like" or "dense-like"; throws std::invalid_argument otherwise.
Preset preset(std::string_view name);

/// Roadmap plus scenarios generated from a preset; scenario i uses seed
/// `seed * 1000 + i + 1`.
struct BenchCase {
  std::string name;
  Roadmap roadmap;
  double radius = 0.0;
  std::vector<Scenario> scenarios;
};

BenchCase make_bench_case(const Preset& preset, std::uint64_t seed);

struct BenchOptions {
  std::vector<SolverMode> modes{SolverMode::kLA, SolverMode::kNaive};
  std::size_t n_min = 2;
  std::size_t n_max = 40;
  std::chrono::milliseconds time_limit{30'000};
  std::size_t jobs = 1;
  SolverConfig solver;  // mode and time limit are overridden per run
};

struct BenchRow {
  std::string roadmap;
  SolverMode mode = SolverMode::kLA;
  std::size_t n = 0;
  std::size_t solved = 0;
  std::size_t failed = 0;
  std::size_t timeout = 0;
  double mean_ms = 0.0;  // over all runs of the row

  std::size_t runs() const { return solved + failed + timeout; }
  double success_rate() const { return runs() == 0 ? 0.0 : static_cast<double>(solved) / static_cast<double>(runs()); }
};

struct BenchReport {
  std::vector<BenchRow> rows;  // case-major, then mode, then ascending n
};

/// A solved plan failed independent validation. Always a solver bug.
struct BenchFailure : std::logic_error {
  using std::logic_error::logic_error;
};

/// Runs every scenario of every case, truncated to its first n pairs, for
/// each mode and n in [n_min, n_max]. Scenarios with fewer than n pairs are
/// skipped for that n.
BenchReport run_bench(std::span<const BenchCase> cases, const BenchOptions& options);

std::string mode_name(SolverMode mode);
/// "la" / "naive"; throws std::invalid_argument otherwise.
SolverMode parse_mode(std::string_view name);

/// `roadmap,mode,n,solved,failed,timeout,success_rate,mean_ms` with header.
void write_csv(std::ostream& out, const BenchReport& report);

}  // namespace mapfla
