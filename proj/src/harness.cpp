#include "mapfla/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <thread>

#include "mapfla/log.hpp"

#include "mapfla/validator.hpp"

namespace mapfla {

namespace {

std::size_t idx(std::int64_t i) { return static_cast<std::size_t>(i); }

/// Keeps the largest connected component (ties: the one holding the lowest
/// vertex id), renumbering vertices in ascending original order.
Roadmap largest_component(const std::vector<Point2D>& points, const std::vector<Edge>& edges) {
  const Roadmap full(points, edges);
  std::vector<int> comp(points.size(), -1);
  std::vector<std::size_t> sizes;
  for (std::size_t s = 0; s < points.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(sizes.size());
    std::vector<VertexId> stack{static_cast<VertexId>(s)};
    comp[s] = c;
    std::size_t size = 0;
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      ++size;
      for (const Arc& arc : full.arcs(u)) {
        if (comp[idx(arc.to)] < 0) {
          comp[idx(arc.to)] = c;
          stack.push_back(arc.to);
        }
      }
    }
    sizes.push_back(size);
  }
  if (sizes.empty()) return full;
  const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<VertexId> renumber(points.size(), kNoVertex);
  std::vector<Point2D> kept_points;
  for (std::size_t v = 0; v < points.size(); ++v) {
    if (comp[v] == keep) {
      renumber[v] = static_cast<VertexId>(kept_points.size());
      kept_points.push_back(points[v]);
    }
  }
  std::vector<Edge> kept_edges;
  for (const Edge& e : edges) {
    if (comp[idx(e.u)] == keep) kept_edges.push_back(Edge{renumber[idx(e.u)], renumber[idx(e.v)]});
  }
  return Roadmap(std::move(kept_points), std::move(kept_edges));
}

}  // namespace

Roadmap gen_roadmap(const RoadmapParams& params) {
  const std::size_t n = params.vertices;
  const Extent& box = params.extent;
  if (n == 0) throw std::invalid_argument("roadmap needs at least one vertex");
  if (!(box.max_x > box.min_x) || !(box.max_y > box.min_y)) {
    throw std::invalid_argument("roadmap extent is empty");
  }

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> ux(box.min_x, box.max_x);
  std::uniform_real_distribution<double> uy(box.min_y, box.max_y);
  std::vector<Point2D> points;
  const std::size_t max_attempts = 1000 + 500 * n;
  for (std::size_t attempt = 0; attempt < max_attempts && points.size() < n; ++attempt) {
    const Point2D p{ux(rng), uy(rng)};
    const bool spaced = std::all_of(points.begin(), points.end(), [&](const Point2D& q) {
      return dist(p, q) > params.min_separation + kGeomEps;
    });
    if (spaced) points.push_back(p);
  }
  if (points.size() < n) {
    throw std::invalid_argument("placed only " + std::to_string(points.size()) + " of " +
                                std::to_string(n) + " vertices at separation " +
                                std::to_string(params.min_separation) + "; enlarge the extent");
  }

  // Candidate edges: each vertex's nearest neighbours, shortest first.
  const std::size_t k = std::min<std::size_t>(
      n - 1, std::max<std::size_t>(8, 2 * static_cast<std::size_t>(std::ceil(params.target_degree))));
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = dist(points[i], points[a]);
      const double db = dist(points[i], points[b]);
      return da != db ? da < db : a < b;
    });
    for (std::size_t j = 1; j <= k && j < n; ++j) {
      const auto a = static_cast<VertexId>(std::min(i, order[j]));
      const auto b = static_cast<VertexId>(std::max(i, order[j]));
      pairs.emplace(a, b);
    }
  }
  std::vector<std::pair<VertexId, VertexId>> cands(pairs.begin(), pairs.end());
  std::stable_sort(cands.begin(), cands.end(), [&](const auto& p, const auto& q) {
    return dist(points[idx(p.first)], points[idx(p.second)]) <
           dist(points[idx(q.first)], points[idx(q.second)]);
  });
  if (params.shuffle_candidates) std::shuffle(cands.begin(), cands.end(), rng);

  const auto target_edges =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * params.target_degree / 2.0));
  std::vector<Edge> edges;
  for (const auto& [a, b] : cands) {
    if (edges.size() >= target_edges) break;
    bool clear = true;
    for (std::size_t w = 0; w < n && clear; ++w) {
      if (static_cast<VertexId>(w) == a || static_cast<VertexId>(w) == b) continue;
      clear = segdist(points[w], points[idx(a)], points[idx(b)]) >= params.edge_clearance;
    }
    if (clear) edges.push_back(Edge{a, b});
  }
  return largest_component(points, edges);
}

Scenario gen_scenario(const Roadmap& roadmap, std::size_t n_pairs, std::uint64_t seed) {
  const std::size_t nv = roadmap.num_vertices();
  if (n_pairs > nv) {
    throw std::invalid_argument("cannot draw " + std::to_string(n_pairs) + " distinct vertices from " +
                                std::to_string(nv));
  }
  std::mt19937_64 rng(seed);
  std::vector<VertexId> starts(nv);
  std::iota(starts.begin(), starts.end(), 0);
  std::vector<VertexId> goals = starts;
  std::shuffle(starts.begin(), starts.end(), rng);
  std::shuffle(goals.begin(), goals.end(), rng);
  Scenario scen;
  scen.seed = seed;
  for (std::size_t i = 0; i < n_pairs; ++i) scen.pairs.emplace_back(starts[i], goals[i]);
  return scen;
}

Instance make_instance(const Roadmap& roadmap, double radius, const Scenario& scenario,
                       std::size_t n) {
  if (n > scenario.pairs.size()) {
    throw std::invalid_argument("scenario has only " + std::to_string(scenario.pairs.size()) +
                                " pairs, " + std::to_string(n) + " requested");
  }
  Instance inst{roadmap, radius, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    inst.starts.push_back(scenario.pairs[i].first);
    inst.goals.push_back(scenario.pairs[i].second);
  }
  return inst;
}

Preset preset(std::string_view name) {
  if (name == "sparse-like") {
    Preset p;
    p.name = "sparse-like";
    p.roadmap.vertices = 158;
    p.roadmap.target_degree = 2.0 * 349.0 / 158.0;
    p.roadmap.min_separation = 1.0;
    p.roadmap.edge_clearance = 0.3;
    p.roadmap.shuffle_candidates = true;
    p.roadmap.extent = Extent{0.0, 0.0, 20.0, 20.0};
    p.radius = 0.45;
    return p;
  }
  if (name == "dense-like") {
    Preset p;
    p.name = "dense-like";
    p.roadmap.vertices = 300;
    p.roadmap.target_degree = 2.0 * 7341.0 / 878.0;
    p.roadmap.min_separation = 1.0;
    p.roadmap.edge_clearance = 0.3;
    p.roadmap.shuffle_candidates = true;
    p.roadmap.extent = Extent{0.0, 0.0, 28.0, 28.0};
    p.radius = 0.45;
    return p;
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "' (expected sparse-like or dense-like)");
}

BenchCase make_bench_case(const Preset& p, std::uint64_t seed) {
  RoadmapParams params = p.roadmap;
  params.seed = seed;
  BenchCase bc;
  bc.name = p.name;
  bc.roadmap = gen_roadmap(params);
  bc.radius = p.radius;
  for (std::size_t i = 0; i < p.scenarios; ++i) {
    Scenario scen = gen_scenario(bc.roadmap, std::min(p.pairs, bc.roadmap.num_vertices()),
                                 seed * 1000 + i + 1);
    scen.roadmap = p.name;
    bc.scenarios.push_back(std::move(scen));
  }
  return bc;
}

std::string mode_name(SolverMode mode) { return mode == SolverMode::kLA ? "la" : "naive"; }

SolverMode parse_mode(std::string_view name) {
  if (name == "la") return SolverMode::kLA;
  if (name == "naive") return SolverMode::kNaive;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected la or naive)");
}

BenchReport run_bench(std::span<const BenchCase> cases, const BenchOptions& options) {
  struct Task {
    std::size_t row;
    const BenchCase* bench;
    const Scenario* scenario;
    SolverMode mode;
    std::size_t n;
  };
  struct Outcome {
    SolveStatus status = SolveStatus::kFailed;
    double ms = 0.0;
  };

  BenchReport report;
  std::vector<Task> tasks;
  for (const BenchCase& bc : cases) {
    for (SolverMode mode : options.modes) {
      for (std::size_t n = options.n_min; n <= options.n_max; ++n) {
        const std::size_t row = report.rows.size();
        bool any = false;
        for (const Scenario& scen : bc.scenarios) {
          if (scen.pairs.size() < n) continue;
          tasks.push_back(Task{row, &bc, &scen, mode, n});
          any = true;
        }
        if (any) report.rows.push_back(BenchRow{bc.name, mode, n, 0, 0, 0, 0.0});
      }
    }
  }

  std::vector<Outcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!abort) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      try {
        const Instance inst = make_instance(t.bench->roadmap, t.bench->radius, *t.scenario, t.n);
        SolverConfig config = options.solver;
        config.mode = t.mode;
        config.time_limit = options.time_limit;
        const SolveResult res = solve(inst, config);
        if (res.status == SolveStatus::kSolved) {
          if (const PlanReport check = validate_plan(inst, res.plan); !check.ok()) {
            throw BenchFailure("validator rejected a solved plan (" + t.bench->name + ", " +
                               mode_name(t.mode) + ", n=" + std::to_string(t.n) +
                               ", scenario seed " + std::to_string(t.scenario->seed) +
                               "): " + check.to_string());
          }
        }
        outcomes[i] = Outcome{res.status, res.stats.elapsed_ms};
        SPDLOG_LOGGER_INFO(&logger(), "{} {} n={} seed={}: {} in {:.1f} ms", t.bench->name, mode_name(t.mode), t.n,
                    t.scenario->seed, to_string(res.status), res.stats.elapsed_ms);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        abort = true;
      }
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<double> total_ms(report.rows.size(), 0.0);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    BenchRow& row = report.rows[tasks[i].row];
    switch (outcomes[i].status) {
      case SolveStatus::kSolved:
        ++row.solved;
        break;
      case SolveStatus::kFailed:
        ++row.failed;
        break;
      case SolveStatus::kTimeout:
        ++row.timeout;
        break;
    }
    total_ms[tasks[i].row] += outcomes[i].ms;
  }
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    report.rows[r].mean_ms = total_ms[r] / static_cast<double>(report.rows[r].runs());
  }
  return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
  out << "roadmap,mode,n,solved,failed,timeout,success_rate,mean_ms\n";
  for (const BenchRow& row : report.rows) {
    out << row.roadmap << ',' << mode_name(row.mode) << ',' << row.n << ',' << row.solved << ','
        << row.failed << ',' << row.timeout << ',' << std::fixed << std::setprecision(4)
        << row.success_rate() << ',' << std::setprecision(3) << row.mean_ms << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

}  // namespace mapfla
