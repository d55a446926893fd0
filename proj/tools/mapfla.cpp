// mapfla: solve, validate, generate, benchmark and render MAPF instances with
// large disk-shaped agents.
//
// Exit codes: 0 success, 1 usage/IO/parse error, 2 solver failed or plan
// rejected, 3 solver timeout, 4 bench aborted on a rejected "solved" plan.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mapfla/harness.hpp"
#include "mapfla/io.hpp"
#include "mapfla/render.hpp"
#include "mapfla/solver.hpp"
#include "mapfla/validator.hpp"

namespace fs = std::filesystem;
using namespace mapfla;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitBenchBug = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstanceArgs {
  std::string map;
  std::string scen;
  int agents = -1;  // -1: every pair in the scenario
};

void add_instance_flags(CLI::App* cmd, InstanceArgs& args, bool map_required) {
  auto* map = cmd->add_option("--map", args.map, "Roadmap file (defaults to the scenario's reference)");
  if (map_required) map->required();
  cmd->add_option("--scen", args.scen, "Scenario file")->required();
  cmd->add_option("--agents", args.agents, "Use the first N start/goal pairs");
}

Instance load_instance(const InstanceArgs& args) {
  const Scenario scen = read_scenario_file(args.scen);
  fs::path map = args.map;
  if (map.empty()) map = fs::path(args.scen).parent_path() / scen.roadmap;
  const RoadmapFile rm = read_roadmap_file(map);
  if (args.agents == 0 || args.agents < -1) throw UsageError("--agents must be at least 1");
  const std::size_t n = args.agents < 0 ? scen.pairs.size() : static_cast<std::size_t>(args.agents);
  if (n > scen.pairs.size()) {
    throw UsageError("--agents " + std::to_string(n) + " exceeds the " +
                     std::to_string(scen.pairs.size()) + " pairs in " + args.scen);
  }
  Instance inst = make_instance(rm.roadmap, rm.radius, scen, n);
  if (const RoadmapReport report = validate_roadmap(inst); !report.ok()) {
    throw UsageError("invalid instance:\n" + report.to_string());
  }
  return inst;
}

AgentOrder parse_order(const std::string& text) {
  if (text == "index") return AgentOrder::index();
  const auto fields = [&] {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string f; std::getline(ss, f, ':');) out.push_back(f);
    return out;
  }();
  auto number = [&](const std::string& s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw UsageError("bad --order '" + text + "'");
    return v;
  };
  if (fields.size() == 3 && fields[0] == "random-restarts") {
    return AgentOrder::random_restarts(number(fields[1]), number(fields[2]));
  }
  if (fields.size() == 2 && fields[0] == "given") {
    std::vector<AgentId> perm;
    std::stringstream ss(fields[1]);
    for (std::string f; std::getline(ss, f, ',');) perm.push_back(static_cast<AgentId>(number(f)));
    return AgentOrder::given(std::move(perm));
  }
  throw UsageError("bad --order '" + text + "' (index | random-restarts:<k>:<seed> | given:<i,j,...>)");
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  std::size_t lo = 0;
  std::size_t hi = 0;
  auto parse = [&](std::string_view s, std::size_t& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };
  const std::string_view view(text);
  const bool ok = dots == std::string::npos
                      ? parse(view, lo) && (hi = lo, true)
                      : parse(view.substr(0, dots), lo) && parse(view.substr(dots + 2), hi);
  if (!ok || lo < 1 || hi < lo) throw UsageError("bad --n '" + text + "' (expected a..b with 1 <= a <= b)");
  return {lo, hi};
}

std::chrono::milliseconds seconds_to_ms(double seconds) {
  if (!(seconds > 0.0)) throw UsageError("--time-limit must be positive");
  return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0 + 0.5));
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent pathfinding for large agents"};
  app.require_subcommand(1);

  // solve
  InstanceArgs solve_args;
  std::string mode = "la";
  std::string order = "index";
  double time_limit = 30.0;
  int recursion_limit = 8;
  std::string plan_out;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and write the plan");
  add_instance_flags(solve_cmd, solve_args, false);
  solve_cmd->add_option("--mode", mode, "la or naive");
  solve_cmd->add_option("--order", order, "index | random-restarts:<k>:<seed> | given:<i,j,...>");
  solve_cmd->add_option("--time-limit", time_limit, "Seconds");
  solve_cmd->add_option("--recursion-limit", recursion_limit, "Maximum move-la nesting");
  solve_cmd->add_option("--out", plan_out, "Plan file to write when solved");

  // validate
  InstanceArgs validate_args;
  std::string plan_in;
  auto* validate_cmd = app.add_subcommand("validate", "Check a plan against an instance");
  add_instance_flags(validate_cmd, validate_args, false);
  validate_cmd->add_option("--plan", plan_in, "Plan file")->required();

  // gen
  std::string preset_name = "sparse-like";
  std::uint64_t seed = 1;
  std::string out_dir;
  std::size_t scenario_count = 0;
  int pair_count = -1;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a roadmap and scenarios from a preset");
  gen_cmd->add_option("--preset", preset_name, "sparse-like or dense-like");
  gen_cmd->add_option("--seed", seed, "Generator seed");
  gen_cmd->add_option("--out", out_dir, "Output directory")->required();
  gen_cmd->add_option("--scenarios", scenario_count, "Scenario count (preset default 25)");
  gen_cmd->add_option("--agents", pair_count, "Pairs per scenario (preset default 40)");

  // bench
  std::string modes = "la,naive";
  std::string n_range = "2..40";
  std::size_t jobs = 1;
  std::string csv_out;
  std::string bench_map;
  std::vector<std::string> bench_scens;
  auto* bench_cmd = app.add_subcommand("bench", "Success-rate benchmark, CSV report");
  bench_cmd->add_option("--preset", preset_name, "Generate the roadmap and scenarios from a preset");
  bench_cmd->add_option("--seed", seed, "Preset seed");
  bench_cmd->add_option("--map", bench_map, "Roadmap file (instead of a preset)");
  bench_cmd->add_option("--scen", bench_scens, "Scenario files (with --map)");
  bench_cmd->add_option("--modes", modes, "Comma-separated: la,naive");
  bench_cmd->add_option("--n", n_range, "Agent counts a..b");
  bench_cmd->add_option("--time-limit", time_limit, "Seconds per run");
  bench_cmd->add_option("--recursion-limit", recursion_limit, "Maximum move-la nesting");
  bench_cmd->add_option("--jobs", jobs, "Parallel workers");
  bench_cmd->add_option("--out", csv_out, "CSV file (stdout when omitted)");

  // render
  InstanceArgs render_args;
  std::string render_plan;
  std::string frames_dir;
  auto* render_cmd = app.add_subcommand("render", "Write one SVG frame per plan step");
  add_instance_flags(render_cmd, render_args, false);
  render_cmd->add_option("--plan", render_plan, "Plan file")->required();
  render_cmd->add_option("--out", frames_dir, "Frame directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) {
      const Instance inst = load_instance(solve_args);
      SolverConfig config;
      config.mode = parse_mode(mode);
      config.order = parse_order(order);
      config.time_limit = seconds_to_ms(time_limit);
      if (recursion_limit < 1) throw UsageError("--recursion-limit must be at least 1");
      config.recursion_limit = recursion_limit;
      const SolveResult res = solve(inst, config);
      if (res.status == SolveStatus::kSolved && !plan_out.empty()) {
        std::ostringstream text;
        write_plan(text, res.plan);
        write_text(plan_out, text.str());
      }
      std::cout << "status=" << to_string(res.status) << " moves=" << res.stats.moves
                << " ms=" << static_cast<long long>(res.stats.elapsed_ms + 0.5) << '\n';
      switch (res.status) {
        case SolveStatus::kSolved:
          return kExitOk;
        case SolveStatus::kFailed:
          return kExitFailed;
        case SolveStatus::kTimeout:
          return kExitTimeout;
      }
    }

    if (*validate_cmd) {
      const Instance inst = load_instance(validate_args);
      const Plan plan = read_plan_file(plan_in);
      const PlanReport report = validate_plan(inst, plan);
      if (report.ok()) {
        std::cout << "ok moves=" << plan.size() << '\n';
        return kExitOk;
      }
      std::cout << report.to_string() << '\n';
      return kExitFailed;
    }

    if (*gen_cmd) {
      Preset p = preset(preset_name);
      if (scenario_count != 0) p.scenarios = scenario_count;
      if (pair_count == 0 || pair_count < -1) throw UsageError("--agents must be at least 1");
      if (pair_count > 0) p.pairs = static_cast<std::size_t>(pair_count);
      BenchCase bc = make_bench_case(p, seed);
      const fs::path dir(out_dir);
      std::ostringstream map_text;
      write_roadmap(map_text, bc.roadmap, bc.radius);
      write_text(dir / "roadmap.txt", map_text.str());
      for (std::size_t i = 0; i < bc.scenarios.size(); ++i) {
        Scenario& scen = bc.scenarios[i];
        scen.roadmap = "roadmap.txt";
        std::ostringstream text;
        write_scenario(text, scen);
        char name[32];
        std::snprintf(name, sizeof name, "scen-%02zu.txt", i);
        write_text(dir / name, text.str());
      }
      std::cout << "wrote " << dir.string() << ": " << bc.roadmap.num_vertices() << " vertices, "
                << bc.roadmap.num_edges() << " edges, " << bc.scenarios.size() << " scenarios\n";
      return kExitOk;
    }

    if (*bench_cmd) {
      BenchOptions options;
      options.modes.clear();
      std::stringstream ss(modes);
      for (std::string m; std::getline(ss, m, ',');) options.modes.push_back(parse_mode(m));
      if (options.modes.empty()) throw UsageError("--modes is empty");
      std::tie(options.n_min, options.n_max) = parse_range(n_range);
      options.time_limit = seconds_to_ms(time_limit);
      if (recursion_limit < 1) throw UsageError("--recursion-limit must be at least 1");
      options.solver.recursion_limit = recursion_limit;
      if (jobs < 1) throw UsageError("--jobs must be at least 1");
      options.jobs = jobs;

      std::vector<BenchCase> cases;
      if (!bench_map.empty()) {
        BenchCase bc;
        const RoadmapFile rm = read_roadmap_file(bench_map);
        bc.name = fs::path(bench_map).stem().string();
        bc.roadmap = rm.roadmap;
        bc.radius = rm.radius;
        for (const auto& s : bench_scens) bc.scenarios.push_back(read_scenario_file(s));
        cases.push_back(std::move(bc));
      } else {
        if (!bench_scens.empty()) throw UsageError("--scen needs --map");
        cases.push_back(make_bench_case(preset(preset_name), seed));
      }

      const BenchReport report = run_bench(cases, options);
      std::ostringstream csv;
      write_csv(csv, report);
      if (csv_out.empty()) {
        std::cout << csv.str();
      } else {
        write_text(csv_out, csv.str());
      }
      return kExitOk;
    }

    if (*render_cmd) {
      const Instance inst = load_instance(render_args);
      const Plan plan = read_plan_file(render_plan);
      if (const PlanReport report = validate_plan(inst, plan); !report.ok()) {
        std::cerr << "warning: plan does not validate: " << report.to_string() << '\n';
      }
      const std::size_t frames = render_frames(inst, plan, frames_dir);
      std::cout << "wrote " << frames << " frame(s) to " << frames_dir << '\n';
      return kExitOk;
    }
  } catch (const BenchFailure& e) {
    std::cerr << "BUG: " << e.what() << '\n';
    return kExitBenchBug;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
