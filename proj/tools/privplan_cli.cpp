// privplan: privacy-aware motion planning benchmark tool.
//
// Subcommands: validate-scene, build-roadmap, plan, bench, export-trace.
// Diagnostics go to stderr; data goes to files or stdout. Exit codes:
// 0 success, 1 usage error, 2 domain error (no path, infeasible scene,
// invalid input data), 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "privplan/bench.hpp"
#include "privplan/errors.hpp"
#include "privplan/planner.hpp"
#include "privplan/privacy.hpp"
#include "privplan/scene.hpp"

namespace {

using namespace privplan;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

std::vector<double> parse_weights(const std::string& csv) {
  std::vector<double> weights;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) throw CLI::ValidationError("--weights", "empty weight entry");
    std::size_t consumed = 0;
    double w = 0.0;
    try {
      w = std::stod(token, &consumed);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--weights", "not a number: '" + token + "'");
    }
    if (consumed != token.size())
      throw CLI::ValidationError("--weights", "not a number: '" + token + "'");
    if (std::abs(w) < 1.0)
      throw CLI::ValidationError("--weights", "weight magnitude must be >= 1");
    weights.push_back(w);
  }
  if (weights.empty()) throw CLI::ValidationError("--weights", "no weights given");
  return weights;
}

Config parse_config(const std::string& csv, const char* flag) {
  Config q;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      q.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "not a number: '" + token + "'");
    }
  }
  if (q.empty()) throw CLI::ValidationError(flag, "empty configuration");
  return q;
}

// Shared --scenario/--scene resolution. Exactly one must be given.
struct SceneSource {
  std::string scenario;  // builtin name
  std::string scene_path;

  void add_flags(CLI::App* cmd) {
    auto* group = cmd->add_option_group("scene source");
    group->add_option("--scenario", scenario, "Builtin scenario (manip_1, manip_3, nav_9)");
    group->add_option("--scene", scene_path, "Path to a scene/scenario JSON file");
    group->require_option(1);
  }

  ScenarioBundle load() const {
    if (!scenario.empty()) return builtin_scenario(scenario);
    if (!scene_path.empty()) return load_scenario_file(scene_path);
    throw ValidationError("one of --scenario or --scene is required");
  }
};

struct RoadmapFlags {
  std::optional<std::size_t> samples;
  std::optional<double> conn_radius;
  std::optional<double> resolution;
  std::optional<double> privacy_resolution;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--roadmap-n", samples, "Roadmap sample count (default: scenario)");
    cmd->add_option("--conn-radius", conn_radius, "Connection radius, C-space units (default: scenario)");
    cmd->add_option("--resolution", resolution, "Motion-check spacing (default: scenario)");
    cmd->add_option("--privacy-resolution", privacy_resolution,
                    "Privacy classification spacing (default: --resolution)");
  }

  RoadmapParams merge(const RoadmapParams& defaults) const {
    RoadmapParams params = defaults;
    if (samples) params.samples = *samples;
    if (conn_radius) params.conn_radius = *conn_radius;
    if (resolution) params.resolution = *resolution;
    params.privacy_resolution = privacy_resolution.value_or(
        resolution ? *resolution : defaults.privacy_resolution);
    return params;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Privacy-aware motion planning benchmark"};
  app.require_subcommand(1);

  // validate-scene ----------------------------------------------------------
  auto* validate_cmd = app.add_subcommand("validate-scene", "Parse and validate a scene file");
  SceneSource validate_src;
  validate_src.add_flags(validate_cmd);

  // build-roadmap -----------------------------------------------------------
  auto* build_cmd = app.add_subcommand("build-roadmap", "Build a roadmap and save it to a file");
  SceneSource build_src;
  build_src.add_flags(build_cmd);
  RoadmapFlags build_roadmap_flags;
  build_roadmap_flags.add_flags(build_cmd);
  std::uint64_t build_seed = 0;
  std::string build_out;
  unsigned build_threads = 1;
  build_cmd->add_option("--seed", build_seed, "Roadmap construction seed")->required();
  build_cmd->add_option("--out", build_out, "Output roadmap file")->required();
  build_cmd->add_option("--threads", build_threads, "Edge-validation threads (never affects output)");

  // plan ----------------------------------------------------------------
  auto* plan_cmd = app.add_subcommand("plan", "Solve a single start/goal query");
  SceneSource plan_src;
  plan_src.add_flags(plan_cmd);
  RoadmapFlags plan_roadmap_flags;
  plan_roadmap_flags.add_flags(plan_cmd);
  double plan_weight = 1.0;
  std::uint64_t plan_seed = 0;
  std::string plan_start, plan_goal, plan_roadmap_file;
  unsigned plan_threads = 1;
  const auto weight_magnitude_check = [](const std::string& value) -> std::string {
    try {
      if (std::abs(std::stod(value)) < 1.0) return "weight magnitude must be >= 1";
    } catch (const std::exception&) {
      return "not a number: '" + value + "'";
    }
    return {};
  };
  plan_cmd->add_option("--weight", plan_weight, "Privacy weight (|w| >= 1)")
      ->required()
      ->check(weight_magnitude_check);
  plan_cmd->add_option("--seed", plan_seed, "Roadmap construction seed")->required();
  plan_cmd->add_option("--start", plan_start, "Start configuration, comma-separated")->required();
  plan_cmd->add_option("--goal", plan_goal, "Goal configuration, comma-separated")->required();
  plan_cmd->add_option("--roadmap-file", plan_roadmap_file,
                       "Reuse a saved roadmap instead of building one");
  plan_cmd->add_option("--threads", plan_threads, "Build threads (never affects output)");

  // bench ---------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "Seeded multi-run weight sweep; writes a CSV");
  SceneSource bench_src;
  bench_src.add_flags(bench_cmd);
  RoadmapFlags bench_roadmap_flags;
  bench_roadmap_flags.add_flags(bench_cmd);
  std::size_t bench_runs = 100;
  std::string bench_weights_csv;
  std::uint64_t bench_seed = 0;
  std::string bench_out, bench_roadmap_file;
  unsigned bench_threads = 1;
  bool bench_timings = false;
  bench_cmd->add_option("--runs", bench_runs, "Number of random runs");
  bench_cmd
      ->add_option("--weights", bench_weights_csv,
                   "Comma-separated signed weights, e.g. 1,-2,-5,-10,2,5,10 (default: scenario)")
      ->check([](const std::string& csv) -> std::string {
        try {
          parse_weights(csv);
        } catch (const CLI::ValidationError& e) {
          return e.what();
        }
        return {};
      });
  bench_cmd->add_option("--seed", bench_seed, "Master seed")->required();
  bench_cmd->add_option("--out", bench_out, "Output CSV (default: stdout)");
  bench_cmd->add_option("--roadmap-file", bench_roadmap_file, "Reuse a saved roadmap");
  bench_cmd->add_option("--threads", bench_threads, "Worker threads (never affects output)");
  bench_cmd->add_flag("--timings", bench_timings,
                      "Record wall-clock solve times (breaks byte-reproducibility)");

  // export-trace ----------------------------------------------------------
  auto* trace_cmd = app.add_subcommand("export-trace", "Solve a query and export its sensor trace");
  SceneSource trace_src;
  trace_src.add_flags(trace_cmd);
  RoadmapFlags trace_roadmap_flags;
  trace_roadmap_flags.add_flags(trace_cmd);
  double trace_weight = 1.0;
  std::uint64_t trace_seed = 0;
  std::string trace_start, trace_goal, trace_roadmap_file, trace_out;
  unsigned trace_threads = 1;
  trace_cmd->add_option("--weight", trace_weight, "Privacy weight (|w| >= 1)")
      ->required()
      ->check(weight_magnitude_check);
  trace_cmd->add_option("--seed", trace_seed, "Roadmap construction seed")->required();
  trace_cmd->add_option("--start", trace_start, "Start configuration, comma-separated")->required();
  trace_cmd->add_option("--goal", trace_goal, "Goal configuration, comma-separated")->required();
  trace_cmd->add_option("--roadmap-file", trace_roadmap_file, "Reuse a saved roadmap");
  trace_cmd->add_option("--out", trace_out, "Output trace CSV")->required();
  trace_cmd->add_option("--threads", trace_threads, "Build threads (never affects output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto load_or_build = [](const ScenarioBundle& bundle, const RoadmapFlags& flags,
                          const std::string& roadmap_file, std::uint64_t seed,
                          unsigned threads) -> Roadmap {
    if (!roadmap_file.empty()) return load_roadmap(roadmap_file);
    return build_roadmap(bundle.scene, flags.merge(bundle.defaults), seed, threads);
  };

  if (validate_cmd->parsed()) {
    const ScenarioBundle bundle = validate_src.load();
    const Scene& scene = bundle.scene;
    std::cout << "scene '" << scene.name << "': dof=" << scene.robot.dof()
              << " joints=" << scene.robot.joints.size()
              << " obstacles=" << scene.obstacles.size()
              << " privacy_regions=" << scene.privacy_regions.size() << "\n";
    return kExitOk;
  }

  if (build_cmd->parsed()) {
    const ScenarioBundle bundle = build_src.load();
    const Roadmap roadmap = build_roadmap(bundle.scene, build_roadmap_flags.merge(bundle.defaults),
                                          build_seed, build_threads);
    save_roadmap(roadmap, build_out);
    std::cerr << "roadmap: " << roadmap.nodes.size() << " nodes, " << roadmap.edges.size()
              << " edges -> " << build_out << "\n";
    return kExitOk;
  }

  if (plan_cmd->parsed()) {
    const ScenarioBundle bundle = plan_src.load();
    const Roadmap roadmap =
        load_or_build(bundle, plan_roadmap_flags, plan_roadmap_file, plan_seed, plan_threads);
    const PathSolution solution =
        query(bundle.scene, roadmap, parse_config(plan_start, "--start"),
              parse_config(plan_goal, "--goal"), CostProfile(plan_weight));
    std::cout << "weight " << solution.weight << ": cost " << solution.cost << ", length "
              << solution.length << ", violation_fraction " << solution.violation_fraction
              << ", waypoints " << solution.waypoints.size() << "\n";
    return kExitOk;
  }

  if (bench_cmd->parsed()) {
    const ScenarioBundle bundle = bench_src.load();
    ExperimentSpec spec;
    spec.scenario = bundle.scene.name;
    spec.runs = bench_runs;
    spec.weights = bench_weights_csv.empty() ? bundle.weights : parse_weights(bench_weights_csv);
    spec.roadmap = bench_roadmap_flags.merge(bundle.defaults);
    spec.master_seed = bench_seed;
    spec.threads = bench_threads;
    spec.record_timings = bench_timings;
    spec.validate();

    std::vector<RunRecord> records;
    if (bench_roadmap_file.empty()) {
      records = run_experiment(spec, bundle);
    } else {
      records = run_experiment(spec, bundle, load_roadmap(bench_roadmap_file));
    }

    if (bench_out.empty()) {
      write_records_csv(records, std::cout);
    } else {
      write_records_csv(records, bench_out);
    }
    write_summary(summarize(records), std::cerr);
    return kExitOk;
  }

  if (trace_cmd->parsed()) {
    const ScenarioBundle bundle = trace_src.load();
    const RoadmapParams params = trace_roadmap_flags.merge(bundle.defaults);
    const Roadmap roadmap =
        load_or_build(bundle, trace_roadmap_flags, trace_roadmap_file, trace_seed, trace_threads);
    const PathSolution solution =
        query(bundle.scene, roadmap, parse_config(trace_start, "--start"),
              parse_config(trace_goal, "--goal"), CostProfile(trace_weight));
    export_trace(bundle.scene, solution, params.privacy_resolution,
                 std::filesystem::path(trace_out));
    std::cerr << "trace -> " << trace_out << "\n";
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const RoadmapFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitDomain;
  }
}
