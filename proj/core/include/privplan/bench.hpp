#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "privplan/planner.hpp"
#include "privplan/scene.hpp"

namespace privplan {

/// One seeded weight-sweep experiment over a scenario. The roadmap is built
/// once and reused across every run and weight; each run draws one valid
/// start/goal pair shared by all weights (paired design).
struct ExperimentSpec {
  std::string scenario;         // builtin name or scenario file path
  std::size_t runs = 1;
  std::vector<double> weights;  // nonempty, |w| >= 1, must contain 1
  RoadmapParams roadmap;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  /// Wall-clock solve times are off by default so identical specs produce
  /// byte-identical CSVs; turn on for profiling only.
  bool record_timings = false;

  void validate() const;
};

/// Outcome of one (run, weight) query.
struct RunRecord {
  std::string scenario;
  std::uint32_t run = 0;
  std::uint64_t seed = 0;  // per-run derived seed
  double weight = 1.0;
  bool success = false;
  std::optional<double> violation_fraction;  // set iff success
  std::optional<double> path_length;         // set iff success
  double solve_ms = 0.0;
  // Provenance, kept in memory only (not exported): the paired start/goal.
  Config start;
  Config goal;
};

/// Run the experiment on an already-loaded scenario. Records are ordered by
/// (run, weight) regardless of thread count; disconnected queries come back
/// success=false rather than throwing.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const ScenarioBundle& bundle);

/// Convenience overload resolving spec.scenario as a builtin name or a
/// scenario file path.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec);

/// As run_experiment(spec, bundle) but reusing a prebuilt roadmap (for
/// roadmap-file workflows). The roadmap must match the bundle's scene.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const ScenarioBundle& bundle,
                                      const Roadmap& roadmap);

struct Stats {
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
};

/// Per-weight aggregates; metric stats are over successful runs only and
/// absent when every run of a weight failed.
struct WeightAggregate {
  double weight = 1.0;
  std::size_t runs = 0;
  std::size_t successes = 0;
  std::optional<Stats> violation_fraction;
  std::optional<Stats> path_length;

  double success_rate() const {
    return runs == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(runs);
  }
};

/// One aggregate row per weight, ascending by weight. Throws on empty input.
std::vector<WeightAggregate> summarize(const std::vector<RunRecord>& records);

/// CSV export: header scenario,run,seed,weight,success,violation_fraction,
/// path_length,solve_ms; floats at 9 significant digits; LF endings; empty
/// metric fields on failed runs.
void write_records_csv(const std::vector<RunRecord>& records, std::ostream& out);
void write_records_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);
std::vector<RunRecord> read_records_csv(std::istream& in);

void write_summary(const std::vector<WeightAggregate>& aggregates, std::ostream& out);

/// Per-sample trace of a solved path for offline rendering: rows at the
/// classification subsegment boundaries. Each row's violating flag describes
/// the subsegment that starts there; the final row repeats the last flag.
/// Zero-length solutions produce the single row t=0.
void export_trace(const Scene& scene, const PathSolution& solution, double privacy_resolution,
                  std::ostream& out);
void export_trace(const Scene& scene, const PathSolution& solution, double privacy_resolution,
                  const std::filesystem::path& path);

}  // namespace privplan
