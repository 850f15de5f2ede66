#include "privplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "privplan/errors.hpp"
#include "privplan/rng.hpp"

namespace privplan {

namespace {

std::string fmt9(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Config sample_valid(const Scene& scene, const ValidityChecker& checker, Rng& rng,
                    const char* what) {
  constexpr int kBudget = 10000;
  for (int attempt = 0; attempt < kBudget; ++attempt) {
    Config q = sample_config(scene.robot, rng);
    if (checker.is_config_valid(q)) return q;
  }
  throw SamplingError(std::string("could not sample a valid ") + what + " configuration");
}

}  // namespace

void ExperimentSpec::validate() const {
  if (runs < 1) throw ValidationError("experiment runs must be >= 1");
  if (weights.empty()) throw ValidationError("experiment weight sweep must be nonempty");
  bool has_agnostic = false;
  for (const double w : weights) {
    if (!(std::abs(w) >= 1.0)) throw ValidationError("weight magnitude must be >= 1");
    if (w == 1.0) has_agnostic = true;
  }
  if (!has_agnostic) throw ValidationError("weight sweep must contain the agnostic weight 1");
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const ScenarioBundle& bundle,
                                      const Roadmap& roadmap) {
  spec.validate();
  const Scene& scene = bundle.scene;
  ValidityChecker checker(scene, spec.roadmap.resolution);

  // Weights in canonical ascending order; each run's records share one
  // start/goal pair so the weight effect is paired.
  std::vector<double> weights = spec.weights;
  std::stable_sort(weights.begin(), weights.end());

  std::vector<RunRecord> records(spec.runs * weights.size());

  auto run_one = [&](std::uint32_t run) {
    const std::uint64_t run_seed = derive_seed(spec.master_seed, run);
    Rng rng(run_seed);
    const Config start = sample_valid(scene, checker, rng, "start");
    const Config goal = sample_valid(scene, checker, rng, "goal");

    for (std::size_t wi = 0; wi < weights.size(); ++wi) {
      RunRecord record;
      record.scenario = scene.name;
      record.run = run;
      record.seed = run_seed;
      record.weight = weights[wi];
      record.start = start;
      record.goal = goal;

      const auto t0 = std::chrono::steady_clock::now();
      try {
        const PathSolution solution = query(scene, roadmap, start, goal, CostProfile(weights[wi]));
        record.success = true;
        record.violation_fraction = solution.violation_fraction;
        record.path_length = solution.length;
      } catch (const NoPathError&) {
        record.success = false;
      }
      if (spec.record_timings) {
        const auto t1 = std::chrono::steady_clock::now();
        record.solve_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
      records[run * weights.size() + wi] = std::move(record);
    }
  };

  if (spec.threads <= 1 || spec.runs == 1) {
    for (std::uint32_t run = 0; run < spec.runs; ++run) run_one(run);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < spec.threads; ++t)
      pool.emplace_back([&] {
        for (std::uint32_t run = next.fetch_add(1); run < spec.runs; run = next.fetch_add(1))
          run_one(run);
      });
    for (auto& worker : pool) worker.join();
  }
  return records;
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const ScenarioBundle& bundle) {
  const Roadmap roadmap =
      build_roadmap(bundle.scene, spec.roadmap, spec.master_seed, spec.threads);
  return run_experiment(spec, bundle, roadmap);
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec) {
  ScenarioBundle bundle;
  if (spec.scenario.find('/') != std::string::npos ||
      spec.scenario.find(".json") != std::string::npos)
    bundle = load_scenario_file(spec.scenario);
  else
    bundle = builtin_scenario(spec.scenario);
  return run_experiment(spec, bundle);
}

namespace {

Stats stats_of(std::vector<double> values) {
  Stats stats;
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  stats.min = values.front();
  stats.max = values.back();
  stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  stats.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  if (n > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return stats;
}

}  // namespace

std::vector<WeightAggregate> summarize(const std::vector<RunRecord>& records) {
  if (records.empty()) throw ValidationError("summarize: no records");

  std::vector<double> weights;
  for (const auto& record : records)
    if (std::find(weights.begin(), weights.end(), record.weight) == weights.end())
      weights.push_back(record.weight);
  std::sort(weights.begin(), weights.end());

  std::vector<WeightAggregate> aggregates;
  for (const double w : weights) {
    WeightAggregate agg;
    agg.weight = w;
    std::vector<double> fractions;
    std::vector<double> lengths;
    for (const auto& record : records) {
      if (record.weight != w) continue;
      ++agg.runs;
      if (record.success) {
        ++agg.successes;
        fractions.push_back(*record.violation_fraction);
        lengths.push_back(*record.path_length);
      }
    }
    if (!fractions.empty()) {
      agg.violation_fraction = stats_of(fractions);
      agg.path_length = stats_of(lengths);
    }
    aggregates.push_back(std::move(agg));
  }
  return aggregates;
}

void write_records_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << "scenario,run,seed,weight,success,violation_fraction,path_length,solve_ms\n";
  for (const auto& record : records) {
    out << record.scenario << ',' << record.run << ',' << record.seed << ','
        << fmt9(record.weight) << ',' << (record.success ? '1' : '0') << ','
        << (record.violation_fraction ? fmt9(*record.violation_fraction) : "") << ','
        << (record.path_length ? fmt9(*record.path_length) : "") << ','
        << fmt9(record.solve_ms) << '\n';
  }
}

void write_records_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open CSV for writing: " + path.string());
  write_records_csv(records, out);
  if (!out) throw IoError("failed writing CSV: " + path.string());
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::vector<RunRecord> records;
  std::string line;
  if (!std::getline(in, line) ||
      line != "scenario,run,seed,weight,success,violation_fraction,path_length,solve_ms")
    throw ParseError("CSV: missing or unexpected header row");

  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
      const std::size_t comma = line.find(',', begin);
      fields.push_back(line.substr(begin, comma - begin));
      if (comma == std::string::npos) break;
      begin = comma + 1;
    }
    if (fields.size() != 8)
      throw ParseError("CSV line " + std::to_string(line_number) + ": expected 8 fields");

    try {
      RunRecord record;
      record.scenario = fields[0];
      record.run = static_cast<std::uint32_t>(std::stoul(fields[1]));
      record.seed = std::stoull(fields[2]);
      record.weight = std::stod(fields[3]);
      record.success = fields[4] == "1";
      if (!fields[5].empty()) record.violation_fraction = std::stod(fields[5]);
      if (!fields[6].empty()) record.path_length = std::stod(fields[6]);
      record.solve_ms = std::stod(fields[7]);
      records.push_back(std::move(record));
    } catch (const std::exception&) {
      throw ParseError("CSV line " + std::to_string(line_number) + ": malformed field");
    }
  }
  return records;
}

void write_summary(const std::vector<WeightAggregate>& aggregates, std::ostream& out) {
  out << std::left << std::setw(8) << "weight" << std::setw(9) << "success" << std::setw(12)
      << "viol_mean" << std::setw(12) << "viol_std" << std::setw(12) << "len_mean"
      << std::setw(12) << "len_std" << '\n';
  for (const auto& agg : aggregates) {
    out << std::left << std::setw(8) << fmt9(agg.weight) << std::setw(9)
        << fmt9(agg.success_rate());
    if (agg.violation_fraction) {
      out << std::setw(12) << fmt9(agg.violation_fraction->mean) << std::setw(12)
          << fmt9(agg.violation_fraction->stddev) << std::setw(12)
          << fmt9(agg.path_length->mean) << std::setw(12) << fmt9(agg.path_length->stddev);
    } else {
      out << std::setw(12) << "-" << std::setw(12) << "-" << std::setw(12) << "-"
          << std::setw(12) << "-";
    }
    out << '\n';
  }
}

void export_trace(const Scene& scene, const PathSolution& solution, double privacy_resolution,
                  std::ostream& out) {
  const std::size_t dof = scene.robot.dof();
  out << "t";
  for (std::size_t i = 0; i < dof; ++i) out << ",q" << i;
  out << ",apex_x,apex_y,apex_z,axis_x,axis_y,axis_z,violating\n";

  auto emit_row = [&](double t, const Config& q, bool violating) {
    const Cone cone = sensor_cone_at(scene.robot, q);
    out << fmt9(t);
    for (const double value : q) out << ',' << fmt9(value);
    out << ',' << fmt9(cone.apex.x()) << ',' << fmt9(cone.apex.y()) << ',' << fmt9(cone.apex.z())
        << ',' << fmt9(cone.axis.x()) << ',' << fmt9(cone.axis.y()) << ',' << fmt9(cone.axis.z())
        << ',' << (violating ? '1' : '0') << '\n';
  };

  double total = 0.0;
  for (std::size_t e = 0; e + 1 < solution.waypoints.size(); ++e)
    total += cspace_distance(scene.robot, solution.waypoints[e], solution.waypoints[e + 1]);

  if (total == 0.0) {
    const Config& q = solution.waypoints.front();
    emit_row(0.0, q, privacy_violated(scene, q));
    return;
  }

  // Rows sit at subsegment boundaries; a row's flag is the midpoint label of
  // the subsegment starting there, so re-aggregating (t, flag) pairs
  // reproduces the solution's violation fraction. The final row repeats the
  // last flag.
  double consumed = 0.0;
  bool last_flag = false;
  for (std::size_t e = 0; e + 1 < solution.waypoints.size(); ++e) {
    const Config& a = solution.waypoints[e];
    const Config& b = solution.waypoints[e + 1];
    const double length = cspace_distance(scene.robot, a, b);
    if (length == 0.0) continue;
    const auto pieces =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / privacy_resolution)));
    for (std::size_t k = 0; k < pieces; ++k) {
      const double t_row = static_cast<double>(k) / static_cast<double>(pieces);
      const double t_mid = (static_cast<double>(k) + 0.5) / static_cast<double>(pieces);
      last_flag = privacy_violated(scene, interpolate(a, b, t_mid));
      emit_row((consumed + t_row * length) / total, interpolate(a, b, t_row), last_flag);
    }
    consumed += length;
  }
  emit_row(1.0, solution.waypoints.back(), last_flag);
}

void export_trace(const Scene& scene, const PathSolution& solution, double privacy_resolution,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open trace file for writing: " + path.string());
  export_trace(scene, solution, privacy_resolution, out);
  if (!out) throw IoError("failed writing trace file: " + path.string());
}

}  // namespace privplan
