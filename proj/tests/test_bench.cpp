#include <doctest.h>

#include <cmath>
#include <sstream>

#include "privplan/bench.hpp"
#include "privplan/errors.hpp"

using namespace privplan;

namespace {

// Small planar world reused across the harness tests: fast roadmaps, a
// watched corner, plenty of connectivity.
ScenarioBundle planar_bundle() {
  ScenarioBundle bundle;
  Scene& scene = bundle.scene;
  scene.name = "planar_bench";
  JointSpec x;
  x.kind = JointSpec::Kind::prismatic;
  x.axis = Vec3::UnitX();
  x.lower = {-2.0};
  x.upper = {2.0};
  x.metric_weight = {1.0};
  JointSpec y = x;
  y.axis = Vec3::UnitY();
  scene.robot.joints = {x, y};
  scene.robot.link_collision = {std::nullopt, Primitive::make_sphere(0.05)};
  scene.robot.sensor.link_index = 1;
  scene.robot.sensor.half_angle = 21.0 * M_PI / 180.0;
  scene.robot.sensor.range = 2.0;
  scene.obstacles = {
      Primitive::make_sphere(0.4, Transform::from_translation(Vec3(0.3, -0.4, 0.0)))};
  scene.privacy_regions = {{Vec3(1.4, 1.4, 0.0), 0.4}};

  bundle.defaults.samples = 80;
  bundle.defaults.conn_radius = 1.6;
  bundle.defaults.resolution = 0.05;
  bundle.defaults.privacy_resolution = 0.05;
  bundle.weights = {1.0, -2.0, 2.0};
  return bundle;
}

ExperimentSpec planar_spec(std::size_t runs, std::vector<double> weights) {
  ExperimentSpec spec;
  spec.scenario = "planar_bench";
  spec.runs = runs;
  spec.weights = std::move(weights);
  spec.roadmap = planar_bundle().defaults;
  spec.master_seed = 7;
  return spec;
}

std::string to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  write_records_csv(records, out);
  return out.str();
}

}  // namespace

TEST_CASE("experiment spec validation") {
  ExperimentSpec spec = planar_spec(0, {1.0});
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec = planar_spec(1, {});
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec = planar_spec(1, {2.0, -2.0});
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("agnostic"), ValidationError);
  spec = planar_spec(1, {1.0, 0.5});
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("weight magnitude"), ValidationError);
  spec = planar_spec(1, {1.0, -2.0});
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("record count, ordering, and paired start/goal provenance") {
  const ScenarioBundle bundle = planar_bundle();
  const ExperimentSpec spec = planar_spec(2, {1.0, -2.0});
  const auto records = run_experiment(spec, bundle);
  REQUIRE(records.size() == 4);  // runs x weights

  // Canonical order: by run, then ascending weight.
  CHECK(records[0].run == 0);
  CHECK(records[0].weight == -2.0);
  CHECK(records[1].run == 0);
  CHECK(records[1].weight == 1.0);
  CHECK(records[2].run == 1);
  CHECK(records[2].weight == -2.0);

  // Paired design: identical start/goal across a run's weights, fresh
  // pairs across runs.
  CHECK(records[0].start == records[1].start);
  CHECK(records[0].goal == records[1].goal);
  CHECK(records[0].seed == records[1].seed);
  CHECK(records[0].start != records[2].start);
  CHECK(records[0].seed != records[2].seed);

  for (const auto& record : records) {
    CHECK(record.scenario == "planar_bench");
    if (record.success) {
      CHECK(*record.violation_fraction >= 0.0);
      CHECK(*record.violation_fraction <= 1.0);
      CHECK(*record.path_length >= 0.0);
    }
    CHECK(record.solve_ms == 0.0);  // timings off by default
  }
}

TEST_CASE("identical specs produce byte-identical CSV across thread counts") {
  const ScenarioBundle bundle = planar_bundle();
  ExperimentSpec spec = planar_spec(6, {1.0, -2.0, 2.0});

  spec.threads = 1;
  const std::string csv_single = to_csv(run_experiment(spec, bundle));
  spec.threads = 4;
  const std::string csv_parallel = to_csv(run_experiment(spec, bundle));
  CHECK(csv_single == csv_parallel);

  const std::string csv_again = to_csv(run_experiment(spec, bundle));
  CHECK(csv_single == csv_again);
}

TEST_CASE("CSV writer format and round-trip") {
  const ScenarioBundle bundle = planar_bundle();
  const auto records = run_experiment(planar_spec(2, {1.0, -2.0}), bundle);
  const std::string csv = to_csv(records);

  CHECK(csv.rfind("scenario,run,seed,weight,success,violation_fraction,path_length,solve_ms\n",
                  0) == 0);
  CHECK(csv.find("\r") == std::string::npos);  // LF endings

  std::istringstream in(csv);
  const auto parsed = read_records_csv(in);
  REQUIRE(parsed.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(parsed[i].scenario == records[i].scenario);
    CHECK(parsed[i].run == records[i].run);
    CHECK(parsed[i].seed == records[i].seed);
    CHECK(parsed[i].weight == records[i].weight);
    CHECK(parsed[i].success == records[i].success);
    CHECK(parsed[i].violation_fraction.has_value() == records[i].violation_fraction.has_value());
    if (parsed[i].violation_fraction)
      CHECK(*parsed[i].violation_fraction ==
            doctest::Approx(*records[i].violation_fraction).epsilon(1e-8));
    if (parsed[i].path_length)
      CHECK(*parsed[i].path_length == doctest::Approx(*records[i].path_length).epsilon(1e-8));
  }
  // Reserialization is byte-stable at CSV precision.
  CHECK(to_csv(parsed) == csv);

  std::istringstream bad_header("scenario,run\nx,0\n");
  CHECK_THROWS_AS(read_records_csv(bad_header), ParseError);
  std::istringstream bad_field(
      "scenario,run,seed,weight,success,violation_fraction,path_length,solve_ms\n"
      "s,zero,1,1,1,0.5,4.0,0\n");
  CHECK_THROWS_AS(read_records_csv(bad_field), ParseError);
}

TEST_CASE("summarize: single record and min/max") {
  RunRecord a;
  a.scenario = "s";
  a.weight = 1.0;
  a.success = true;
  a.violation_fraction = 0.5;
  a.path_length = 4.0;
  const auto single = summarize({a});
  REQUIRE(single.size() == 1);
  CHECK(single[0].violation_fraction->mean == 0.5);
  CHECK(single[0].violation_fraction->median == 0.5);
  CHECK(single[0].violation_fraction->stddev == 0.0);
  CHECK(single[0].path_length->mean == 4.0);
  CHECK(single[0].success_rate() == 1.0);

  RunRecord b = a;
  b.violation_fraction = 0.0;
  RunRecord c = a;
  c.violation_fraction = 1.0;
  const auto two = summarize({b, c});
  REQUIRE(two.size() == 1);
  CHECK(two[0].violation_fraction->mean == doctest::Approx(0.5));
  CHECK(two[0].violation_fraction->min == 0.0);
  CHECK(two[0].violation_fraction->max == 1.0);

  // All-failure weight: aggregates absent, success rate zero.
  RunRecord failed;
  failed.scenario = "s";
  failed.weight = -2.0;
  failed.success = false;
  const auto with_failure = summarize({a, failed});
  REQUIRE(with_failure.size() == 2);
  CHECK(with_failure[0].weight == -2.0);
  CHECK_FALSE(with_failure[0].violation_fraction.has_value());
  CHECK(with_failure[0].success_rate() == 0.0);
  CHECK(with_failure[1].weight == 1.0);

  CHECK_THROWS_AS(summarize({}), ValidationError);
}

TEST_CASE("summaries of a constant column equal the constant") {
  std::vector<RunRecord> records;
  for (int i = 0; i < 10; ++i) {
    RunRecord r;
    r.scenario = "s";
    r.run = i;
    r.weight = 5.0;
    r.success = true;
    r.violation_fraction = 0.25;
    r.path_length = 3.5;
    records.push_back(r);
  }
  const auto aggregates = summarize(records);
  REQUIRE(aggregates.size() == 1);
  CHECK(aggregates[0].violation_fraction->mean == 0.25);
  CHECK(aggregates[0].violation_fraction->median == 0.25);
  CHECK(aggregates[0].violation_fraction->min == 0.25);
  CHECK(aggregates[0].violation_fraction->max == 0.25);
  CHECK(aggregates[0].violation_fraction->stddev == 0.0);
  CHECK(aggregates[0].path_length->mean == 3.5);
}

TEST_CASE("trace export: row count, zero-length, and fraction recovery") {
  const ScenarioBundle bundle = planar_bundle();
  const Roadmap roadmap = build_roadmap(bundle.scene, bundle.defaults, 7);

  // Zero-length solution: single row at t = 0.
  {
    const Config q = {0.9, 1.2};
    const PathSolution zero = query(bundle.scene, roadmap, q, q, CostProfile(1.0));
    std::ostringstream out;
    export_trace(bundle.scene, zero, bundle.defaults.privacy_resolution, out);
    const std::string text = out.str();
    const auto rows = std::count(text.begin(), text.end(), '\n') - 1;
    CHECK(rows == 1);
    CHECK(text.find("\n0,") != std::string::npos);
  }

  const Config start = {-1.8, -1.6};
  const Config goal = {1.7, 1.5};
  const PathSolution solution = query(bundle.scene, roadmap, start, goal, CostProfile(1.0));
  std::ostringstream out;
  export_trace(bundle.scene, solution, bundle.defaults.privacy_resolution, out);
  std::istringstream in(out.str());

  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "t,q0,q1,apex_x,apex_y,apex_z,axis_x,axis_y,axis_z,violating");

  // Row count = sum of per-edge subdivision counts + 1.
  std::size_t expected_rows = 1;
  for (std::size_t e = 0; e + 1 < solution.waypoints.size(); ++e) {
    const double length = cspace_distance(bundle.scene.robot, solution.waypoints[e],
                                          solution.waypoints[e + 1]);
    expected_rows += static_cast<std::size_t>(
        std::ceil(length / bundle.defaults.privacy_resolution));
  }

  std::vector<double> ts;
  std::vector<int> flags;
  std::string line;
  while (std::getline(in, line)) {
    const auto first_comma = line.find(',');
    ts.push_back(std::stod(line.substr(0, first_comma)));
    flags.push_back(line.back() == '1');
  }
  CHECK(ts.size() == expected_rows);
  CHECK(ts.front() == 0.0);
  CHECK(ts.back() == 1.0);
  CHECK(std::is_sorted(ts.begin(), ts.end()));

  // Re-aggregate: each row's flag labels the subsegment starting there.
  double violating_length = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    if (flags[i]) violating_length += ts[i + 1] - ts[i];
  CHECK(violating_length ==
        doctest::Approx(solution.violation_fraction).epsilon(1e-6));
}

TEST_CASE("disconnected queries become success=false records, not crashes") {
  ScenarioBundle bundle = planar_bundle();
  // A wall of spheres splits the square; starts and goals land on both sides.
  bundle.scene.obstacles.clear();
  for (double y = -2.2; y <= 2.2; y += 0.3)
    bundle.scene.obstacles.push_back(
        Primitive::make_sphere(0.22, Transform::from_translation(Vec3(0.0, y, 0.0))));
  bundle.defaults.samples = 40;
  bundle.defaults.conn_radius = 0.9;

  ExperimentSpec spec = planar_spec(8, {1.0, -2.0});
  spec.roadmap = bundle.defaults;
  const auto records = run_experiment(spec, bundle);
  REQUIRE(records.size() == 16);

  std::size_t failures = 0;
  for (const auto& record : records) {
    if (!record.success) {
      ++failures;
      CHECK_FALSE(record.violation_fraction.has_value());
      CHECK_FALSE(record.path_length.has_value());
    }
  }
  CHECK(failures > 0);  // the wall forces cross-chamber pairs to fail

  // Failure rows export as empty metric fields and re-parse as such.
  const std::string csv = to_csv(records);
  std::istringstream in(csv);
  const auto parsed = read_records_csv(in);
  REQUIRE(parsed.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(parsed[i].success == records[i].success);
    CHECK(parsed[i].violation_fraction.has_value() == records[i].violation_fraction.has_value());
  }
  CHECK(to_csv(parsed) == csv);

  // Aggregates: failed runs excluded from means, counted in success rate.
  for (const auto& agg : summarize(records)) {
    CHECK(agg.runs == 8);
    CHECK(agg.success_rate() < 1.0);
    if (agg.successes > 0) CHECK(agg.violation_fraction.has_value());
  }
}

TEST_CASE("timings are recorded only when requested") {
  const ScenarioBundle bundle = planar_bundle();
  ExperimentSpec spec = planar_spec(1, {1.0});
  spec.record_timings = true;
  const auto records = run_experiment(spec, bundle);
  REQUIRE(records.size() == 1);
  CHECK(records[0].solve_ms >= 0.0);
}
