#include <benchmark/benchmark.h>

#include <cmath>

#include "privplan/planner.hpp"
#include "privplan/privacy.hpp"

namespace {

using namespace privplan;

// Planar point robot with one obstacle and one watched corner; cheap to
// rebuild, so roadmap construction itself can be benchmarked.
Scene planar_scene() {
  Scene scene;
  scene.name = "planar";
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
  scene.obstacles = {Primitive::make_sphere(0.5)};
  scene.privacy_regions = {{Vec3(1.5, 1.5, 0.0), 0.4}};
  return scene;
}

RoadmapParams planar_params(std::size_t samples) {
  RoadmapParams params;
  params.samples = samples;
  params.conn_radius = 1.5;
  params.resolution = 0.05;
  params.privacy_resolution = 0.05;
  return params;
}

void BM_BuildRoadmap(benchmark::State& state) {
  const Scene scene = planar_scene();
  const RoadmapParams params = planar_params(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_roadmap(scene, params, 7));
  }
}
BENCHMARK(BM_BuildRoadmap)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_EdgeReweight(benchmark::State& state) {
  const Scene scene = planar_scene();
  const Roadmap roadmap = build_roadmap(scene, planar_params(200), 7);
  const CostProfile profile(-5.0);
  // The O(E) arithmetic that makes roadmap reuse cheap across the sweep.
  for (auto _ : state) {
    double total = 0.0;
    for (const auto& edge : roadmap.edges) total += edge_weight(edge, profile);
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(roadmap.edges.size()));
}
BENCHMARK(BM_EdgeReweight);

void BM_Query(benchmark::State& state) {
  const Scene scene = planar_scene();
  const Roadmap roadmap = build_roadmap(scene, planar_params(200), 7);
  const Config start = {-1.8, -1.8};
  const Config goal = {1.8, 1.2};
  const CostProfile profile(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(query(scene, roadmap, start, goal, profile));
  }
}
BENCHMARK(BM_Query)->Arg(1)->Arg(-5)->Unit(benchmark::kMillisecond);

void BM_ClassifyPath(benchmark::State& state) {
  const Scene scene = planar_scene();
  const std::vector<Config> path = {{-1.8, -1.8}, {0.0, 1.5}, {1.8, 1.2}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_path(scene, path, 0.05));
  }
}
BENCHMARK(BM_ClassifyPath);

}  // namespace
