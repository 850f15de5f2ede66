#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "privplan/geometry.hpp"
#include "privplan/kinematics.hpp"
#include "privplan/rng.hpp"

namespace {

using namespace privplan;

std::vector<std::pair<Cone, std::pair<Vec3, double>>> cone_sphere_fixtures() {
  Rng rng(1);
  std::vector<std::pair<Cone, std::pair<Vec3, double>>> fixtures;
  for (int i = 0; i < 256; ++i) {
    Cone cone;
    cone.apex = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    cone.axis = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)).normalized();
    cone.half_angle = rng.uniform(0.1, 0.8);
    cone.range = rng.uniform(1.0, 3.0);
    const Vec3 center(rng.uniform(-2, 3), rng.uniform(-2, 3), rng.uniform(-2, 3));
    fixtures.push_back({cone, {center, rng.uniform(0.1, 0.6)}});
  }
  return fixtures;
}

void BM_ConeSphereIntersect(benchmark::State& state) {
  const auto fixtures = cone_sphere_fixtures();
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [cone, sphere] = fixtures[i++ & 255];
    benchmark::DoNotOptimize(cone_sphere_intersect(cone, sphere.first, sphere.second));
  }
}
BENCHMARK(BM_ConeSphereIntersect);

void BM_CapsuleBoxDistance(benchmark::State& state) {
  const auto capsule = Primitive::make_capsule(
      0.1, 1.0,
      Transform{Quat(Eigen::AngleAxisd(0.6, Vec3(1, 1, 0).normalized())), Vec3(0.9, 0.4, 0.8)});
  const auto box = Primitive::make_box(Vec3(0.5, 0.5, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(primitive_pair_distance(capsule, box));
}
BENCHMARK(BM_CapsuleBoxDistance);

void BM_CapsuleCapsuleDistance(benchmark::State& state) {
  const auto a = Primitive::make_capsule(0.2, 1.0, Transform::from_translation(Vec3(0, 0, 0)));
  const auto b = Primitive::make_capsule(
      0.15, 0.8, Transform{Quat(Eigen::AngleAxisd(1.0, Vec3::UnitX())), Vec3(0.7, 0.4, 0.2)});
  for (auto _ : state) benchmark::DoNotOptimize(primitive_pair_distance(a, b));
}
BENCHMARK(BM_CapsuleCapsuleDistance);

void BM_ForwardKinematics8Dof(benchmark::State& state) {
  RobotModel robot;
  for (int i = 0; i < 8; ++i) {
    JointSpec joint;
    joint.kind = i == 0 ? JointSpec::Kind::prismatic : JointSpec::Kind::revolute;
    joint.axis = i % 2 == 0 ? Vec3::UnitZ() : Vec3::UnitY();
    joint.origin = Transform::from_translation(Vec3(0.15, 0, 0.05));
    joint.lower = {-2.0};
    joint.upper = {2.0};
    joint.metric_weight = {1.0};
    robot.joints.push_back(joint);
  }
  robot.link_collision.assign(8, std::nullopt);
  robot.sensor.link_index = 7;
  robot.sensor.half_angle = 0.37;
  robot.sensor.range = 2.0;

  Rng rng(2);
  Config q = sample_config(robot, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_kinematics(robot, q));
  }
}
BENCHMARK(BM_ForwardKinematics8Dof);

}  // namespace
