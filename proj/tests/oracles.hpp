// Test-only oracles, kept independent of the library code paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "privplan/geometry.hpp"
#include "privplan/planner.hpp"
#include "privplan/rng.hpp"

namespace oracles {

using privplan::Cone;
using privplan::Rng;
using privplan::Vec3;

// Analytic membership in the closed truncated cone; shares no code with
// cone_point_distance.
inline bool point_in_cone(const Cone& cone, const Vec3& p) {
  const Vec3 rel = p - cone.apex;
  const double h = rel.dot(cone.axis);
  if (h < 0.0 || h > cone.range) return false;
  const double s = (rel - h * cone.axis).norm();
  return s <= h * std::tan(cone.half_angle);
}

inline Vec3 sample_in_ball(const Vec3& center, double radius, Rng& rng) {
  while (true) {
    const Vec3 p(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    if (p.squaredNorm() <= 1.0) return center + radius * p;
  }
}

// Monte Carlo membership oracle: does any of `samples` points drawn
// uniformly from the ball land inside the cone?
inline bool mc_ball_intersects_cone(const Cone& cone, const Vec3& center, double radius,
                                    std::size_t samples, Rng& rng) {
  for (std::size_t i = 0; i < samples; ++i)
    if (point_in_cone(cone, sample_in_ball(center, radius, rng))) return true;
  return false;
}

// Independent point-to-solid-box distance (box local frame).
inline double point_box_gap(const Vec3& p, const Vec3& half_extents,
                            const privplan::Transform& pose) {
  const Vec3 local = privplan::transform_point(privplan::inverse(pose), p);
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double over = std::abs(local[k]) - half_extents[k];
    if (over > 0.0) sum += over * over;
  }
  return std::sqrt(sum);
}

// Dense point-sampling distance between a capsule and a box: sample the
// capsule axis segment and take the min point-box gap, minus the radius.
inline double sampled_capsule_box_distance(const privplan::Primitive& capsule,
                                           const privplan::Primitive& box,
                                           std::size_t samples) {
  const Vec3 top = privplan::transform_point(capsule.pose, Vec3(0, 0, capsule.half_length));
  const Vec3 bottom = privplan::transform_point(capsule.pose, Vec3(0, 0, -capsule.half_length));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples);
    best = std::min(best, point_box_gap(top + t * (bottom - top), box.half_extents, box.pose));
  }
  return best - capsule.radius;
}

// Exhaustive simple-path enumeration with the same tie rule the planner
// promises: minimum cost first, lexicographically smallest node sequence
// among exact-equal costs. Edge weights are accumulated in path order.
inline std::optional<privplan::SearchResult> enumerate_shortest_path(
    std::size_t node_count, const std::vector<privplan::SearchEdge>& edges, std::uint32_t source,
    std::uint32_t target) {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency(node_count);
  for (const auto& edge : edges) {
    adjacency[edge.i].push_back({edge.j, edge.weight});
    adjacency[edge.j].push_back({edge.i, edge.weight});
  }

  std::optional<privplan::SearchResult> best;
  std::vector<std::uint32_t> path{source};
  std::vector<bool> visited(node_count, false);
  visited[source] = true;

  auto consider = [&](double cost) {
    if (!best || cost < best->cost ||
        (cost == best->cost &&
         std::lexicographical_compare(path.begin(), path.end(), best->path.begin(),
                                      best->path.end())))
      best = privplan::SearchResult{cost, path};
  };

  std::function<void(std::uint32_t, double)> dfs = [&](std::uint32_t node, double cost) {
    if (node == target) {
      consider(cost);
      return;
    }
    for (const auto& [next, weight] : adjacency[node]) {
      if (visited[next]) continue;
      visited[next] = true;
      path.push_back(next);
      dfs(next, cost + weight);
      path.pop_back();
      visited[next] = false;
    }
  };
  dfs(source, 0.0);
  return best;
}

// Seeded random fixtures shared by the property suites and the acceptance
// criteria.

inline Vec3 random_unit(Rng& rng) {
  while (true) {
    const Vec3 v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0) return v / n;
  }
}

inline privplan::Transform random_transform(Rng& rng) {
  privplan::Transform t;
  t.rotation = privplan::Quat(
      Eigen::AngleAxisd(rng.uniform(0.0, 2.0 * M_PI), random_unit(rng)));
  t.translation = Vec3(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
  return t;
}

struct ConeSpherePair {
  Cone cone;
  Vec3 center;
  double radius;
};

inline ConeSpherePair random_cone_sphere_pair(Rng& rng) {
  ConeSpherePair pair;
  pair.cone.apex = Vec3(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  pair.cone.axis = random_unit(rng);
  pair.cone.half_angle = rng.uniform(5.0, 80.0) * M_PI / 180.0;
  pair.cone.range = rng.uniform(0.5, 3.0);
  // Centers biased around the cone volume so hits and misses both occur.
  pair.center = pair.cone.apex + rng.uniform(-0.5, 1.3) * pair.cone.range * pair.cone.axis +
                rng.uniform(0.0, 1.5) * random_unit(rng);
  pair.radius = rng.uniform(0.05, 0.8);
  return pair;
}

// Camera-like pair distribution for the acceptance agreement run: half
// angles and sphere radii in the regime the sensing model uses, centers in
// front of the apex plane. Narrow-apex sliver contacts behind the apex are
// exactly the cases a volume-sampling oracle cannot certify.
inline ConeSpherePair random_camera_pair(Rng& rng) {
  ConeSpherePair pair;
  pair.cone.apex = Vec3(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  pair.cone.axis = random_unit(rng);
  pair.cone.half_angle = rng.uniform(10.0, 45.0) * M_PI / 180.0;
  pair.cone.range = rng.uniform(1.0, 3.0);
  const double along = rng.uniform(0.0, 1.25) * pair.cone.range;
  Vec3 side = random_unit(rng);
  side -= side.dot(pair.cone.axis) * pair.cone.axis;
  if (side.norm() < 1e-6) side = Vec3::UnitX() - pair.cone.axis.x() * pair.cone.axis;
  side.normalize();
  pair.center = pair.cone.apex + along * pair.cone.axis +
                rng.uniform(0.0, 0.7 * (along + 0.3)) * side;
  pair.radius = rng.uniform(0.2, 0.5);
  return pair;
}

}  // namespace oracles
