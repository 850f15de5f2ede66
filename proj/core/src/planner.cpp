#include "privplan/planner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>
#include <thread>

#include "privplan/errors.hpp"
#include "privplan/rng.hpp"

namespace privplan {

namespace {

// Violating arc length of the single edge [a, b], classified at the
// privacy resolution.
double edge_violating_length(const Scene& scene, const Config& a, const Config& b,
                             double privacy_resolution) {
  const SegmentClassification c = classify_path(scene, {a, b}, privacy_resolution);
  return c.violating_length();
}

}  // namespace

Roadmap build_roadmap(const Scene& scene, const RoadmapParams& params, std::uint64_t seed,
                      unsigned threads) {
  if (!(params.conn_radius > 0.0)) throw std::invalid_argument("conn_radius must be > 0");
  ValidityChecker checker(scene, params.resolution);

  Roadmap roadmap;
  roadmap.params = params;
  roadmap.seed = seed;
  roadmap.scene_name = scene.name;

  // Rejection-sample the nodes sequentially from one stream so that a larger
  // n with the same seed extends the sample set instead of replacing it.
  Rng rng(seed);
  const std::uint64_t budget = 1000ULL * std::max<std::uint64_t>(params.samples, 1);
  std::uint64_t attempts = 0;
  while (roadmap.nodes.size() < params.samples) {
    if (attempts++ >= budget)
      throw SamplingError("scene appears infeasible: sampling budget exhausted after " +
                          std::to_string(attempts - 1) + " attempts");
    Config q = sample_config(scene.robot, rng);
    if (checker.is_config_valid(q)) roadmap.nodes.push_back(std::move(q));
  }

  // Candidate pairs within the connection radius, in canonical (i, j) order.
  struct Candidate {
    std::uint32_t i, j;
    double dist;
  };
  std::vector<Candidate> candidates;
  for (std::uint32_t i = 0; i < roadmap.nodes.size(); ++i)
    for (std::uint32_t j = i + 1; j < roadmap.nodes.size(); ++j) {
      const double dist = cspace_distance(scene.robot, roadmap.nodes[i], roadmap.nodes[j]);
      if (dist <= params.conn_radius) candidates.push_back({i, j, dist});
    }

  // Validate and classify candidates, possibly in parallel; results land in
  // per-candidate slots and are committed in canonical order afterwards, so
  // the edge set is independent of the thread count.
  std::vector<std::optional<double>> violating(candidates.size());
  auto work = [&](std::size_t k) {
    const auto& cand = candidates[k];
    if (checker.is_motion_valid(roadmap.nodes[cand.i], roadmap.nodes[cand.j]))
      violating[k] = edge_violating_length(scene, roadmap.nodes[cand.i], roadmap.nodes[cand.j],
                                           params.privacy_resolution);
  };
  if (threads <= 1 || candidates.size() < 2) {
    for (std::size_t k = 0; k < candidates.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(threads, std::thread::hardware_concurrency());
    for (unsigned t = 0; t < std::max(2u, count); ++t)
      pool.emplace_back([&] {
        for (std::size_t k = next.fetch_add(1); k < candidates.size(); k = next.fetch_add(1))
          work(k);
      });
    for (auto& worker : pool) worker.join();
  }

  for (std::size_t k = 0; k < candidates.size(); ++k)
    if (violating[k])
      roadmap.edges.push_back({candidates[k].i, candidates[k].j, candidates[k].dist, *violating[k]});
  return roadmap;
}

double edge_weight(const RoadmapEdge& edge, const CostProfile& profile) {
  return weighted_partition_cost(edge.violating_length, edge.clean_length(), profile);
}

namespace {

// Lexicographic comparison of the node sequence reaching `node` through
// `parent` chains against the sequence reaching `via` plus the final hop.
// Paths are materialized root-first; ties in cost are rare so the O(L) walk
// is fine.
std::vector<std::uint32_t> materialize(const std::vector<std::int64_t>& parent, std::uint32_t node) {
  std::vector<std::uint32_t> path;
  for (std::int64_t cur = node; cur >= 0; cur = parent[static_cast<std::size_t>(cur)])
    path.push_back(static_cast<std::uint32_t>(cur));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<SearchResult> shortest_path(std::size_t node_count,
                                          const std::vector<SearchEdge>& edges,
                                          std::uint32_t source, std::uint32_t target) {
  if (source >= node_count || target >= node_count)
    throw std::invalid_argument("shortest_path: node index out of range");

  struct Arc {
    std::uint32_t to;
    double weight;
  };
  std::vector<std::vector<Arc>> adjacency(node_count);
  for (const auto& edge : edges) {
    adjacency[edge.i].push_back({edge.j, edge.weight});
    adjacency[edge.j].push_back({edge.i, edge.weight});
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(node_count, kInf);
  std::vector<std::int64_t> parent(node_count, -1);
  std::vector<bool> settled(node_count, false);

  using QueueItem = std::pair<double, std::uint32_t>;
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> open;
  dist[source] = 0.0;
  open.push({0.0, source});

  while (!open.empty()) {
    const auto [cost, node] = open.top();
    open.pop();
    if (settled[node] || cost > dist[node]) continue;
    settled[node] = true;
    if (node == target) break;
    for (const auto& arc : adjacency[node]) {
      const double cand = dist[node] + arc.weight;
      if (cand < dist[arc.to]) {
        dist[arc.to] = cand;
        parent[arc.to] = node;
        open.push({cand, arc.to});
      } else if (cand == dist[arc.to] && !settled[arc.to]) {
        // Equal cost: keep the lexicographically smaller node sequence.
        auto via = materialize(parent, node);
        via.push_back(arc.to);
        const auto current = materialize(parent, arc.to);
        if (std::lexicographical_compare(via.begin(), via.end(), current.begin(), current.end())) {
          parent[arc.to] = node;
          open.push({cand, arc.to});
        }
      }
    }
  }

  if (dist[target] == kInf) return std::nullopt;
  return SearchResult{dist[target], materialize(parent, target)};
}

PathSolution query(const Scene& scene, const Roadmap& roadmap, const Config& start,
                   const Config& goal, const CostProfile& profile) {
  detail::require_dof(scene.robot, start, "query");
  detail::require_dof(scene.robot, goal, "query");
  ValidityChecker checker(scene, roadmap.params.resolution);
  if (!checker.is_config_valid(start)) throw std::invalid_argument("query: start configuration is invalid");
  if (!checker.is_config_valid(goal)) throw std::invalid_argument("query: goal configuration is invalid");

  PathSolution solution;
  solution.weight = profile.weight();

  if (start == goal) {
    solution.waypoints = {start, goal};
    return solution;  // zero length, zero cost, fraction 0 by convention
  }

  // Temporary start/goal nodes appended after the roadmap, connected with
  // the same radius and validity rules as construction.
  const auto node_count = roadmap.nodes.size() + 2;
  const auto start_index = static_cast<std::uint32_t>(roadmap.nodes.size());
  const auto goal_index = start_index + 1;

  std::vector<SearchEdge> edges;
  edges.reserve(roadmap.edges.size() + roadmap.nodes.size());
  for (const auto& edge : roadmap.edges)
    edges.push_back({edge.i, edge.j, edge_weight(edge, profile)});

  auto connect = [&](const Config& q, std::uint32_t index) {
    for (std::uint32_t k = 0; k < roadmap.nodes.size(); ++k) {
      const double dist = cspace_distance(scene.robot, q, roadmap.nodes[k]);
      if (dist > roadmap.params.conn_radius) continue;
      if (!checker.is_motion_valid(q, roadmap.nodes[k])) continue;
      const double violating =
          edge_violating_length(scene, q, roadmap.nodes[k], roadmap.params.privacy_resolution);
      RoadmapEdge annotated{k, index, dist, violating};
      edges.push_back({k, index, edge_weight(annotated, profile)});
    }
  };
  connect(start, start_index);
  connect(goal, goal_index);

  const auto result = shortest_path(node_count, edges, start_index, goal_index);
  if (!result)
    throw NoPathError("no path: start and goal are in disconnected roadmap components");

  solution.cost = result->cost;
  solution.waypoints.reserve(result->path.size());
  for (const std::uint32_t index : result->path) {
    if (index == start_index)
      solution.waypoints.push_back(start);
    else if (index == goal_index)
      solution.waypoints.push_back(goal);
    else
      solution.waypoints.push_back(roadmap.nodes[index]);
  }

  const SegmentClassification classification =
      classify_path(scene, solution.waypoints, roadmap.params.privacy_resolution);
  solution.length = classification.total_length();
  solution.violation_fraction = violation_fraction(classification);
  return solution;
}

bool operator==(const RoadmapEdge& a, const RoadmapEdge& b) {
  return a.i == b.i && a.j == b.j && a.base_length == b.base_length &&
         a.violating_length == b.violating_length;
}

bool operator==(const Roadmap& a, const Roadmap& b) {
  return a.nodes == b.nodes && a.edges == b.edges && a.seed == b.seed &&
         a.scene_name == b.scene_name && a.params.samples == b.params.samples &&
         a.params.conn_radius == b.params.conn_radius &&
         a.params.resolution == b.params.resolution &&
         a.params.privacy_resolution == b.params.privacy_resolution;
}

}  // namespace privplan
