#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "privplan/privacy.hpp"
#include "privplan/scene.hpp"
#include "privplan/validity.hpp"

namespace privplan {

/// Undirected roadmap edge with its cached privacy partition. The partition
/// is computed once at build time; every cost profile is then a constant-time
/// re-weighting of (violating, clean) arc lengths.
struct RoadmapEdge {
  std::uint32_t i = 0;  // i < j
  std::uint32_t j = 0;
  double base_length = 0.0;
  double violating_length = 0.0;

  double clean_length() const { return base_length - violating_length; }
};

/// Radius-connected probabilistic roadmap over valid configurations.
/// Construction is deterministic given the seed: extending the sample count
/// with the same seed reproduces the original nodes as a prefix and only
/// adds edges.
struct Roadmap {
  std::vector<Config> nodes;
  std::vector<RoadmapEdge> edges;  // sorted by (i, j); no self-loops or duplicates
  RoadmapParams params;
  std::uint64_t seed = 0;
  std::string scene_name;
};

/// A solved query: the waypoint polyline with the metrics the experiments
/// report. length and violation_fraction are recomputed on the final
/// polyline, not read from edge caches.
struct PathSolution {
  std::vector<Config> waypoints;  // front() = start, back() = goal
  double cost = 0.0;              // total edge weight under the query profile
  double length = 0.0;            // weighted C-space arc length
  double violation_fraction = 0.0;
  double weight = 1.0;            // profile used
};

/// Sample n valid configurations (rejection sampling, budget 1000*n
/// attempts) and connect every pair within conn_radius whose straight-line
/// motion is valid. Edge validation may run on several threads; the node
/// order and edge set are identical to sequential execution for a given
/// seed. Throws SamplingError("scene appears infeasible") on budget
/// exhaustion.
Roadmap build_roadmap(const Scene& scene, const RoadmapParams& params, std::uint64_t seed,
                      unsigned threads = 1);

/// Profile weight of one edge from its cached partition.
double edge_weight(const RoadmapEdge& edge, const CostProfile& profile);

/// Connect start and goal to the roadmap (same radius and validity rules as
/// construction) and return the minimum-total-edge-weight path under the
/// profile. Ties are broken toward the lexicographically smallest node-index
/// sequence. Throws NoPathError when the components are disconnected.
PathSolution query(const Scene& scene, const Roadmap& roadmap, const Config& start,
                   const Config& goal, const CostProfile& profile);

/// Search core shared by query and the oracle tests: uniform-cost search
/// over an explicit undirected graph with per-edge weights, deterministic
/// lexicographic tie-breaking. Returns nullopt when unreachable.
struct SearchEdge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double weight = 0.0;  // > 0
};
struct SearchResult {
  double cost = 0.0;
  std::vector<std::uint32_t> path;  // node indices, source first
};
std::optional<SearchResult> shortest_path(std::size_t node_count,
                                          const std::vector<SearchEdge>& edges,
                                          std::uint32_t source, std::uint32_t target);

/// Lossless roadmap persistence (JSON container with format_version and a
/// content checksum; see docs/roadmap-format.md).
void save_roadmap(const Roadmap& roadmap, const std::filesystem::path& path);
Roadmap load_roadmap(const std::filesystem::path& path);

bool operator==(const RoadmapEdge& a, const RoadmapEdge& b);
bool operator==(const Roadmap& a, const Roadmap& b);

}  // namespace privplan
