#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "privplan/geometry.hpp"
#include "privplan/kinematics.hpp"

namespace privplan {

/// Workspace sphere whose observation by the sensor cone constitutes a
/// privacy interaction. Not a collision obstacle.
struct PrivacyRegion {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

/// Immutable world description: collision obstacles, privacy spheres, and
/// the robot that moves through them.
struct Scene {
  std::string name;
  RobotModel robot;
  std::vector<Primitive> obstacles;
  std::vector<PrivacyRegion> privacy_regions;

  void validate() const;
};

/// Roadmap construction knobs carried by scenario files as defaults.
struct RoadmapParams {
  std::size_t samples = 500;        // node count n
  double conn_radius = 2.0;         // connection radius, C-space units
  double resolution = 0.05;         // motion-check spacing (delta)
  double privacy_resolution = 0.05; // classification spacing (delta_p)
};

/// A scene plus the experiment defaults that make it a runnable benchmark:
/// start/goal sampling rule, roadmap parameters, and the weight sweep.
struct ScenarioBundle {
  Scene scene;
  RoadmapParams defaults;
  std::vector<double> weights;              // nonempty, contains w = 1
  std::string query_sampling = "rejection_uniform";
};

/// Parse and fully validate a scene document (UTF-8 JSON, see
/// docs/scene-format.md). Angles are degrees in files, radians in memory.
/// Throws ParseError on malformed syntax, ValidationError naming the
/// offending field otherwise.
Scene load_scene(const std::string& text);
Scene load_scene_file(const std::filesystem::path& path);

/// Serialize a scene to a JSON document that load_scene round-trips
/// field-for-field (radians and quaternions, lossless doubles).
std::string serialize_scene(const Scene& scene);

/// Parse a scenario document: a scene file whose meta block carries the
/// experiment defaults.
ScenarioBundle load_scenario(const std::string& text);
ScenarioBundle load_scenario_file(const std::filesystem::path& path);

enum class BuiltinScenario { manip_1, manip_3, nav_9 };

/// The bundled benchmark scenarios. Loaded from the scenario data directory
/// (source tree in a build, share/privplan/scenarios when installed) so
/// layouts can be tuned without rebuilding.
ScenarioBundle builtin_scenario(BuiltinScenario which);
ScenarioBundle builtin_scenario(const std::string& name);

const char* to_string(BuiltinScenario which);

// Field-for-field equality, used by round-trip checks.
bool operator==(const Transform& a, const Transform& b);
bool operator==(const Primitive& a, const Primitive& b);
bool operator==(const PrivacyRegion& a, const PrivacyRegion& b);
bool operator==(const JointSpec& a, const JointSpec& b);
bool operator==(const SensorMount& a, const SensorMount& b);
bool operator==(const RobotModel& a, const RobotModel& b);
bool operator==(const Scene& a, const Scene& b);

}  // namespace privplan
