#pragma once

#include <optional>
#include <string>
#include <vector>

#include "privplan/geometry.hpp"
#include "privplan/rng.hpp"

namespace privplan {

/// A point in the robot's d-dimensional configuration space: one scalar per
/// degree of freedom, radians for angular DOF and meters for translations.
using Config = std::vector<double>;

/// One joint of a serial chain. revolute and prismatic contribute a single
/// scalar DOF; planar_base bundles (x, y, yaw) as three scalars.
struct JointSpec {
  enum class Kind { revolute, prismatic, planar_base };

  Kind kind = Kind::revolute;
  Vec3 axis = Vec3::UnitZ();  // unit norm; unused by planar_base
  Transform origin;           // fixed transform applied before the joint motion
  std::vector<double> lower;  // per scalar DOF
  std::vector<double> upper;
  std::vector<double> metric_weight;  // per scalar DOF, > 0
  std::string name;

  std::size_t dof() const { return kind == Kind::planar_base ? 3 : 1; }
};

struct SensorMount {
  std::size_t link_index = 0;
  Transform mount;           // fixed transform from the link frame
  double half_angle = 0.0;   // radians
  double range = 0.0;        // meters
};

/// Serial kinematic chain with optional per-link collision primitives and a
/// cone sensor mounted on one link. Immutable after construction.
struct RobotModel {
  std::vector<JointSpec> joints;
  std::vector<std::optional<Primitive>> link_collision;  // one entry per joint, link frame
  SensorMount sensor;

  std::size_t dof() const;
  void validate() const;  // throws ValidationError naming the offending field
};

/// World-frame pose of every link, composed in chain order. Total over all
/// configs of the right dimension; joint limits are not enforced here.
std::vector<Transform> forward_kinematics(const RobotModel& robot, const Config& q);

/// The sensor cone posed by FK(link) composed with the mount transform. The
/// cone looks along the mount frame's +x axis.
Cone sensor_cone_at(const RobotModel& robot, const Config& q);

/// Weighted Euclidean metric sqrt(sum_i w_i^2 (a_i - b_i)^2).
double cspace_distance(const RobotModel& robot, const Config& a, const Config& b);

/// Straight-line interpolation per scalar DOF; t in [0, 1].
Config interpolate(const Config& a, const Config& b, double t);

/// Uniform sample within joint limits; deterministic given the RNG state.
Config sample_config(const RobotModel& robot, Rng& rng);

namespace detail {
void require_dof(const RobotModel& robot, const Config& q, const char* where);
}

}  // namespace privplan
