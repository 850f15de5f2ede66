#include "privplan/kinematics.hpp"

#include <cmath>

#include "privplan/errors.hpp"

namespace privplan {

std::size_t RobotModel::dof() const {
  std::size_t d = 0;
  for (const auto& joint : joints) d += joint.dof();
  return d;
}

void RobotModel::validate() const {
  if (joints.empty()) throw ValidationError("robot.joints: at least one joint required");
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const auto& joint = joints[i];
    const std::string prefix = "robot.joints[" + std::to_string(i) + "]";
    const std::size_t n = joint.dof();
    if (joint.lower.size() != n || joint.upper.size() != n)
      throw ValidationError(prefix + ".limits: expected " + std::to_string(n) + " scalar limits");
    if (joint.metric_weight.size() != n)
      throw ValidationError(prefix + ".metric_weight: expected " + std::to_string(n) + " weights");
    for (std::size_t k = 0; k < n; ++k) {
      if (!(joint.lower[k] < joint.upper[k]))
        throw ValidationError(prefix + ".limits: lower must be < upper");
      if (!(joint.metric_weight[k] > 0.0))
        throw ValidationError(prefix + ".metric_weight: must be > 0");
    }
    if (joint.kind != JointSpec::Kind::planar_base &&
        std::abs(joint.axis.norm() - 1.0) > 1e-9)
      throw ValidationError(prefix + ".axis: must be unit norm");
  }
  if (link_collision.size() != joints.size())
    throw ValidationError("robot.links: expected one (possibly null) entry per joint");
  if (sensor.link_index >= joints.size())
    throw ValidationError("robot.sensor.link: index out of range");
  if (!(sensor.half_angle > 0.0 && sensor.half_angle < M_PI / 2.0))
    throw ValidationError("robot.sensor.fov: half angle must be in (0, pi/2)");
  if (!(sensor.range > 0.0)) throw ValidationError("robot.sensor.range: must be > 0");
}

namespace detail {
void require_dof(const RobotModel& robot, const Config& q, const char* where) {
  if (q.size() != robot.dof())
    throw DimensionError(std::string(where) + ": config dimension " + std::to_string(q.size()) +
                         " does not match robot dof " + std::to_string(robot.dof()));
}
}  // namespace detail

namespace {

Transform joint_motion(const JointSpec& joint, const double* q) {
  switch (joint.kind) {
    case JointSpec::Kind::revolute:
      return Transform::from_axis_angle(joint.axis, q[0]);
    case JointSpec::Kind::prismatic:
      return Transform::from_translation(joint.axis * q[0]);
    case JointSpec::Kind::planar_base: {
      Transform t = Transform::from_translation(Vec3(q[0], q[1], 0.0));
      return compose(t, Transform::from_axis_angle(Vec3::UnitZ(), q[2]));
    }
  }
  throw std::logic_error("unhandled joint kind");
}

}  // namespace

std::vector<Transform> forward_kinematics(const RobotModel& robot, const Config& q) {
  detail::require_dof(robot, q, "forward_kinematics");
  std::vector<Transform> links;
  links.reserve(robot.joints.size());
  Transform world = Transform::identity();
  std::size_t offset = 0;
  for (const auto& joint : robot.joints) {
    world = compose(world, compose(joint.origin, joint_motion(joint, q.data() + offset)));
    links.push_back(world);
    offset += joint.dof();
  }
  return links;
}

Cone sensor_cone_at(const RobotModel& robot, const Config& q) {
  const auto links = forward_kinematics(robot, q);
  const Transform frame = compose(links[robot.sensor.link_index], robot.sensor.mount);
  Cone cone;
  cone.apex = frame.translation;
  cone.axis = frame.rotation * Vec3::UnitX();
  cone.half_angle = robot.sensor.half_angle;
  cone.range = robot.sensor.range;
  return cone;
}

double cspace_distance(const RobotModel& robot, const Config& a, const Config& b) {
  detail::require_dof(robot, a, "cspace_distance");
  detail::require_dof(robot, b, "cspace_distance");
  double sum = 0.0;
  std::size_t offset = 0;
  for (const auto& joint : robot.joints) {
    for (std::size_t k = 0; k < joint.dof(); ++k, ++offset) {
      const double d = joint.metric_weight[k] * (a[offset] - b[offset]);
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

Config interpolate(const Config& a, const Config& b, double t) {
  if (a.size() != b.size()) throw DimensionError("interpolate: config dimensions differ");
  if (t < 0.0 || t > 1.0)
    throw std::invalid_argument("interpolate: t must be in [0, 1]");
  Config out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

Config sample_config(const RobotModel& robot, Rng& rng) {
  Config q;
  q.reserve(robot.dof());
  for (const auto& joint : robot.joints)
    for (std::size_t k = 0; k < joint.dof(); ++k)
      q.push_back(rng.uniform(joint.lower[k], joint.upper[k]));
  return q;
}

}  // namespace privplan
