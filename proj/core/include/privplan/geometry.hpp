#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace privplan {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

/// Rigid-body pose: rotation (unit quaternion) then translation, meters.
struct Transform {
  Quat rotation = Quat::Identity();
  Vec3 translation = Vec3::Zero();

  static Transform identity() { return {}; }

  static Transform from_translation(const Vec3& t) { return {Quat::Identity(), t}; }

  static Transform from_axis_angle(const Vec3& axis, double angle) {
    return {Quat(Eigen::AngleAxisd(angle, axis.normalized())), Vec3::Zero()};
  }
};

/// Composition a∘b: applies b first, then a.
Transform compose(const Transform& a, const Transform& b);

Transform inverse(const Transform& t);

/// Rigid motion of a point; preserves pairwise distances.
Vec3 transform_point(const Transform& t, const Vec3& p);

/// Collision shape in one of three kinds. Dimensions are meters and must be
/// positive. Capsule segments run along the local z axis; half_length is the
/// distance from the center to each hemisphere center.
struct Primitive {
  enum class Kind { sphere, capsule, box };

  Kind kind = Kind::sphere;
  double radius = 0.0;         // sphere, capsule
  double half_length = 0.0;    // capsule
  Vec3 half_extents = Vec3::Zero();  // box
  Transform pose;

  static Primitive make_sphere(double radius, const Transform& pose = {});
  static Primitive make_capsule(double radius, double segment_length, const Transform& pose = {});
  static Primitive make_box(const Vec3& half_extents, const Transform& pose = {});
};

/// Finite camera visibility volume: a solid cone of the given half-angle
/// truncated by the flat disk at `range` along the axis. Apex, lateral
/// surface and cap all count as inside (closed set).
struct Cone {
  Vec3 apex = Vec3::Zero();
  Vec3 axis = Vec3::UnitX();  // unit norm
  double half_angle = 0.0;    // radians, in (0, pi/2)
  double range = 0.0;         // meters, > 0
};

/// Pose a cone: apex moves rigidly, axis rotates.
Cone transform_cone(const Transform& t, const Cone& cone);

/// Euclidean distance from a point to the closed truncated cone volume;
/// zero inside.
double cone_point_distance(const Cone& cone, const Vec3& p);

/// True iff the closed ball intersects the closed finite cone volume.
/// Boundary contact within 1e-9 m resolves to intersecting.
bool cone_sphere_intersect(const Cone& cone, const Vec3& center, double radius);

/// Separation distance between two primitives; <= 0 on contact or
/// penetration. Symmetric in its arguments. For sphere/capsule pairs the
/// overlap value is the exact (negative) penetration of the padded cores;
/// for deep box overlaps it is the minimum-translation estimate.
double primitive_pair_distance(const Primitive& a, const Primitive& b);

// Lower-level queries shared with the validity checker and tests.
double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);
double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2);

/// Distance from a point to a solid box; negative inside (depth to the
/// nearest face).
double point_box_signed_distance(const Vec3& p, const Vec3& half_extents, const Transform& box_pose);

/// Distance from a segment to a solid box; zero when the segment enters it.
double segment_box_distance(const Vec3& a, const Vec3& b, const Vec3& half_extents, const Transform& box_pose);

}  // namespace privplan
