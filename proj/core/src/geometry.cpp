#include "privplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace privplan {

namespace {

constexpr double kGrazingTol = 1e-9;

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

// 2D point-segment distance, used by the cone test in (height, radial) space.
double point_segment_distance_2d(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                                 const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? clamp01((p - a).dot(ab) / len2) : 0.0;
  return (p - (a + t * ab)).norm();
}

// Sign of the 2D cross product; > 0 means p lies left of a->b.
double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& p) {
  return (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
}

}  // namespace

Transform compose(const Transform& a, const Transform& b) {
  Transform out;
  out.rotation = (a.rotation * b.rotation).normalized();
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

Transform inverse(const Transform& t) {
  Transform out;
  out.rotation = t.rotation.conjugate();
  out.translation = -(out.rotation * t.translation);
  return out;
}

Vec3 transform_point(const Transform& t, const Vec3& p) {
  return t.rotation * p + t.translation;
}

Primitive Primitive::make_sphere(double radius, const Transform& pose) {
  if (radius <= 0.0) throw std::invalid_argument("sphere radius must be > 0");
  Primitive prim;
  prim.kind = Kind::sphere;
  prim.radius = radius;
  prim.pose = pose;
  return prim;
}

Primitive Primitive::make_capsule(double radius, double segment_length, const Transform& pose) {
  if (radius <= 0.0) throw std::invalid_argument("capsule radius must be > 0");
  if (segment_length <= 0.0) throw std::invalid_argument("capsule segment length must be > 0");
  Primitive prim;
  prim.kind = Kind::capsule;
  prim.radius = radius;
  prim.half_length = 0.5 * segment_length;
  prim.pose = pose;
  return prim;
}

Primitive Primitive::make_box(const Vec3& half_extents, const Transform& pose) {
  if ((half_extents.array() <= 0.0).any())
    throw std::invalid_argument("box half extents must be > 0");
  Primitive prim;
  prim.kind = Kind::box;
  prim.half_extents = half_extents;
  prim.pose = pose;
  return prim;
}

Cone transform_cone(const Transform& t, const Cone& cone) {
  Cone out = cone;
  out.apex = transform_point(t, cone.apex);
  out.axis = t.rotation * cone.axis;
  return out;
}

double cone_point_distance(const Cone& cone, const Vec3& p) {
  // Reduce to 2D in the (height along axis, radial offset) half-plane. The
  // solid of revolution of the triangle
  //   (0,0) -- (range, range*tan(half_angle)) -- (range, 0)
  // about the axis is exactly the truncated cone, and the nearest point of a
  // surface of revolution lies in the query point's own azimuthal half-plane.
  const Vec3 rel = p - cone.apex;
  const double h = rel.dot(cone.axis);
  const double s = (rel - h * cone.axis).norm();
  const Eigen::Vector2d q(h, s);

  const Eigen::Vector2d apex(0.0, 0.0);
  const Eigen::Vector2d rim(cone.range, cone.range * std::tan(cone.half_angle));
  const Eigen::Vector2d cap_center(cone.range, 0.0);

  // Inside test: below the lateral edge, left of the cap, radial >= 0.
  if (h >= 0.0 && h <= cone.range && cross2(apex, rim, q) <= 0.0) return 0.0;

  const double d_lateral = point_segment_distance_2d(q, apex, rim);
  const double d_cap = point_segment_distance_2d(q, rim, cap_center);
  return std::min(d_lateral, d_cap);
}

bool cone_sphere_intersect(const Cone& cone, const Vec3& center, double radius) {
  return cone_point_distance(cone, center) <= radius + kGrazingTol;
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? clamp01((p - a).dot(ab) / len2) : 0.0;
  return (p - (a + t * ab)).norm();
}

double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  // Closest points between segments, Ericson "Real-Time Collision Detection".
  const Vec3 d1 = q1 - p1;
  const Vec3 d2 = q2 - p2;
  const Vec3 r = p1 - p2;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);

  double s = 0.0;
  double t = 0.0;
  constexpr double kEps = 1e-14;

  if (a <= kEps && e <= kEps) {
    return r.norm();
  }
  if (a <= kEps) {
    t = clamp01(f / e);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = clamp01(-c / a);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > kEps ? clamp01((b * f - c * e) / denom) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = clamp01(-c / a);
      } else if (t > 1.0) {
        t = 1.0;
        s = clamp01((b - c) / a);
      }
    }
  }
  const Vec3 c1 = p1 + s * d1;
  const Vec3 c2 = p2 + t * d2;
  return (c1 - c2).norm();
}

double point_box_signed_distance(const Vec3& p, const Vec3& half_extents, const Transform& box_pose) {
  const Vec3 local = transform_point(inverse(box_pose), p);
  const Vec3 d = local.cwiseAbs() - half_extents;
  const Vec3 outside = d.cwiseMax(0.0);
  const double inside = std::min(0.0, d.maxCoeff());
  return outside.norm() + inside;
}

namespace {

double point_box_distance(const Vec3& p, const Vec3& half_extents, const Transform& box_pose) {
  return std::max(0.0, point_box_signed_distance(p, half_extents, box_pose));
}

}  // namespace

double segment_box_distance(const Vec3& a, const Vec3& b, const Vec3& half_extents, const Transform& box_pose) {
  // Distance from a point to a convex solid is convex along a line, so a
  // golden-section search over the segment parameter converges to the
  // global minimum.
  auto f = [&](double t) { return point_box_distance(a + t * (b - a), half_extents, box_pose); };

  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 120 && (hi - lo) > 1e-13; ++iter) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f(lo), f1, f2, f(hi)});
}

namespace {

struct SegmentWorld {
  Vec3 a;
  Vec3 b;
};

SegmentWorld capsule_segment(const Primitive& capsule) {
  const Vec3 ez = Vec3::UnitZ() * capsule.half_length;
  return {transform_point(capsule.pose, ez), transform_point(capsule.pose, -ez)};
}

double sphere_sphere(const Primitive& a, const Primitive& b) {
  return (a.pose.translation - b.pose.translation).norm() - a.radius - b.radius;
}

double sphere_capsule(const Primitive& sphere, const Primitive& capsule) {
  const auto seg = capsule_segment(capsule);
  return point_segment_distance(sphere.pose.translation, seg.a, seg.b) - sphere.radius -
         capsule.radius;
}

double sphere_box(const Primitive& sphere, const Primitive& box) {
  return point_box_signed_distance(sphere.pose.translation, box.half_extents, box.pose) -
         sphere.radius;
}

double capsule_capsule(const Primitive& a, const Primitive& b) {
  const auto sa = capsule_segment(a);
  const auto sb = capsule_segment(b);
  return segment_segment_distance(sa.a, sa.b, sb.a, sb.b) - a.radius - b.radius;
}

double capsule_box(const Primitive& capsule, const Primitive& box) {
  const auto seg = capsule_segment(capsule);
  const double seg_dist = segment_box_distance(seg.a, seg.b, box.half_extents, box.pose);
  if (seg_dist > 0.0) return seg_dist - capsule.radius;
  // Segment enters the box; report penetration via the deeper endpoint or
  // midpoint sample so the sign is robustly negative.
  const double mid = point_box_signed_distance(0.5 * (seg.a + seg.b), box.half_extents, box.pose);
  const double ea = point_box_signed_distance(seg.a, box.half_extents, box.pose);
  const double eb = point_box_signed_distance(seg.b, box.half_extents, box.pose);
  return std::min({mid, ea, eb, 0.0}) - capsule.radius;
}

// Oriented box-box: SAT over the 15 candidate axes decides overlap and gives
// the minimum-translation depth; separated pairs get the Euclidean gap from
// alternating projection between the two solids.
double box_box(const Primitive& a, const Primitive& b) {
  const Eigen::Matrix3d ra = a.pose.rotation.toRotationMatrix();
  const Eigen::Matrix3d rb = b.pose.rotation.toRotationMatrix();
  const Vec3 t = b.pose.translation - a.pose.translation;

  double min_overlap = std::numeric_limits<double>::infinity();
  bool separated = false;

  auto test_axis = [&](Vec3 axis) {
    const double len = axis.norm();
    if (len < 1e-12) return;  // near-parallel edge cross product
    axis /= len;
    const double ta = (ra.transpose() * axis).cwiseAbs().dot(a.half_extents);
    const double tb = (rb.transpose() * axis).cwiseAbs().dot(b.half_extents);
    const double dist = std::abs(t.dot(axis));
    const double overlap = ta + tb - dist;
    if (overlap < 0.0) {
      separated = true;
    } else {
      min_overlap = std::min(min_overlap, overlap);
    }
  };

  for (int i = 0; i < 3 && !separated; ++i) test_axis(ra.col(i));
  for (int i = 0; i < 3 && !separated; ++i) test_axis(rb.col(i));
  for (int i = 0; i < 3 && !separated; ++i)
    for (int j = 0; j < 3 && !separated; ++j) test_axis(ra.col(i).cross(rb.col(j)));

  if (!separated) return -min_overlap;

  // Alternating projection between the two convex solids for the gap.
  auto project = [](const Vec3& p, const Primitive& box) {
    const Vec3 local = transform_point(inverse(box.pose), p);
    const Vec3 clamped = local.cwiseMax(-box.half_extents).cwiseMin(box.half_extents);
    return transform_point(box.pose, clamped);
  };
  Vec3 x = a.pose.translation;
  Vec3 y = b.pose.translation;
  double prev = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    x = project(y, a);
    y = project(x, b);
    const double d = (x - y).norm();
    if (prev - d < 1e-12) break;
    prev = d;
  }
  return (x - y).norm();
}

}  // namespace

double primitive_pair_distance(const Primitive& a, const Primitive& b) {
  using Kind = Primitive::Kind;
  switch (a.kind) {
    case Kind::sphere:
      switch (b.kind) {
        case Kind::sphere: return sphere_sphere(a, b);
        case Kind::capsule: return sphere_capsule(a, b);
        case Kind::box: return sphere_box(a, b);
      }
      break;
    case Kind::capsule:
      switch (b.kind) {
        case Kind::sphere: return sphere_capsule(b, a);
        case Kind::capsule: return capsule_capsule(a, b);
        case Kind::box: return capsule_box(a, b);
      }
      break;
    case Kind::box:
      switch (b.kind) {
        case Kind::sphere: return sphere_box(b, a);
        case Kind::capsule: return capsule_box(b, a);
        case Kind::box: return box_box(a, b);
      }
      break;
  }
  throw std::logic_error("unhandled primitive pair");
}

}  // namespace privplan
