#include "privplan/validity.hpp"

#include <cmath>
#include <stdexcept>

#include "privplan/errors.hpp"

namespace privplan {

ValidityChecker::ValidityChecker(const Scene& scene, double resolution)
    : scene_(scene), resolution_(resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("motion-check resolution must be > 0");
}

bool ValidityChecker::within_limits(const Config& q) const {
  std::size_t offset = 0;
  for (const auto& joint : scene_.robot.joints) {
    for (std::size_t k = 0; k < joint.dof(); ++k, ++offset)
      if (q[offset] < joint.lower[k] || q[offset] > joint.upper[k]) return false;
  }
  return true;
}

bool ValidityChecker::is_config_valid(const Config& q) const {
  detail::require_dof(scene_.robot, q, "is_config_valid");
  if (!within_limits(q)) return false;
  if (scene_.obstacles.empty()) return true;

  const auto links = forward_kinematics(scene_.robot, q);
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& link = scene_.robot.link_collision[i];
    if (!link) continue;
    Primitive posed = *link;
    posed.pose = compose(links[i], link->pose);
    for (const auto& obstacle : scene_.obstacles)
      if (primitive_pair_distance(posed, obstacle) <= 0.0) return false;
  }
  return true;
}

bool ValidityChecker::is_motion_valid(const Config& a, const Config& b) const {
  detail::require_dof(scene_.robot, a, "is_motion_valid");
  detail::require_dof(scene_.robot, b, "is_motion_valid");
  const double dist = cspace_distance(scene_.robot, a, b);
  // Uniform subdivision with ceil(dist/resolution) intervals, endpoints
  // included; a == b degenerates to the single-point check.
  const std::size_t intervals = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(dist / resolution_)));
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(intervals);
    if (!is_config_valid(interpolate(a, b, t))) return false;
  }
  return true;
}

}  // namespace privplan
