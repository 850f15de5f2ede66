#pragma once

#include "privplan/scene.hpp"

namespace privplan {

/// The feasibility function: joint limits plus collision checks of posed
/// link primitives against scene obstacles. Privacy spheres are not
/// obstacles. Pure reads over the immutable scene; thread-safe.
class ValidityChecker {
public:
  /// resolution is the motion-check spacing (C-space units, > 0).
  ValidityChecker(const Scene& scene, double resolution);

  /// True iff q is within joint limits and every posed link primitive keeps
  /// strictly positive distance to every obstacle.
  bool is_config_valid(const Config& q) const;

  /// Discretized straight-line check: every interpolated config at spacing
  /// <= resolution along [a, b], endpoints included, is valid.
  bool is_motion_valid(const Config& a, const Config& b) const;

  double resolution() const { return resolution_; }
  const Scene& scene() const { return scene_; }

private:
  bool within_limits(const Config& q) const;

  const Scene& scene_;
  double resolution_;
};

}  // namespace privplan
