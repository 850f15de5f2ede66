#pragma once

#include <vector>

#include "privplan/scene.hpp"

namespace privplan {

/// Privacy weight profile. |w| >= 1 always: w = 1 (or -1) behaves as the
/// plain path-length cost, w > 1 penalizes violating arc length, w < -1
/// rewards it. Magnitudes below 1 are rejected at construction rather than
/// clamped.
class CostProfile {
public:
  enum class Mode { agnostic, preserving, violating };

  explicit CostProfile(double weight);

  double weight() const { return weight_; }
  Mode mode() const;

private:
  double weight_;
};

/// Arc-length partition of a discretized path: per subsegment, its C-space
/// length and whether the sensor cone intersects any privacy region at the
/// subsegment midpoint.
struct SegmentClassification {
  struct Subsegment {
    double length = 0.0;  // > 0
    bool violating = false;
  };

  std::vector<Subsegment> subsegments;

  double total_length() const;
  double violating_length() const;
};

/// True iff the posed sensor cone intersects ANY privacy sphere in the
/// scene; the empty-region scene never violates.
bool privacy_violated(const Scene& scene, const Config& q);

/// Subdivide every waypoint edge at spacing <= resolution and label each
/// subsegment by privacy_violated at its midpoint. Requires >= 2 waypoints;
/// zero-length edges contribute no subsegments.
SegmentClassification classify_path(const Scene& scene, const std::vector<Config>& path,
                                    double resolution);

/// Weighted path cost per the profile: agnostic profiles return the plain
/// arc length; preserving profiles (w > 1) charge w * length on violating
/// subsegments and length / w elsewhere; violating profiles (w < -1) charge
/// length / |w| on violating subsegments and |w| * length elsewhere.
double privacy_cost(const SegmentClassification& classification, const CostProfile& profile);

/// Arc-length fraction of the path spent violating; 0 for zero-length paths.
double violation_fraction(const SegmentClassification& classification);

/// The same weighting applied to a precomputed (violating, clean) length
/// partition; shared with the planner's edge re-weighting.
double weighted_partition_cost(double violating_length, double clean_length,
                               const CostProfile& profile);

}  // namespace privplan
