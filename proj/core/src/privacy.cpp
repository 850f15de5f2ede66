#include "privplan/privacy.hpp"

#include <cmath>
#include <stdexcept>

#include "privplan/errors.hpp"

namespace privplan {

CostProfile::CostProfile(double weight) : weight_(weight) {
  if (!(std::abs(weight) >= 1.0) || !std::isfinite(weight))
    throw ValidationError("weight magnitude must be >= 1");
}

CostProfile::Mode CostProfile::mode() const {
  if (weight_ > 1.0) return Mode::preserving;
  if (weight_ < -1.0) return Mode::violating;
  return Mode::agnostic;  // |w| == 1
}

double SegmentClassification::total_length() const {
  double sum = 0.0;
  for (const auto& seg : subsegments) sum += seg.length;
  return sum;
}

double SegmentClassification::violating_length() const {
  double sum = 0.0;
  for (const auto& seg : subsegments)
    if (seg.violating) sum += seg.length;
  return sum;
}

bool privacy_violated(const Scene& scene, const Config& q) {
  detail::require_dof(scene.robot, q, "privacy_violated");
  if (scene.privacy_regions.empty()) return false;
  const Cone cone = sensor_cone_at(scene.robot, q);
  for (const auto& region : scene.privacy_regions)
    if (cone_sphere_intersect(cone, region.center, region.radius)) return true;
  return false;
}

SegmentClassification classify_path(const Scene& scene, const std::vector<Config>& path,
                                    double resolution) {
  if (path.size() < 2) throw std::invalid_argument("classify_path: path too short");
  if (!(resolution > 0.0)) throw std::invalid_argument("classify_path: resolution must be > 0");

  SegmentClassification out;
  for (std::size_t e = 0; e + 1 < path.size(); ++e) {
    const Config& a = path[e];
    const Config& b = path[e + 1];
    const double length = cspace_distance(scene.robot, a, b);
    if (length == 0.0) continue;
    const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / resolution)));
    const double piece_length = length / static_cast<double>(pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
      const double t_mid = (static_cast<double>(k) + 0.5) / static_cast<double>(pieces);
      out.subsegments.push_back(
          {piece_length, privacy_violated(scene, interpolate(a, b, t_mid))});
    }
  }
  return out;
}

double weighted_partition_cost(double violating_length, double clean_length,
                               const CostProfile& profile) {
  const double w = std::abs(profile.weight());
  switch (profile.mode()) {
    case CostProfile::Mode::agnostic:
      return violating_length + clean_length;
    case CostProfile::Mode::preserving:
      return w * violating_length + clean_length / w;
    case CostProfile::Mode::violating:
      return violating_length / w + w * clean_length;
  }
  throw std::logic_error("unhandled profile mode");
}

double privacy_cost(const SegmentClassification& classification, const CostProfile& profile) {
  double sum = 0.0;
  for (const auto& seg : classification.subsegments)
    sum += weighted_partition_cost(seg.violating ? seg.length : 0.0,
                                   seg.violating ? 0.0 : seg.length, profile);
  return sum;
}

double violation_fraction(const SegmentClassification& classification) {
  const double total = classification.total_length();
  if (total == 0.0) return 0.0;
  return classification.violating_length() / total;
}

}  // namespace privplan
