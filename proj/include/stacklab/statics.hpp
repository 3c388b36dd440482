#pragma once

// Static stability of a tower by the center-of-mass support criterion: at
// every interface, the combined center of mass of all bodies above must
// project inside that interface's support region.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stacklab/scene.hpp"

namespace stacklab {

template <typename Scalar>
struct InterfaceMargin {
  int interface_index = 0;  ///< 0 = ground contact, k = body k-1 under body k
  Scalar margin = 0;        ///< > 0 strictly inside, < 0 outside
};

template <typename Scalar>
struct BasicStabilityReport {
  bool stable = true;
  std::vector<InterfaceMargin<Scalar>> margins;
  std::optional<int> first_violation;
  Scalar min_margin = std::numeric_limits<Scalar>::infinity();
};

using StabilityReport = BasicStabilityReport<double>;

/// Signed distance from a projected point to the region boundary, minimized
/// over the meaningful horizontal axes.
template <typename Scalar>
Scalar signed_margin(const SupportRegion<Scalar>& region, const Vec3<Scalar>& point) {
  Scalar margin = std::numeric_limits<Scalar>::infinity();
  for (int axis = 0; axis < horizontal_axes(region.dim); ++axis) {
    margin = std::min({margin, point(axis) - region.lo(axis), region.hi(axis) - point(axis)});
  }
  return margin;
}

namespace detail {

template <typename Scalar>
void require_valid(const BasicScene<Scalar>& scene) {
  const auto validation = scene_validate(scene);
  if (!validation.ok()) {
    const auto& v = validation.violations.front();
    throw UsageError("invalid scene: " + v.invariant + " at index " + std::to_string(v.index) + " (" + v.detail +
                     ")");
  }
}

template <typename Scalar>
InterfaceMargin<Scalar> margin_at(const BasicScene<Scalar>& scene, std::size_t k) {
  const std::span<const Body<Scalar>> supported(scene.bodies.begin() + static_cast<std::ptrdiff_t>(k),
                                                scene.bodies.end());
  return {static_cast<int>(k), signed_margin(support_region(scene, k), com(supported))};
}

}  // namespace detail

template <typename Scalar>
InterfaceMargin<Scalar> interface_margin(const BasicScene<Scalar>& scene, std::size_t k) {
  detail::require_valid(scene);
  if (k >= scene.size()) throw UsageError("interface_margin: index " + std::to_string(k) + " out of range");
  return detail::margin_at(scene, k);
}

/// Margin = 0 counts as stable.
template <typename Scalar>
BasicStabilityReport<Scalar> analyze_stability(const BasicScene<Scalar>& scene) {
  detail::require_valid(scene);
  BasicStabilityReport<Scalar> report;
  report.margins.reserve(scene.size());
  for (std::size_t k = 0; k < scene.size(); ++k) {
    const auto m = detail::margin_at(scene, k);
    report.margins.push_back(m);
    report.min_margin = std::min(report.min_margin, m.margin);
    if (m.margin < Scalar(0) && !report.first_violation) report.first_violation = m.interface_index;
  }
  report.stable = !report.first_violation.has_value();
  return report;
}

template <typename Scalar>
bool stability_label(const BasicScene<Scalar>& scene) {
  return analyze_stability(scene).stable;
}

}  // namespace stacklab
