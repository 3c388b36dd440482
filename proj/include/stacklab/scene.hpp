#pragma once

// Geometric model of a single-column tower of axis-aligned cuboids resting on
// a ground plane at z = 0. Planar (2D) scenes are embedded in 3D with y = 0 and
// unit depth, so the same types serve both dimensionalities.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <cstddef>
#include <iterator>
#include <ranges>
#include <string>
#include <vector>

#include "stacklab/errors.hpp"

namespace stacklab {

enum class Dim : int { Two = 2, Three = 3 };

/// Number of horizontal axes: 1 for planar scenes (x), 2 for spatial (x, y).
constexpr int horizontal_axes(Dim dim) { return static_cast<int>(dim) - 1; }

/// Face-coincidence tolerance, length units.
inline constexpr double kContactTolerance = 1e-9;

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

enum class ShapeKind { Cuboid };

template <typename Scalar>
struct BodyShape {
  ShapeKind kind = ShapeKind::Cuboid;
  /// (width, depth, height). Planar bodies carry depth 1.
  Vec3<Scalar> size = Vec3<Scalar>::Ones();
};

template <typename Scalar>
struct Body {
  int id = 0;
  BodyShape<Scalar> shape;
  /// Geometric center (x, y, z), z vertical. Also the center of mass.
  Vec3<Scalar> center = Vec3<Scalar>::Zero();
  Scalar density = Scalar(1);

  Scalar volume() const { return shape.size.prod(); }
  Scalar mass() const { return density * volume(); }
  Scalar bottom() const { return center.z() - shape.size.z() / Scalar(2); }
  Scalar top() const { return center.z() + shape.size.z() / Scalar(2); }

  /// Horizontal footprint as an (x, y) box.
  Eigen::AlignedBox<Scalar, 2> footprint() const {
    const Vec2<Scalar> half = shape.size.template head<2>() / Scalar(2);
    const Vec2<Scalar> c = center.template head<2>();
    return {c - half, c + half};
  }
};

template <typename Scalar>
struct BasicScene {
  Dim dim = Dim::Two;
  /// Bottom to top; body 0 rests on the ground.
  std::vector<Body<Scalar>> bodies;

  std::size_t size() const { return bodies.size(); }
};

using Scene = BasicScene<double>;

/// Tag for the ground plane as the lower side of interface 0.
struct Ground {};

/// Contact region between two stacked bodies, projected to the horizontal
/// plane. Only the first `horizontal_axes(dim)` axes are meaningful.
template <typename Scalar>
struct SupportRegion {
  Dim dim = Dim::Two;
  Eigen::AlignedBox<Scalar, 2> box;

  Scalar lo(int axis) const { return box.min()(axis); }
  Scalar hi(int axis) const { return box.max()(axis); }
};

struct Violation {
  int index = 0;           ///< body index (or interface index for contact checks)
  std::string invariant;   ///< "shape", "density", "contact", "no footprint overlap", ...
  std::string detail;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Mass-weighted centroid of a non-empty body range.
template <std::ranges::input_range Range>
auto com(const Range& bodies) {
  using BodyT = std::ranges::range_value_t<Range>;
  using Scalar = typename decltype(BodyT{}.center)::Scalar;
  if (std::ranges::empty(bodies)) throw UsageError("com: empty body set");
  Vec3<Scalar> moment = Vec3<Scalar>::Zero();
  Scalar total = 0;
  for (const auto& body : bodies) {
    const Scalar m = body.mass();
    moment += m * body.center;
    total += m;
  }
  return Vec3<Scalar>(moment / total);
}

namespace detail {

template <typename Scalar>
SupportRegion<Scalar> checked_region(Dim dim, const Eigen::AlignedBox<Scalar, 2>& box) {
  for (int a = 0; a < horizontal_axes(dim); ++a) {
    if (box.min()(a) > box.max()(a)) throw UsageError("no support");
  }
  return {dim, box};
}

}  // namespace detail

template <typename Scalar>
SupportRegion<Scalar> support_region(Dim dim, Ground, const Body<Scalar>& upper) {
  return {dim, upper.footprint()};
}

/// Intersection of the lower body's top face with the upper body's bottom
/// face. Throws UsageError("no support") when the footprints are disjoint.
template <typename Scalar>
SupportRegion<Scalar> support_region(Dim dim, const Body<Scalar>& lower, const Body<Scalar>& upper) {
  const auto a = lower.footprint();
  const auto b = upper.footprint();
  Eigen::AlignedBox<Scalar, 2> box(a.min().cwiseMax(b.min()), a.max().cwiseMin(b.max()));
  return detail::checked_region(dim, box);
}

/// Support region of interface k: ground under body 0, else body k-1 under body k.
template <typename Scalar>
SupportRegion<Scalar> support_region(const BasicScene<Scalar>& scene, std::size_t k) {
  if (k >= scene.size()) throw UsageError("support_region: interface index out of range");
  if (k == 0) return support_region(scene.dim, Ground{}, scene.bodies[0]);
  return support_region(scene.dim, scene.bodies[k - 1], scene.bodies[k]);
}

template <typename Scalar>
ValidationResult scene_validate(const BasicScene<Scalar>& scene) {
  using std::abs;
  using std::isfinite;
  ValidationResult result;
  auto report = [&](int index, std::string invariant, std::string detail) {
    result.violations.push_back({index, std::move(invariant), std::move(detail)});
  };

  if (scene.dim != Dim::Two && scene.dim != Dim::Three) report(0, "dim", "dimension must be 2 or 3");
  if (scene.bodies.empty()) {
    report(0, "empty", "scene has no bodies");
    return result;
  }

  const int axes = horizontal_axes(scene.dim);
  const Scalar tol = Scalar(kContactTolerance);
  bool geometry_ok = true;

  for (std::size_t i = 0; i < scene.size(); ++i) {
    const auto& b = scene.bodies[i];
    const int idx = static_cast<int>(i);
    if (!b.shape.size.allFinite() || (b.shape.size.array() <= Scalar(0)).any()) {
      report(idx, "shape", "extents must be finite and strictly positive");
      geometry_ok = false;
    }
    if (!b.center.allFinite()) {
      report(idx, "center", "center must be finite");
      geometry_ok = false;
    }
    if (!(b.density > Scalar(0)) || !isfinite(b.density)) {
      report(idx, "density", "density must be finite and positive");
    } else if (geometry_ok && !(isfinite(b.mass()) && b.mass() > Scalar(0))) {
      report(idx, "mass", "mass must be finite and positive");
    }
  }
  if (!geometry_ok) return result;

  if (abs(scene.bodies[0].bottom()) > tol) report(0, "ground", "body 0 bottom face is not at z = 0");

  for (std::size_t k = 1; k < scene.size(); ++k) {
    const auto& lower = scene.bodies[k - 1];
    const auto& upper = scene.bodies[k];
    const int idx = static_cast<int>(k);
    if (abs(upper.bottom() - lower.top()) > tol) {
      report(idx, "contact", "bottom face does not coincide with the top face of body " + std::to_string(k - 1));
    }
    const auto a = lower.footprint();
    const auto b = upper.footprint();
    for (int axis = 0; axis < axes; ++axis) {
      const Scalar overlap = std::min(a.max()(axis), b.max()(axis)) - std::max(a.min()(axis), b.min()(axis));
      if (!(overlap > tol)) {
        report(idx, "no footprint overlap", "footprints of bodies " + std::to_string(k - 1) + " and " +
                                                std::to_string(k) + " do not overlap with positive measure");
        break;
      }
    }
  }

  for (std::size_t i = 0; i < scene.size(); ++i) {
    for (std::size_t j = i + 1; j < scene.size(); ++j) {
      const auto& p = scene.bodies[i];
      const auto& q = scene.bodies[j];
      const Scalar vertical = std::min(p.top(), q.top()) - std::max(p.bottom(), q.bottom());
      if (!(vertical > tol)) continue;
      bool overlaps = true;
      const auto a = p.footprint();
      const auto b = q.footprint();
      for (int axis = 0; axis < axes; ++axis) {
        overlaps = overlaps && (std::min(a.max()(axis), b.max()(axis)) - std::max(a.min()(axis), b.min()(axis)) > tol);
      }
      if (overlaps) {
        report(static_cast<int>(j), "interpenetration",
               "bodies " + std::to_string(i) + " and " + std::to_string(j) + " overlap in volume");
      }
    }
  }
  return result;
}

/// Stacks bodies bottom to top with exact face contacts. `sizes[i]` is
/// (width, depth, height) and `horizontal[i]` the (x, y) center of body i.
template <typename Scalar>
BasicScene<Scalar> stack_bodies(Dim dim, const std::vector<Vec3<Scalar>>& sizes,
                                const std::vector<Vec2<Scalar>>& horizontal, Scalar density = Scalar(1)) {
  if (sizes.size() != horizontal.size()) throw UsageError("stack_bodies: size/offset count mismatch");
  BasicScene<Scalar> scene;
  scene.dim = dim;
  Scalar z = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    Body<Scalar> body;
    body.id = static_cast<int>(i);
    body.shape.size = sizes[i];
    body.density = density;
    if (dim == Dim::Two) body.shape.size.y() = Scalar(1);
    body.center << horizontal[i].x(), dim == Dim::Two ? Scalar(0) : horizontal[i].y(), z + body.shape.size.z() / 2;
    z = body.top();
    scene.bodies.push_back(body);
  }
  return scene;
}

/// Planar tower convenience: widths/heights and x centers.
template <typename Scalar>
BasicScene<Scalar> stack_planar(const std::vector<Scalar>& widths, const std::vector<Scalar>& heights,
                                const std::vector<Scalar>& xs) {
  if (widths.size() != heights.size() || widths.size() != xs.size()) {
    throw UsageError("stack_planar: argument length mismatch");
  }
  std::vector<Vec3<Scalar>> sizes;
  std::vector<Vec2<Scalar>> horizontal;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    sizes.emplace_back(widths[i], Scalar(1), heights[i]);
    horizontal.emplace_back(xs[i], Scalar(0));
  }
  return stack_bodies(Dim::Two, sizes, horizontal);
}

/// Reflects the scene through the plane x = 0.
template <typename Scalar>
BasicScene<Scalar> mirror_x(BasicScene<Scalar> scene) {
  for (auto& b : scene.bodies) b.center.x() = -b.center.x();
  return scene;
}

template <typename Scalar>
BasicScene<Scalar> translate_horizontal(BasicScene<Scalar> scene, const Vec2<Scalar>& shift) {
  for (auto& b : scene.bodies) {
    b.center.x() += shift.x();
    if (scene.dim == Dim::Three) b.center.y() += shift.y();
  }
  return scene;
}

}  // namespace stacklab
