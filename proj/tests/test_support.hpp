#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "oracle/torque_oracle.hpp"
#include "stacklab/scene.hpp"

namespace stacklab::testing {

/// Unconstrained random tower: extents in [0.5, 1.5], offsets anywhere that
/// keeps some footprint overlap, random densities. Both verdicts occur.
inline Scene random_tower(std::mt19937_64& rng, Dim dim, int height) {
  std::uniform_real_distribution<double> extent(0.5, 1.5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> density(0.5, 2.0);
  std::vector<Eigen::Vector3d> sizes;
  std::vector<Eigen::Vector2d> centers;
  for (int i = 0; i < height; ++i) {
    sizes.emplace_back(extent(rng), dim == Dim::Two ? 1.0 : extent(rng), extent(rng));
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    if (i > 0) {
      c = centers.back();
      for (int a = 0; a < horizontal_axes(dim); ++a) {
        const double reach = 0.45 * (sizes[i - 1](a) + sizes[i](a));
        c(a) += reach * unit(rng);
      }
    }
    centers.push_back(c);
  }
  Scene scene = stack_bodies(dim, sizes, centers);
  for (auto& b : scene.bodies) b.density = density(rng);
  return scene;
}

inline std::vector<oracle::RawBody> to_raw(const Scene& scene) {
  std::vector<oracle::RawBody> raw;
  for (const auto& b : scene.bodies) {
    raw.push_back({{b.shape.size.x(), b.shape.size.y(), b.shape.size.z()},
                   {b.center.x(), b.center.y(), b.center.z()},
                   b.density});
  }
  return raw;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("stacklab_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Two unit cubes (planar), top one shifted by `offset`.
inline Scene two_cubes(double offset) { return stack_planar<double>({1, 1}, {1, 1}, {0, offset}); }

}  // namespace stacklab::testing
