#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stacklab/generator.hpp"
#include "stacklab/scene.hpp"

namespace stacklab {

enum class View { Front, Side, Top };
enum class ImageFormat { Svg, Ppm };

std::string_view to_string(View view);
std::string_view extension(ImageFormat format);
ImageFormat parse_image_format(std::string_view text);

struct Rgb {
  std::uint8_t r, g, b;
};

/// Eight high-contrast fills, cycled by body index.
inline constexpr std::array<Rgb, 8> kPalette{{
    {0xe6, 0x19, 0x4b},
    {0x3c, 0xb4, 0x4b},
    {0x43, 0x63, 0xd8},
    {0xf5, 0x82, 0x31},
    {0x91, 0x1e, 0xb4},
    {0x42, 0xd4, 0xf4},
    {0xf0, 0x32, 0xe6},
    {0xff, 0xe1, 0x19},
}};

struct ViewSpec {
  View view = View::Front;
  int width = 512;
  int height = 512;
  double margin = 0.1;  ///< padding per side as a fraction of the canvas
};

/// Views rendered for a scene: front for planar, front/side/top for spatial.
std::vector<View> views_for(Dim dim);

/// Axis-aligned rectangle in pixel coordinates (y grows downward).
struct PixelRect {
  double x, y, width, height;
};

/// Projected body rectangles (bottom to top) and the ground line's pixel row.
/// The ground row is absent for the top view.
struct Projection {
  std::vector<PixelRect> rects;
  std::optional<double> ground_y;
};

/// Orthographic projection fitted to the canvas. The scene bounding box
/// (including the ground plane for front/side views) is scaled uniformly to
/// fit the canvas minus padding and centered.
Projection project(const Scene& scene, const ViewSpec& spec);

/// Throws UsageError for a view the scene's dimension does not offer or a
/// canvas smaller than 64x64.
std::string render_scene(const Scene& scene, const ViewSpec& spec, ImageFormat format);

/// Renders every view into `out_dir` as `<id>_<view>.<ext>` and returns the
/// file names relative to `out_dir`.
std::vector<std::string> render_sample(const SampleRecord& record, const std::filesystem::path& out_dir,
                                       ImageFormat format, const ViewSpec& base = {});

}  // namespace stacklab
