#include "stacklab/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "stacklab/errors.hpp"
#include "stacklab/io.hpp"

namespace stacklab {

std::string_view to_string(View view) {
  switch (view) {
    case View::Front: return "front";
    case View::Side: return "side";
    case View::Top: return "top";
  }
  return "front";
}

std::string_view extension(ImageFormat format) { return format == ImageFormat::Svg ? "svg" : "ppm"; }

ImageFormat parse_image_format(std::string_view text) {
  if (text == "svg") return ImageFormat::Svg;
  if (text == "ppm") return ImageFormat::Ppm;
  throw UsageError("unknown image format '" + std::string(text) + "'");
}

std::vector<View> views_for(Dim dim) {
  if (dim == Dim::Two) return {View::Front};
  return {View::Front, View::Side, View::Top};
}

namespace {

void check_spec(const Scene& scene, const ViewSpec& spec) {
  if (spec.width < 64 || spec.height < 64) throw UsageError("canvas must be at least 64x64");
  if (!(spec.margin >= 0.0 && spec.margin < 0.5)) throw UsageError("canvas margin must lie in [0, 0.5)");
  if (scene.dim == Dim::Two && spec.view != View::Front) {
    throw UsageError("view '" + std::string(to_string(spec.view)) + "' is not available for 2D scenes");
  }
  if (scene.bodies.empty()) throw UsageError("cannot render an empty scene");
}

// View-plane axes: (horizontal, vertical) world axis indices.
std::pair<int, int> plane_axes(View view) {
  switch (view) {
    case View::Front: return {0, 2};
    case View::Side: return {1, 2};
    case View::Top: return {0, 1};
  }
  return {0, 2};
}

std::string fixed3(double v) {
  if (std::abs(v) < 0.0005) v = 0.0;  // no "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::string to_svg(const Projection& p, const ViewSpec& spec) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
         std::to_string(spec.height) + "\">\n";
  if (p.ground_y) {
    out += "<line x1=\"0.000\" y1=\"" + fixed3(*p.ground_y) + "\" x2=\"" + fixed3(spec.width) + "\" y2=\"" +
           fixed3(*p.ground_y) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  }
  for (std::size_t i = 0; i < p.rects.size(); ++i) {
    const auto& r = p.rects[i];
    out += "<rect x=\"" + fixed3(r.x) + "\" y=\"" + fixed3(r.y) + "\" width=\"" + fixed3(r.width) + "\" height=\"" +
           fixed3(r.height) + "\" fill=\"" + hex(kPalette[i % kPalette.size()]) +
           "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string to_ppm(const Projection& p, const ViewSpec& spec) {
  const int w = spec.width;
  const int h = spec.height;
  std::vector<Rgb> pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), Rgb{0xff, 0xff, 0xff});
  auto put = [&](int x, int y, Rgb c) {
    if (x >= 0 && x < w && y >= 0 && y < h) pixels[static_cast<std::size_t>(y) * w + x] = c;
  };
  const Rgb black{0, 0, 0};
  if (p.ground_y) {
    const int row = static_cast<int>(std::floor(*p.ground_y));
    for (int x = 0; x < w; ++x) put(x, row, black);
  }
  for (std::size_t i = 0; i < p.rects.size(); ++i) {
    const auto& r = p.rects[i];
    // Pixels whose centers fall inside [x, x + width) x [y, y + height).
    const int x0 = static_cast<int>(std::ceil(r.x - 0.5));
    const int x1 = static_cast<int>(std::ceil(r.x + r.width - 0.5)) - 1;
    const int y0 = static_cast<int>(std::ceil(r.y - 0.5));
    const int y1 = static_cast<int>(std::ceil(r.y + r.height - 0.5)) - 1;
    const Rgb fill = kPalette[i % kPalette.size()];
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const bool edge = x == x0 || x == x1 || y == y0 || y == y1;
        put(x, y, edge ? black : fill);
      }
    }
  }
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + pixels.size() * 3);
  for (const auto& c : pixels) {
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return out;
}

}  // namespace

Projection project(const Scene& scene, const ViewSpec& spec) {
  check_spec(scene, spec);
  const auto [u_axis, v_axis] = plane_axes(spec.view);
  const bool has_ground = spec.view != View::Top;

  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -u_min;
  double v_min = has_ground ? 0.0 : u_min;
  double v_max = has_ground ? 0.0 : -u_min;
  for (const auto& b : scene.bodies) {
    const double hu = b.shape.size(u_axis) / 2;
    const double hv = b.shape.size(v_axis) / 2;
    u_min = std::min(u_min, b.center(u_axis) - hu);
    u_max = std::max(u_max, b.center(u_axis) + hu);
    v_min = std::min(v_min, b.center(v_axis) - hv);
    v_max = std::max(v_max, b.center(v_axis) + hv);
  }
  const double avail_w = spec.width * (1 - 2 * spec.margin);
  const double avail_h = spec.height * (1 - 2 * spec.margin);
  const double scale = std::min(avail_w / (u_max - u_min), avail_h / (v_max - v_min));
  const double uc = (u_min + u_max) / 2;
  const double vc = (v_min + v_max) / 2;
  const auto px = [&](double u) { return spec.width / 2.0 + (u - uc) * scale; };
  const auto py = [&](double v) { return spec.height / 2.0 - (v - vc) * scale; };

  Projection p;
  for (const auto& b : scene.bodies) {
    const double hu = b.shape.size(u_axis) / 2;
    const double hv = b.shape.size(v_axis) / 2;
    const double left = px(b.center(u_axis) - hu);
    const double top = py(b.center(v_axis) + hv);
    p.rects.push_back({left, top, px(b.center(u_axis) + hu) - left, py(b.center(v_axis) - hv) - top});
  }
  if (has_ground) p.ground_y = py(0.0);
  return p;
}

std::string render_scene(const Scene& scene, const ViewSpec& spec, ImageFormat format) {
  const Projection p = project(scene, spec);
  return format == ImageFormat::Svg ? to_svg(p, spec) : to_ppm(p, spec);
}

std::vector<std::string> render_sample(const SampleRecord& record, const std::filesystem::path& out_dir,
                                       ImageFormat format, const ViewSpec& base) {
  std::vector<std::string> names;
  for (View view : views_for(record.scene.dim)) {
    ViewSpec spec = base;
    spec.view = view;
    const std::string name = record.id + "_" + std::string(to_string(view)) + "." + std::string(extension(format));
    write_file_atomic(out_dir / name, render_scene(record.scene, spec, format));
    names.push_back(name);
  }
  return names;
}

}  // namespace stacklab
