#include "stacklab/manifest.hpp"

#include <sstream>

#include "stacklab/errors.hpp"
#include "stacklab/io.hpp"

namespace stacklab {

namespace {

Dim dim_from_json(const Json& j) {
  const int d = j.get<int>();
  if (d != 2 && d != 3) throw UsageError("dim must be 2 or 3");
  return static_cast<Dim>(d);
}

Json vec3_to_json(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw UsageError("expected an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

Json scene_to_json(const Scene& scene) {
  Json bodies = Json::array();
  for (const auto& b : scene.bodies) {
    Json size;
    Json center;
    if (scene.dim == Dim::Two) {
      size = Json::array({b.shape.size.x(), b.shape.size.z()});
      center = Json::array({b.center.x(), b.center.z()});
    } else {
      size = vec3_to_json(b.shape.size);
      center = vec3_to_json(b.center);
    }
    bodies.push_back(Json{{"shape", Json{{"kind", "cuboid"}, {"size", size}}}, {"center", center}, {"density", b.density}});
  }
  return Json{{"dim", static_cast<int>(scene.dim)}, {"bodies", bodies}};
}

Scene scene_from_json(const Json& j) {
  Scene scene;
  scene.dim = dim_from_json(j.at("dim"));
  const std::size_t n = scene.dim == Dim::Two ? 2 : 3;
  const auto& bodies = j.at("bodies");
  if (!bodies.is_array()) throw UsageError("bodies must be an array");
  for (const auto& jb : bodies) {
    const auto& shape = jb.at("shape");
    if (shape.at("kind").get<std::string>() != "cuboid") throw UsageError("unsupported shape kind");
    const auto& size = shape.at("size");
    const auto& center = jb.at("center");
    if (!size.is_array() || size.size() != n) throw UsageError("shape.size must have " + std::to_string(n) + " entries");
    if (!center.is_array() || center.size() != n) throw UsageError("center must have " + std::to_string(n) + " entries");
    Body<double> body;
    body.id = static_cast<int>(scene.bodies.size());
    if (scene.dim == Dim::Two) {
      body.shape.size = {size[0].get<double>(), 1.0, size[1].get<double>()};
      body.center = {center[0].get<double>(), 0.0, center[1].get<double>()};
    } else {
      body.shape.size = vec3_from_json(size);
      body.center = vec3_from_json(center);
    }
    body.density = jb.contains("density") ? jb.at("density").get<double>() : 1.0;
    scene.bodies.push_back(body);
  }
  return scene;
}

Json stability_to_json(const StabilityReport& report) {
  Json margins = Json::array();
  for (const auto& m : report.margins) margins.push_back(m.margin);
  return Json{{"stable", report.stable},
              {"margins", margins},
              {"first_violation", report.first_violation ? Json(*report.first_violation) : Json(nullptr)}};
}

Json spec_to_json(const GenSpec& spec) {
  Json difficulties = Json::array();
  for (auto d : spec.difficulties) difficulties.push_back(std::string(to_string(d)));
  return Json{{"dim", static_cast<int>(spec.dim)},
              {"heights", spec.heights},
              {"count_per_cell", spec.count_per_cell},
              {"seed", spec.seed},
              {"split_ratio", spec.split_ratio},
              {"difficulties", difficulties},
              {"shape_family", std::string(to_string(spec.tower.family))},
              {"size_min", vec3_to_json(spec.tower.size_min)},
              {"size_max", vec3_to_json(spec.tower.size_max)},
              {"rejection_budget", spec.tower.rejection_budget}};
}

GenSpec spec_from_json(const Json& j) {
  GenSpec spec;
  spec.dim = dim_from_json(j.at("dim"));
  spec.heights = j.at("heights").get<std::vector<int>>();
  spec.count_per_cell = j.at("count_per_cell").get<int>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.split_ratio = j.at("split_ratio").get<double>();
  spec.difficulties.clear();
  for (const auto& d : j.at("difficulties")) spec.difficulties.push_back(parse_difficulty(d.get<std::string>()));
  spec.tower.family = parse_shape_family(j.at("shape_family").get<std::string>());
  spec.tower.size_min = vec3_from_json(j.at("size_min"));
  spec.tower.size_max = vec3_from_json(j.at("size_max"));
  spec.tower.rejection_budget = j.at("rejection_budget").get<std::size_t>();
  return spec;
}

Json record_to_json(const SampleRecord& r) {
  Json j{{"type", "sample"},
         {"id", r.id},
         {"label", std::string(to_string(r.label))},
         {"height", r.height},
         {"difficulty", std::string(to_string(r.difficulty))},
         {"split", std::string(to_string(r.split))},
         {"misalignment", r.misalignment},
         {"min_margin", r.min_margin},
         {"stability", stability_to_json(r.stability)},
         {"images", r.images}};
  if (r.source_id) j["source_id"] = *r.source_id;
  j["scene"] = scene_to_json(r.scene);
  return j;
}

SampleRecord record_from_json(const Json& j) {
  if (j.value("type", "") != "sample") throw UsageError("expected a record with \"type\":\"sample\"");
  SampleRecord r;
  r.id = j.at("id").get<std::string>();
  r.scene = scene_from_json(j.at("scene"));
  r.label = parse_label(j.at("label").get<std::string>());
  r.height = j.at("height").get<int>();
  r.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
  r.split = parse_split(j.at("split").get<std::string>());
  r.misalignment = j.at("misalignment").get<double>();
  r.min_margin = j.at("min_margin").get<double>();
  const auto& st = j.at("stability");
  r.stability.stable = st.at("stable").get<bool>();
  const auto& margins = st.at("margins");
  r.stability.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < margins.size(); ++k) {
    const double m = margins[k].get<double>();
    r.stability.margins.push_back({static_cast<int>(k), m});
    r.stability.min_margin = std::min(r.stability.min_margin, m);
  }
  if (!st.at("first_violation").is_null()) r.stability.first_violation = st.at("first_violation").get<int>();
  r.images = j.value("images", std::vector<std::string>{});
  if (j.contains("source_id")) r.source_id = j.at("source_id").get<std::string>();
  return r;
}

Json header_to_json(const ManifestHeader& header) {
  Json j{{"type", "header"},
         {"format_version", header.format_version},
         {"generator", header.generator},
         {"spec", header.spec ? spec_to_json(*header.spec) : Json(nullptr)}};
  if (header.duplication_factor) j["duplication_factor"] = *header.duplication_factor;
  return j;
}

std::string dump_line(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::strict); }

std::string manifest_to_string(const Manifest& manifest) {
  std::string out = dump_line(header_to_json(manifest.header));
  out += '\n';
  for (const auto& r : manifest.records) {
    out += dump_line(record_to_json(r));
    out += '\n';
  }
  return out;
}

Manifest manifest_from_stream(std::istream& in) {
  Manifest manifest;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      if (!have_header) {
        if (j.value("type", "") != "header") throw UsageError("first line must be the header");
        manifest.header.format_version = j.at("format_version").get<int>();
        if (manifest.header.format_version != 1) throw UsageError("unsupported format version");
        manifest.header.generator = j.at("generator").get<std::string>();
        if (!j.at("spec").is_null()) manifest.header.spec = spec_from_json(j.at("spec"));
        if (j.contains("duplication_factor")) manifest.header.duplication_factor = j.at("duplication_factor").get<int>();
        have_header = true;
      } else {
        manifest.records.push_back(record_from_json(j));
      }
    } catch (const Json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const UsageError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_header) throw ParseError(line_no, "missing manifest header");
  return manifest;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return manifest_from_stream(in);
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  write_file_atomic(path, manifest_to_string(manifest));
}

}  // namespace stacklab
