#include "stacklab/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "stacklab/hash.hpp"
#include "stacklab/manifest.hpp"
#include "stacklab/parallel.hpp"

namespace stacklab {

std::string_view to_string(Label label) { return label == Label::Stable ? "stable" : "unstable"; }
std::string_view to_string(Difficulty difficulty) { return difficulty == Difficulty::Easy ? "easy" : "hard"; }
std::string_view to_string(Split split) { return split == Split::Train ? "train" : "test"; }
std::string_view to_string(ShapeFamily family) { return family == ShapeFamily::Cuboid ? "cuboid" : "cube"; }

Label parse_label(std::string_view text) {
  if (text == "stable") return Label::Stable;
  if (text == "unstable") return Label::Unstable;
  throw UsageError("unknown label '" + std::string(text) + "'");
}

Difficulty parse_difficulty(std::string_view text) {
  if (text == "easy") return Difficulty::Easy;
  if (text == "hard") return Difficulty::Hard;
  throw UsageError("unknown difficulty '" + std::string(text) + "'");
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::Train;
  if (text == "test") return Split::Test;
  throw UsageError("unknown split '" + std::string(text) + "'");
}

ShapeFamily parse_shape_family(std::string_view text) {
  if (text == "cuboid") return ShapeFamily::Cuboid;
  if (text == "cube") return ShapeFamily::Cube;
  throw UsageError("unknown shape family '" + std::string(text) + "'");
}

std::string generator_version() { return std::string("stacklab ") + STACKLAB_VERSION; }

int min_height(Dim dim) { return dim == Dim::Two ? 3 : 2; }

namespace {

void check_height(Dim dim, int height) {
  if (height < min_height(dim) || height > kMaxHeight) {
    throw UsageError("height " + std::to_string(height) + " outside [" + std::to_string(min_height(dim)) + ", " +
                     std::to_string(kMaxHeight) + "] for " + std::to_string(static_cast<int>(dim)) + "D towers");
  }
}

void check_options(const TowerOptions& options) {
  if (!options.size_min.allFinite() || !options.size_max.allFinite() || (options.size_min.array() <= 0).any()) {
    throw UsageError("size ranges must be finite and positive");
  }
  if ((options.size_min.array() > options.size_max.array()).any()) {
    throw UsageError("size_min exceeds size_max");
  }
  if (options.rejection_budget == 0) throw UsageError("rejection budget must be positive");
}

std::vector<Eigen::Vector3d> draw_sizes(Dim dim, int height, const TowerOptions& options, CounterRng& rng) {
  std::vector<Eigen::Vector3d> sizes;
  sizes.reserve(static_cast<std::size_t>(height));
  if (options.family == ShapeFamily::Cube) {
    const double edge = rng.uniform(options.size_min.x(), options.size_max.x());
    sizes.assign(static_cast<std::size_t>(height), Eigen::Vector3d(edge, dim == Dim::Two ? 1.0 : edge, edge));
    return sizes;
  }
  for (int i = 0; i < height; ++i) {
    const double w = rng.uniform(options.size_min.x(), options.size_max.x());
    const double d = dim == Dim::Two ? 1.0 : rng.uniform(options.size_min.y(), options.size_max.y());
    const double h = rng.uniform(options.size_min.z(), options.size_max.z());
    sizes.emplace_back(w, d, h);
  }
  return sizes;
}

std::vector<Eigen::Vector2d> draw_offsets(Dim dim, const std::vector<Eigen::Vector3d>& sizes, CounterRng& rng) {
  std::vector<Eigen::Vector2d> centers(sizes.size(), Eigen::Vector2d::Zero());
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    centers[i] = centers[i - 1];
    for (int axis = 0; axis < horizontal_axes(dim); ++axis) {
      const double lower = sizes[i - 1](axis);
      const double upper = sizes[i](axis);
      const double limit = (lower + upper) / 2 - kMinOverlapFraction * std::min(lower, upper);
      centers[i](axis) += rng.uniform(-limit, limit);
    }
  }
  return centers;
}

}  // namespace

void GenSpec::validate() const {
  if (dim != Dim::Two && dim != Dim::Three) throw UsageError("dim must be 2 or 3");
  if (heights.empty()) throw UsageError("at least one height is required");
  for (int h : heights) check_height(dim, h);
  if (count_per_cell <= 0) throw UsageError("count per cell must be positive");
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) throw UsageError("split ratio must lie in (0, 1)");
  if (difficulties.empty()) throw UsageError("at least one difficulty is required");
  check_options(tower);
}

double misalignment(const Scene& scene) {
  double m = 0;
  for (std::size_t k = 1; k < scene.size(); ++k) {
    const auto& lower = scene.bodies[k - 1];
    const auto& upper = scene.bodies[k];
    for (int axis = 0; axis < horizontal_axes(scene.dim); ++axis) {
      const double offset = std::abs(upper.center(axis) - lower.center(axis));
      m = std::max(m, offset / std::min(upper.shape.size(axis), lower.shape.size(axis)));
    }
  }
  return m;
}

Difficulty classify_difficulty(Label label, double m) {
  const bool looks_unstable = m >= kMisalignmentThreshold;
  const bool is_unstable = label == Label::Unstable;
  return looks_unstable == is_unstable ? Difficulty::Easy : Difficulty::Hard;
}

TowerSample gen_tower(Dim dim, int height, Label target_label, Difficulty target_difficulty, CounterRng& rng,
                      const TowerOptions& options) {
  check_height(dim, height);
  check_options(options);
  for (std::size_t draw = 0; draw < options.rejection_budget; ++draw) {
    const auto sizes = draw_sizes(dim, height, options, rng);
    const auto centers = draw_offsets(dim, sizes, rng);
    Scene scene = stack_bodies(dim, sizes, centers);
    auto report = analyze_stability(scene);
    if (std::abs(report.min_margin) < kExclusionBand) continue;
    const Label label = report.stable ? Label::Stable : Label::Unstable;
    if (label != target_label) continue;
    const double m = misalignment(scene);
    if (classify_difficulty(label, m) != target_difficulty) continue;
    return {std::move(scene), std::move(report), m, label, target_difficulty};
  }
  throw InfeasibleCell("no tower accepted for cell (dim=" + std::to_string(static_cast<int>(dim)) +
                       ", height=" + std::to_string(height) + ", label=" + std::string(to_string(target_label)) +
                       ", difficulty=" + std::string(to_string(target_difficulty)) + ") within " +
                       std::to_string(options.rejection_budget) + " draws");
}

bool is_duplicable(const Scene& scene) {
  if (scene.size() != 2) return false;
  const auto& a = scene.bodies[0].shape.size;
  const auto& b = scene.bodies[1].shape.size;
  const auto is_cube = [&](const Eigen::Vector3d& s) {
    const bool square = std::abs(s.x() - s.z()) <= kContactTolerance;
    return scene.dim == Dim::Two ? square : square && std::abs(s.y() - s.z()) <= kContactTolerance;
  };
  return is_cube(a) && is_cube(b) && (a - b).cwiseAbs().maxCoeff() <= kContactTolerance;
}

Scene gen_duplicated(const Scene& scene, int factor) {
  if (factor != 2 && factor != 3) throw UsageError("duplication factor must be 2 or 3");
  if (!is_duplicable(scene)) throw UsageError("duplication requires a two-body tower of identical cubes");
  Scene out;
  out.dim = scene.dim;
  double z = 0;
  for (const auto& original : scene.bodies) {
    for (int copy = 0; copy < factor; ++copy) {
      Body<double> body = original;
      body.id = static_cast<int>(out.bodies.size());
      body.center.z() = z + body.shape.size.z() / 2;
      z = body.top();
      out.bodies.push_back(body);
    }
  }
  return out;
}

std::string sample_id(const Scene& scene) { return sha256_hex(dump_line(scene_to_json(scene)), 16); }

Split assign_split(std::string_view id, double split_ratio, std::uint64_t seed) {
  const auto digest = sha256(std::string(id) + ":" + std::to_string(seed));
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits = (bits << 8) | digest[static_cast<std::size_t>(i)];
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return u < split_ratio ? Split::Train : Split::Test;
}

SampleRecord make_record(const TowerSample& sample, double split_ratio, std::uint64_t seed) {
  SampleRecord record;
  record.scene = sample.scene;
  record.id = sample_id(sample.scene);
  record.label = sample.label;
  record.height = static_cast<int>(sample.scene.size());
  record.difficulty = sample.difficulty;
  record.split = assign_split(record.id, split_ratio, seed);
  record.misalignment = sample.misalignment;
  record.min_margin = sample.report.min_margin;
  record.stability = sample.report;
  return record;
}

Manifest gen_dataset(const GenSpec& spec, unsigned jobs) {
  spec.validate();

  struct Task {
    int height;
    Label label;
    Difficulty difficulty;
    std::uint64_t cell_code;
    std::uint64_t index;
  };
  const std::set<int> heights(spec.heights.begin(), spec.heights.end());
  const std::set<Difficulty> difficulties(spec.difficulties.begin(), spec.difficulties.end());
  std::vector<Task> tasks;
  for (int h : heights) {
    for (Label label : {Label::Stable, Label::Unstable}) {
      for (Difficulty difficulty : difficulties) {
        // Cell codes depend only on the cell, so a cell's samples do not
        // change when other cells are added or removed.
        const auto code = static_cast<std::uint64_t>(h) * 16 + static_cast<std::uint64_t>(label) * 4 +
                          static_cast<std::uint64_t>(difficulty);
        for (int i = 0; i < spec.count_per_cell; ++i) {
          tasks.push_back({h, label, difficulty, code, static_cast<std::uint64_t>(i)});
        }
      }
    }
  }

  std::vector<SampleRecord> records(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    CounterRng rng(stream_key(spec.seed, task.cell_code, task.index));
    const auto sample = gen_tower(spec.dim, task.height, task.label, task.difficulty, rng, spec.tower);
    records[t] = make_record(sample, spec.split_ratio, spec.seed);
  });

  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].id == records[i - 1].id) throw std::runtime_error("duplicate sample id " + records[i].id);
  }

  Manifest manifest;
  manifest.header.generator = generator_version();
  manifest.header.spec = spec;
  manifest.records = std::move(records);
  return manifest;
}

SampleRecord duplicate_record(const SampleRecord& record, int factor) {
  SampleRecord out;
  out.scene = gen_duplicated(record.scene, factor);
  out.stability = analyze_stability(out.scene);
  const Label label = out.stability.stable ? Label::Stable : Label::Unstable;
  if (label != record.label) {
    throw std::logic_error("duplication changed the label of record " + record.id);
  }
  out.id = sample_id(out.scene);
  out.label = label;
  out.height = static_cast<int>(out.scene.size());
  out.difficulty = record.difficulty;
  out.split = record.split;
  out.misalignment = misalignment(out.scene);
  out.min_margin = out.stability.min_margin;
  out.source_id = record.id;
  return out;
}

}  // namespace stacklab
