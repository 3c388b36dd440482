#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stacklab/rng.hpp"
#include "stacklab/scene.hpp"
#include "stacklab/statics.hpp"

namespace stacklab {

enum class Label { Stable, Unstable };
enum class Difficulty { Easy, Hard };
enum class Split { Train, Test };

std::string_view to_string(Label label);
std::string_view to_string(Difficulty difficulty);
std::string_view to_string(Split split);
Label parse_label(std::string_view text);
Difficulty parse_difficulty(std::string_view text);
Split parse_split(std::string_view text);

/// Samples with |min_margin| below this are rejected, length units.
inline constexpr double kExclusionBand = 0.02;
/// Misalignment at or above this reads as a visible instability cue.
inline constexpr double kMisalignmentThreshold = 0.6;
/// Minimum footprint overlap as a fraction of the narrower width.
inline constexpr double kMinOverlapFraction = 0.05;
inline constexpr std::size_t kDefaultRejectionBudget = 100000;

enum class ShapeFamily {
  Cuboid,  ///< independent extents per body and axis
  Cube,    ///< every body in a tower is the same cube
};

std::string_view to_string(ShapeFamily family);
ShapeFamily parse_shape_family(std::string_view text);

struct TowerOptions {
  Eigen::Vector3d size_min = Eigen::Vector3d::Constant(0.5);  ///< (width, depth, height) lower bounds
  Eigen::Vector3d size_max = Eigen::Vector3d::Constant(1.5);
  ShapeFamily family = ShapeFamily::Cuboid;
  std::size_t rejection_budget = kDefaultRejectionBudget;
};

struct GenSpec {
  Dim dim = Dim::Two;
  std::vector<int> heights;
  int count_per_cell = 1;
  std::uint64_t seed = 0;
  double split_ratio = 0.8;
  std::vector<Difficulty> difficulties{Difficulty::Easy, Difficulty::Hard};
  TowerOptions tower;

  /// Throws UsageError on any violated constraint.
  void validate() const;
};

/// Allowed tower heights: planar 3..6, spatial 2..6.
int min_height(Dim dim);
inline constexpr int kMaxHeight = 6;

struct TowerSample {
  Scene scene;
  StabilityReport report;
  double misalignment = 0;
  Label label = Label::Stable;
  Difficulty difficulty = Difficulty::Easy;
};

/// Max over non-ground interfaces and horizontal axes of
/// |relative offset| / min(widths at that interface).
double misalignment(const Scene& scene);

/// Easy iff the misalignment cue agrees with the label.
Difficulty classify_difficulty(Label label, double misalignment);

/// Draws random towers until one matches the requested label and difficulty
/// with |min_margin| >= kExclusionBand. Throws InfeasibleCell when the budget
/// runs out.
TowerSample gen_tower(Dim dim, int height, Label target_label, Difficulty target_difficulty, CounterRng& rng,
                      const TowerOptions& options = {});

/// True for exactly two bodies that are identical cubes.
bool is_duplicable(const Scene& scene);

/// Replaces each cube of a two-cube tower by a column of `factor` copies at
/// the same horizontal position. factor must be 2 or 3.
Scene gen_duplicated(const Scene& scene, int factor);

struct SampleRecord {
  std::string id;
  Scene scene;
  Label label = Label::Stable;
  int height = 0;
  Difficulty difficulty = Difficulty::Easy;
  Split split = Split::Train;
  double misalignment = 0;
  double min_margin = 0;
  StabilityReport stability;
  std::vector<std::string> images;
  std::optional<std::string> source_id;  ///< set on duplicated records
};

struct ManifestHeader {
  int format_version = 1;
  std::string generator;
  std::optional<GenSpec> spec;
  std::optional<int> duplication_factor;
};

struct Manifest {
  ManifestHeader header;
  std::vector<SampleRecord> records;
};

/// First 16 hex digits of SHA-256 over the canonical scene serialization.
std::string sample_id(const Scene& scene);

/// Deterministic train/test assignment from a hash of (id, seed).
Split assign_split(std::string_view id, double split_ratio, std::uint64_t seed);

/// Builds a record for a tower sample (id, split and stability filled in).
SampleRecord make_record(const TowerSample& sample, double split_ratio, std::uint64_t seed);

/// Fills every (height, label, difficulty) cell with count_per_cell samples.
/// Records are sorted by id. `jobs` = 0 uses hardware concurrency; output is
/// independent of `jobs`.
Manifest gen_dataset(const GenSpec& spec, unsigned jobs = 0);

/// Duplicated copy of a record; throws UsageError if not duplicable and
/// std::logic_error if the label would change.
SampleRecord duplicate_record(const SampleRecord& record, int factor);

std::string generator_version();

}  // namespace stacklab
