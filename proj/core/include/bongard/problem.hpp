#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bongard/features.hpp"
#include "bongard/figure.hpp"
#include "bongard/image.hpp"
#include "bongard/object_set.hpp"
#include "bongard/segment.hpp"
#include "bongard/split.hpp"

namespace bongard {

enum class Side : std::uint8_t { Left, Right };

constexpr Side opposite(Side s) noexcept { return s == Side::Left ? Side::Right : Side::Left; }

inline constexpr std::size_t kScenesPerSide = 6;
inline constexpr std::size_t kSceneCount = 2 * kScenesPerSide;

/// One example image: its figures plus every object reachable from them by
/// HULLS/HOLES transforms, with the pairwise relations the evaluator needs.
class Scene {
 public:
  Scene() = default;
  Scene(std::size_t index, Side side, int width, int height, std::vector<FigureObject> figures,
        const FeatureOptions& features);

  std::size_t index() const noexcept { return index_; }
  Side side() const noexcept { return side_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  /// Originals occupy indices [0, original_count()).
  const std::vector<FigureObject>& universe() const noexcept { return universe_; }
  const FigureObject& object(std::size_t i) const { return universe_[i]; }
  std::size_t original_count() const noexcept { return original_count_; }

  const ObjectSet& figures() const noexcept { return figures_; }
  const ObjectSet& of_shape(ShapeClass s) const noexcept { return by_shape_[static_cast<std::size_t>(s)]; }

  std::size_t hull_of(std::size_t i) const { return hull_of_[i]; }
  const ObjectSet& holes_of(std::size_t i) const { return holes_of_[i]; }
  /// Original figures lying inside object i.
  const ObjectSet& contents_of(std::size_t i) const { return contents_[i]; }
  /// Original figures that contain object i.
  const ObjectSet& containers_of(std::size_t i) const { return containers_[i]; }

  /// Boundary distance between two universe objects; computed on first use
  /// for pairs involving synthetic objects. Safe for concurrent callers.
  double distance(std::size_t i, std::size_t j) const;

  /// True if some original lies inside another original.
  bool has_nested_pair() const noexcept;

 private:
  struct DistanceMemo;

  std::size_t index_ = 0;
  Side side_ = Side::Left;
  int width_ = 0;
  int height_ = 0;
  std::vector<FigureObject> universe_;
  std::size_t original_count_ = 0;
  ObjectSet figures_;
  std::array<ObjectSet, 4> by_shape_;
  std::vector<std::size_t> hull_of_;
  std::vector<ObjectSet> holes_of_;
  std::vector<ObjectSet> contents_;
  std::vector<ObjectSet> containers_;
  std::vector<double> original_distances_;
  std::shared_ptr<DistanceMemo> memo_;
};

struct ProblemOptions {
  int threshold = kDefaultThreshold;
  SegmentOptions segment;
  FeatureOptions features;
  SplitOptions split;
  /// COLOR uses an absolute gap instead of the range fraction.
  double color_min_gap = 0.3;
  /// MORESIM*: required difference in log dispersion.
  double moresim_log_gap = 1.0;
  /// Dispersions are clamped below by this before taking logs.
  double dispersion_floor = 1e-6;
  /// ALIGNED: largest allowed spread of pairwise centroid angles.
  double aligned_tolerance_deg = 5.0;
  /// ALIGNED: sets larger than this use the greedy search.
  std::size_t aligned_exhaustive_limit = 10;
};

/// Twelve segmented scenes, left (0-5) then right (6-11), plus problem-wide
/// attribute statistics. Immutable once built.
class ProblemContext {
 public:
  const Scene& scene(std::size_t i) const { return scenes_[i]; }
  const std::array<Scene, kSceneCount>& scenes() const noexcept { return scenes_; }
  std::span<const Scene> left_scenes() const noexcept { return {scenes_.data(), kScenesPerSide}; }
  std::span<const Scene> right_scenes() const noexcept { return {scenes_.data() + kScenesPerSide, kScenesPerSide}; }
  std::span<const Scene> side_scenes(Side s) const noexcept { return s == Side::Left ? left_scenes() : right_scenes(); }

  /// Values of an attribute over every original figure of all twelve scenes
  /// (DISTANCE: each figure's nearest-neighbour distance within its scene).
  const std::vector<double>& attribute_pool(Attribute a) const { return pool_[static_cast<std::size_t>(a)]; }
  const std::optional<PerceptualSplit>& split(Attribute a) const { return splits_[static_cast<std::size_t>(a)]; }
  /// Where ORIENTATION is cut open for ordering comparisons.
  double orientation_origin() const noexcept { return orientation_origin_; }

  const ProblemOptions& options() const noexcept { return options_; }

  friend ProblemContext build_problem(std::span<const BinaryImage>, std::span<const BinaryImage>,
                                      const ProblemOptions&);

 private:
  std::array<Scene, kSceneCount> scenes_;
  std::array<std::vector<double>, kAttributeCount> pool_;
  std::array<std::optional<PerceptualSplit>, kAttributeCount> splits_;
  double orientation_origin_ = 0.0;
  ProblemOptions options_;
};

/// Segments and measures six left and six right images. Throws InputError
/// unless exactly six images are given per side.
ProblemContext build_problem(std::span<const BinaryImage> left_images, std::span<const BinaryImage> right_images,
                             const ProblemOptions& options = {});

/// Six left then six right image paths.
struct Manifest {
  std::vector<std::filesystem::path> left;
  std::vector<std::filesystem::path> right;
};

/// Plain text (one path per line, '#' comments) or JSON
/// ({"left": [...], "right": [...]}). Relative paths resolve against the
/// manifest's directory.
Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

ProblemContext load_problem(const Manifest& manifest, const ProblemOptions& options = {});

}  // namespace bongard
