#include "bongard/problem.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>

#include "bongard/error.hpp"
#include "json.hpp"

namespace bongard {

struct Scene::DistanceMemo {
  std::mutex mutex;
  std::unordered_map<std::size_t, double> values;
};

namespace {

// Index of an object with the same pixels among the synthetic part of the
// universe, if any.
std::optional<std::size_t> find_synthetic(const std::vector<FigureObject>& universe, std::size_t first_synthetic,
                                          const FigureObject& candidate) {
  for (std::size_t i = first_synthetic; i < universe.size(); ++i) {
    if (universe[i].pixel_count == candidate.pixel_count && universe[i].mask.same_pixels(candidate.mask)) return i;
  }
  return std::nullopt;
}

}  // namespace

Scene::Scene(std::size_t index, Side side, int width, int height, std::vector<FigureObject> figures,
             const FeatureOptions& features)
    : index_(index), side_(side), width_(width), height_(height), memo_(std::make_shared<DistanceMemo>()) {
  universe_ = std::move(figures);
  original_count_ = universe_.size();
  for (std::size_t i = 0; i < original_count_; ++i) {
    universe_[i].id = static_cast<int>(i);
    universe_[i].synthetic = false;
  }

  // Close the universe under HULLS and HOLES; identical synthetic regions are shared.
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    if (universe_.size() > ObjectSet::kCapacity) {
      throw InputError("scene " + std::to_string(index) + " has too many objects");
    }
    FigureObject hull = hull_object(universe_[i], features);
    std::size_t hull_index;
    if (auto found = find_synthetic(universe_, original_count_, hull)) {
      hull_index = *found;
    } else {
      hull.id = static_cast<int>(universe_.size());
      hull_index = universe_.size();
      universe_.push_back(std::move(hull));
    }
    hull_of_.push_back(hull_index);

    ObjectSet holes;
    for (auto& hole : hole_objects(universe_[i], features)) {
      if (auto found = find_synthetic(universe_, original_count_, hole)) {
        holes.insert(*found);
      } else {
        hole.id = static_cast<int>(universe_.size());
        holes.insert(universe_.size());
        universe_.push_back(std::move(hole));
      }
    }
    holes_of_.push_back(holes);
  }
  if (universe_.size() > ObjectSet::kCapacity) {
    throw InputError("scene " + std::to_string(index) + " has too many objects");
  }

  for (std::size_t i = 0; i < original_count_; ++i) {
    figures_.insert(i);
    by_shape_[static_cast<std::size_t>(universe_[i].shape)].insert(i);
  }

  const std::size_t n = universe_.size();
  contents_.assign(n, ObjectSet{});
  containers_.assign(n, ObjectSet{});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || (a >= original_count_ && b >= original_count_)) continue;
      if (!inside(universe_[a], universe_[b])) continue;
      if (a < original_count_) contents_[b].insert(a);
      if (b < original_count_) containers_[a].insert(b);
    }
  }

  original_distances_.assign(original_count_ * original_count_, 0.0);
  for (std::size_t a = 0; a < original_count_; ++a) {
    for (std::size_t b = a + 1; b < original_count_; ++b) {
      const double d = min_pair_distance(universe_[a], universe_[b]);
      original_distances_[a * original_count_ + b] = d;
      original_distances_[b * original_count_ + a] = d;
    }
  }
}

double Scene::distance(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  if (i < original_count_ && j < original_count_) return original_distances_[i * original_count_ + j];
  const std::size_t key = std::min(i, j) * ObjectSet::kCapacity + std::max(i, j);
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->values.find(key); it != memo_->values.end()) return it->second;
  }
  const double d = min_pair_distance(universe_[i], universe_[j]);
  std::lock_guard lock(memo_->mutex);
  memo_->values.emplace(key, d);
  return d;
}

bool Scene::has_nested_pair() const noexcept {
  for (std::size_t b = 0; b < original_count_; ++b)
    if (!contents_[b].empty()) return true;
  return false;
}

ProblemContext build_problem(std::span<const BinaryImage> left_images, std::span<const BinaryImage> right_images,
                             const ProblemOptions& options) {
  if (left_images.size() != kScenesPerSide || right_images.size() != kScenesPerSide) {
    throw InputError("a problem needs exactly 6 left and 6 right images, got " + std::to_string(left_images.size()) +
                     " and " + std::to_string(right_images.size()));
  }
  ProblemContext ctx;
  ctx.options_ = options;
  for (std::size_t i = 0; i < kSceneCount; ++i) {
    const Side side = i < kScenesPerSide ? Side::Left : Side::Right;
    const BinaryImage& image = side == Side::Left ? left_images[i] : right_images[i - kScenesPerSide];
    if (image.empty()) throw InputError("image " + std::to_string(i + 1) + " has zero area");
    auto figures = segment(image, options.segment);
    for (auto& f : figures) describe(f, options.features);
    ctx.scenes_[i] = Scene(i, side, image.width(), image.height(), std::move(figures), options.features);
  }

  for (const Scene& scene : ctx.scenes_) {
    for (std::size_t i = 0; i < scene.original_count(); ++i) {
      const AttributeVector& a = scene.object(i).attributes;
      for (Attribute attr : kAllAttributes) {
        if (attr == Attribute::Distance) continue;
        ctx.pool_[static_cast<std::size_t>(attr)].push_back(a.value(attr));
      }
      if (scene.original_count() >= 2) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < scene.original_count(); ++j)
          if (j != i) nearest = std::min(nearest, scene.distance(i, j));
        ctx.pool_[static_cast<std::size_t>(Attribute::Distance)].push_back(nearest);
      }
    }
  }

  for (Attribute attr : kAllAttributes) {
    SplitOptions rule = options.split;
    if (attr == Attribute::Color) rule.min_absolute_gap = options.color_min_gap;
    const auto idx = static_cast<std::size_t>(attr);
    ctx.splits_[idx] = perceptual_split(ctx.pool_[idx], is_circular(attr), rule);
  }
  ctx.orientation_origin_ = circular_origin(ctx.pool_[static_cast<std::size_t>(Attribute::Orientation)]);
  return ctx;
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& entry) {
  std::filesystem::path p(entry);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto base = path.parent_path();

  std::vector<std::string> entries;
  Manifest manifest;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
      for (const auto& e : doc.at("left")) manifest.left.push_back(resolve(base, e.get<std::string>()));
      for (const auto& e : doc.at("right")) manifest.right.push_back(resolve(base, e.get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("manifest '" + path.string() + "': " + e.what());
    }
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      const auto e = line.find_last_not_of(" \t\r");
      entries.push_back(line.substr(b, e - b + 1));
    }
    if (entries.size() != kSceneCount) {
      throw InputError("manifest '" + path.string() + "' lists " + std::to_string(entries.size()) +
                       " images, expected 12");
    }
    for (std::size_t i = 0; i < kSceneCount; ++i) {
      (i < kScenesPerSide ? manifest.left : manifest.right).push_back(resolve(base, entries[i]));
    }
  }
  if (manifest.left.size() != kScenesPerSide || manifest.right.size() != kScenesPerSide) {
    throw InputError("manifest '" + path.string() + "' must list 6 left and 6 right images");
  }
  return manifest;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write manifest '" + path.string() + "'");
  out << "# six left images, then six right images\n";
  const auto base = path.parent_path();
  for (const auto* side : {&manifest.left, &manifest.right}) {
    for (const auto& p : *side) {
      std::error_code ec;
      auto rel = std::filesystem::relative(p, base, ec);
      out << (ec || rel.empty() ? p.string() : rel.string()) << '\n';
    }
  }
}

ProblemContext load_problem(const Manifest& manifest, const ProblemOptions& options) {
  std::vector<BinaryImage> left;
  std::vector<BinaryImage> right;
  for (const auto& p : manifest.left) left.push_back(load_binary_image(p, options.threshold));
  for (const auto& p : manifest.right) right.push_back(load_binary_image(p, options.threshold));
  return build_problem(left, right, options);
}

}  // namespace bongard
