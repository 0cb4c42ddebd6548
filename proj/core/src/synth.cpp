#include "bongard/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "bongard/error.hpp"
#include "bongard/likelihood.hpp"
#include "bongard/rule.hpp"

namespace bongard {

using geometry::Vec2;

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<Vec2> default_vertices(const ShapeSpec& s) {
  switch (s.kind) {
    case ShapeKind::Triangle: {
      std::vector<Vec2> v;
      for (int k = 0; k < 3; ++k) {
        const double a = -kPi / 2 + k * 2 * kPi / 3;
        v.push_back({std::cos(a), std::sin(a)});
      }
      return v;
    }
    case ShapeKind::Rectangle:
      return {{-1.0, -s.aspect}, {1.0, -s.aspect}, {1.0, s.aspect}, {-1.0, s.aspect}};
    default: return {};
  }
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

bool point_in_polygon(Vec2 p, const std::vector<Vec2>& poly) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

double cross(Vec2 o, Vec2 a, Vec2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool strictly_convex(const std::vector<Vec2>& poly) {
  const std::size_t n = poly.size();
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = cross(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]);
    const int s = c > 1e-9 ? 1 : (c < -1e-9 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) return false;
    sign = s;
  }
  return true;
}

double direction_gap(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  double t = std::abs(std::atan2(b.y - a.y, b.x - a.x) - std::atan2(d.y - c.y, d.x - c.x));
  t = std::fmod(t, kPi);
  return std::min(t, kPi - t);
}

}  // namespace

std::vector<Vec2> shape_polygon(const ShapeSpec& shape) {
  if (shape.kind == ShapeKind::Circle) return {};
  const auto& unit = shape.vertices.empty() ? default_vertices(shape) : shape.vertices;
  const double c = std::cos(shape.rotation);
  const double s = std::sin(shape.rotation);
  std::vector<Vec2> out;
  out.reserve(unit.size());
  for (const auto& v : unit)
    out.push_back({shape.cx + shape.scale * (c * v.x - s * v.y), shape.cy + shape.scale * (s * v.x + c * v.y)});
  return out;
}

double shape_radius(const ShapeSpec& shape) {
  if (shape.kind == ShapeKind::Circle) return shape.scale;
  double r = 0.0;
  for (const auto& v : shape_polygon(shape)) r = std::max(r, std::hypot(v.x - shape.cx, v.y - shape.cy));
  return r;
}

ShapeClass expected_class(const ShapeSpec& shape) {
  switch (shape.kind) {
    case ShapeKind::Circle: return ShapeClass::Circle;
    case ShapeKind::Triangle: return ShapeClass::Triangle;
    case ShapeKind::Rectangle: return ShapeClass::Rectangle;
    case ShapeKind::Polygon: break;
  }
  return ShapeClass::Other;
}

BinaryImage render(const SceneSpec& spec) {
  BinaryImage image(spec.width, spec.height);
  for (const auto& shape : spec.shapes) {
    if (shape.kind == ShapeKind::Polygon && shape.vertices.size() < 3)
      throw InputError("polygon shape needs at least three vertices");
    if (!shape.solid && shape.stroke < 2.0) throw InputError("outline stroke must be at least 2 px");
    const double r = shape_radius(shape);
    if (shape.cx - r < 0 || shape.cy - r < 0 || shape.cx + r > spec.width || shape.cy + r > spec.height)
      throw InputError("shape does not fit the canvas");

    const auto poly = shape_polygon(shape);
    const int x0 = std::max(0, static_cast<int>(std::floor(shape.cx - r)) - 1);
    const int y0 = std::max(0, static_cast<int>(std::floor(shape.cy - r)) - 1);
    const int x1 = std::min(spec.width - 1, static_cast<int>(std::ceil(shape.cx + r)) + 1);
    const int y1 = std::min(spec.height - 1, static_cast<int>(std::ceil(shape.cy + r)) + 1);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const Vec2 p{x + 0.5, y + 0.5};
        bool on = false;
        if (shape.kind == ShapeKind::Circle) {
          const double d = std::hypot(p.x - shape.cx, p.y - shape.cy);
          on = d <= shape.scale && (shape.solid || d >= shape.scale - shape.stroke);
        } else if (point_in_polygon(p, poly)) {
          on = shape.solid;
          for (std::size_t i = 0; !on && i < poly.size(); ++i)
            on = segment_distance(p, poly[i], poly[(i + 1) % poly.size()]) <= shape.stroke;
        }
        if (on) image.set(x, y);
      }
    }
  }
  return image;
}

ShapeSpec random_shape(ShapeKind kind, double radius, bool solid, Rng& rng, int blob_vertices) {
  ShapeSpec s;
  s.kind = kind;
  s.solid = solid;
  s.scale = radius;
  s.stroke = 3.0;
  switch (kind) {
    case ShapeKind::Circle: break;
    case ShapeKind::Triangle: {
      s.rotation = uniform(rng, 0.0, 2 * kPi);
      for (int k = 0; k < 3; ++k) {
        const double a = -kPi / 2 + k * 2 * kPi / 3 + uniform(rng, -0.26, 0.26);
        const double f = uniform(rng, 0.85, 1.0);
        s.vertices.push_back({f * std::cos(a), f * std::sin(a)});
      }
      break;
    }
    case ShapeKind::Rectangle: {
      s.aspect = uniform(rng, 0.3, 1.0);
      s.scale = radius / std::hypot(1.0, s.aspect);
      s.rotation = uniform(rng, 0.0, kPi);
      break;
    }
    case ShapeKind::Polygon: {
      s.rotation = uniform(rng, 0.0, 2 * kPi);
      const int n = std::max(3, blob_vertices);
      for (;;) {
        s.vertices.clear();
        for (int k = 0; k < n; ++k) {
          double a = 2 * kPi * k / n;
          double f = 1.0;
          if (n == 4) {
            a += uniform(rng, -0.45, 0.45);
            f = uniform(rng, 0.65, 1.0);
          } else {
            a += uniform(rng, -0.1, 0.1) * 2 * kPi / n;
            f = k % 2 == 0 ? uniform(rng, 0.85, 1.0) : uniform(rng, 0.4, 0.65);
          }
          s.vertices.push_back({f * std::cos(a), f * std::sin(a)});
        }
        if (n != 4) break;
        // A quadrangle that no recognizer should call a rectangle.
        const auto& v = s.vertices;
        const double tol = 18.0 * kPi / 180.0;
        if (strictly_convex(v) && (direction_gap(v[0], v[1], v[2], v[3]) > tol || direction_gap(v[1], v[2], v[3], v[0]) > tol))
          break;
      }
      break;
    }
  }
  return s;
}

namespace {

struct Template {
  std::string_view name;
  std::vector<std::string> intended;
  /// Attributes allowed to separate the sides through GREATERLA.
  std::vector<Attribute> contrast;
};

const std::vector<Template>& templates() {
  static const std::vector<Template> list = {
      {"bp1_empty_vs_nonempty", {"RIGHT:EXISTS(FIGURES)"}, {}},
      {"bp2_large_vs_small", {"LEFT:GREATERLA(FIGURES,SIZE)"}, {Attribute::Size}},
      {"bp3_outline_vs_solid", {"LEFT:EXISTS(OUTLINE(FIGURES))", "RIGHT:GREATERLA(FIGURES,COLOR)"}, {Attribute::Color}},
      {"bp6_triangle_vs_quadrangle", {"LEFT:EXISTS(TRIANGLES)"}, {Attribute::NCorners}},
      {"bp23_one_vs_two", {"LEFT:EXACTLY(1,FIGURES)", "RIGHT:EXACTLY(2,FIGURES)"}, {}},
      {"bp47_nesting", {"LEFT:EXISTS(INSIDE(CIRCLES))", "RIGHT:EXISTS(INSIDE(TRIANGLES))"}, {}},
  };
  return list;
}

const Template& find_template(std::string_view name) {
  for (const auto& t : templates())
    if (t.name == name) return t;
  throw InputError("unknown template '" + std::string(name) + "'");
}

constexpr int kCanvas = 160;

ShapeKind any_kind(Rng& rng) { return static_cast<ShapeKind>(uniform_int(rng, 0, 3)); }

/// Three solid and three outline fills in random order.
std::array<bool, kScenesPerSide> balanced_fills(Rng& rng) {
  std::array<bool, kScenesPerSide> f = {true, true, true, false, false, false};
  std::shuffle(f.begin(), f.end(), rng);
  return f;
}

/// Places shapes (already sized, centred at the origin) without overlap.
bool place(std::vector<ShapeSpec>& shapes, Rng& rng, double gap = 8.0, double margin = 3.0) {
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const double r = shape_radius(shapes[i]);
    if (2 * (r + margin) >= kCanvas) return false;
    bool ok = false;
    for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
      shapes[i].cx = uniform(rng, r + margin, kCanvas - r - margin);
      shapes[i].cy = uniform(rng, r + margin, kCanvas - r - margin);
      ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = std::hypot(shapes[i].cx - shapes[j].cx, shapes[i].cy - shapes[j].cy) >= r + shape_radius(shapes[j]) + gap;
    }
    if (!ok) return false;
  }
  return true;
}

SceneSpec scene_of(std::vector<ShapeSpec> shapes) {
  SceneSpec s;
  s.width = kCanvas;
  s.height = kCanvas;
  s.shapes = std::move(shapes);
  return s;
}

using Scenes = std::array<SceneSpec, kSceneCount>;

std::optional<Scenes> draw_scenes(std::string_view name, Rng& rng) {
  Scenes scenes;
  auto single = [&](std::size_t k, ShapeSpec shape) {
    std::vector<ShapeSpec> v{std::move(shape)};
    if (!place(v, rng)) return false;
    scenes[k] = scene_of(std::move(v));
    return true;
  };

  if (name == "bp1_empty_vs_nonempty") {
    const auto fills = balanced_fills(rng);
    for (std::size_t k = 0; k < kScenesPerSide; ++k) scenes[k] = scene_of({});
    for (std::size_t k = kScenesPerSide; k < kSceneCount; ++k) {
      std::vector<ShapeSpec> v;
      const int n = uniform_int(rng, 1, 3);
      for (int i = 0; i < n; ++i)
        v.push_back(random_shape(any_kind(rng), uniform(rng, 14, 30), fills[k - kScenesPerSide], rng));
      if (!place(v, rng)) return std::nullopt;
      scenes[k] = scene_of(std::move(v));
    }
    return scenes;
  }
  if (name == "bp2_large_vs_small") {
    for (std::size_t k = 0; k < kSceneCount; ++k) {
      const bool left = k < kScenesPerSide;
      const double r = left ? uniform(rng, 46, 66) : uniform(rng, 12, 20);
      if (!single(k, random_shape(any_kind(rng), r, true, rng))) return std::nullopt;
    }
    return scenes;
  }
  if (name == "bp3_outline_vs_solid") {
    for (std::size_t k = 0; k < kSceneCount; ++k) {
      const bool left = k < kScenesPerSide;
      const double r = left ? uniform(rng, 22, 55) : uniform(rng, 13, 32);
      if (!single(k, random_shape(any_kind(rng), r, !left, rng))) return std::nullopt;
    }
    return scenes;
  }
  if (name == "bp6_triangle_vs_quadrangle") {
    const auto fl = balanced_fills(rng);
    const auto fr = balanced_fills(rng);
    for (std::size_t k = 0; k < kSceneCount; ++k) {
      const bool left = k < kScenesPerSide;
      const ShapeKind kind = left ? ShapeKind::Triangle : (k % 2 == 0 ? ShapeKind::Rectangle : ShapeKind::Polygon);
      const bool solid = left ? fl[k] : fr[k - kScenesPerSide];
      if (!single(k, random_shape(kind, uniform(rng, 20, 52), solid, rng))) return std::nullopt;
    }
    return scenes;
  }
  if (name == "bp23_one_vs_two") {
    for (std::size_t k = 0; k < kSceneCount; ++k) {
      const int n = k < kScenesPerSide ? 1 : 2;
      std::vector<ShapeSpec> v;
      for (int i = 0; i < n; ++i)
        v.push_back(random_shape(any_kind(rng), uniform(rng, 14, 30), uniform_int(rng, 0, 1) == 1, rng));
      if (!place(v, rng, 10.0)) return std::nullopt;
      scenes[k] = scene_of(std::move(v));
    }
    return scenes;
  }
  if (name == "bp47_nesting") {
    for (std::size_t k = 0; k < kSceneCount; ++k) {
      const bool left = k < kScenesPerSide;
      ShapeSpec outer;
      ShapeSpec inner;
      double room = 0.0;
      if (left) {
        outer = random_shape(ShapeKind::Circle, uniform(rng, 40, 58), false, rng);
        // small outline triangles close up into blobs, so the inner one is solid
        inner = random_shape(ShapeKind::Triangle, uniform(rng, 12, 18), true, rng);
        room = outer.scale - outer.stroke - shape_radius(inner) - 5.0;
      } else {
        outer = random_shape(ShapeKind::Triangle, uniform(rng, 56, 70), false, rng);
        outer.vertices.clear();  // regular, so the incircle is predictable
        inner = random_shape(ShapeKind::Circle, uniform(rng, 10, 13), uniform_int(rng, 0, 1) == 1, rng);
        room = outer.scale / 2 - outer.stroke - inner.scale - 5.0;
      }
      std::vector<ShapeSpec> v{outer};
      if (!place(v, rng)) return std::nullopt;
      const double a = uniform(rng, 0, 2 * kPi);
      const double d = uniform(rng, 0, std::max(0.0, room));
      inner.cx = v[0].cx + d * std::cos(a);
      inner.cy = v[0].cy + d * std::sin(a);
      v.push_back(inner);
      scenes[k] = scene_of(std::move(v));
    }
    return scenes;
  }
  return std::nullopt;
}

/// Recognized (shape, fill) pairs must match what was drawn, scene by scene.
bool recognized_as_drawn(const ProblemContext& ctx, const Scenes& scenes) {
  for (std::size_t k = 0; k < kSceneCount; ++k) {
    const Scene& scene = ctx.scene(k);
    if (scene.original_count() != scenes[k].shapes.size()) return false;
    std::vector<std::pair<int, int>> drawn, seen;
    for (const auto& s : scenes[k].shapes) drawn.emplace_back(static_cast<int>(expected_class(s)), s.solid ? 0 : 1);
    for (std::size_t i = 0; i < scene.original_count(); ++i)
      seen.emplace_back(static_cast<int>(scene.object(i).shape), static_cast<int>(scene.object(i).fill));
    std::sort(drawn.begin(), drawn.end());
    std::sort(seen.begin(), seen.end());
    if (drawn != seen) return false;
  }
  return true;
}

bool acceptable(const Template& t, const ProblemContext& ctx, const Scenes& scenes) {
  if (!recognized_as_drawn(ctx, scenes)) return false;
  for (const auto& text : t.intended)
    if (!compatibility(parse_rule(text), ctx).compatible) return false;
  for (Attribute a : kAllAttributes) {
    if (a == Attribute::Distance || std::find(t.contrast.begin(), t.contrast.end(), a) != t.contrast.end()) continue;
    for (const char* side : {"LEFT", "RIGHT"}) {
      const std::string text = std::string(side) + ":GREATERLA(FIGURES," + std::string(attribute_name(a)) + ")";
      if (compatibility(parse_rule(text), ctx).compatible) return false;
    }
  }
  if (t.name == "bp2_large_vs_small") {
    std::size_t smallest_left = SIZE_MAX, largest_right = 0;
    for (const auto& s : ctx.left_scenes())
      for (std::size_t i = 0; i < s.original_count(); ++i) smallest_left = std::min(smallest_left, s.object(i).pixel_count);
    for (const auto& s : ctx.right_scenes())
      for (std::size_t i = 0; i < s.original_count(); ++i) largest_right = std::max(largest_right, s.object(i).pixel_count);
    if (smallest_left < 4 * largest_right) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string_view> template_names() {
  std::vector<std::string_view> out;
  for (const auto& t : templates()) out.push_back(t.name);
  return out;
}

std::vector<std::string> intended_rules(std::string_view template_name) { return find_template(template_name).intended; }

SynthProblem make_problem(std::string_view template_name, std::uint64_t seed) {
  const Template& t = find_template(template_name);
  for (std::uint32_t attempt = 0; attempt < 2000; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), attempt};
    Rng rng(seq);
    auto scenes = draw_scenes(t.name, rng);
    if (!scenes) continue;
    SynthProblem p;
    p.template_name = std::string(t.name);
    p.seed = seed;
    p.scenes = std::move(*scenes);
    for (std::size_t k = 0; k < kSceneCount; ++k)
      (k < kScenesPerSide ? p.left : p.right).push_back(render(p.scenes[k]));
    const ProblemContext ctx = build_problem(p.left, p.right);
    if (acceptable(t, ctx, p.scenes)) return p;
  }
  throw InputError("template '" + std::string(template_name) + "' produced no acceptable problem");
}

std::vector<BinaryImage> all_images(const SynthProblem& problem) {
  std::vector<BinaryImage> out = problem.left;
  out.insert(out.end(), problem.right.begin(), problem.right.end());
  return out;
}

Manifest write_problem(const SynthProblem& problem, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Manifest m;
  for (std::size_t k = 0; k < kSceneCount; ++k) {
    const bool left = k < kScenesPerSide;
    const auto path = dir / ((left ? "left_" : "right_") + std::to_string(k % kScenesPerSide + 1) + ".pgm");
    save_pgm(left ? problem.left[k] : problem.right[k - kScenesPerSide], path);
    (left ? m.left : m.right).push_back(path);
  }
  save_manifest(m, dir / "manifest.txt");
  return m;
}

}  // namespace bongard
