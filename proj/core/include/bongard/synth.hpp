#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bongard/figure.hpp"
#include "bongard/geometry.hpp"
#include "bongard/image.hpp"
#include "bongard/pcfg.hpp"
#include "bongard/problem.hpp"

namespace bongard {

enum class ShapeKind : std::uint8_t { Circle, Triangle, Rectangle, Polygon };

/// One figure to draw. Coordinates are raster pixels (y grows downward).
struct ShapeSpec {
  ShapeKind kind = ShapeKind::Circle;
  double cx = 0.0;
  double cy = 0.0;
  /// Circle radius; for polygons the factor applied to `vertices` (or the
  /// circumradius of the default triangle, the half width of the default
  /// rectangle).
  double scale = 10.0;
  double aspect = 1.0;  // default rectangle: height / width
  double rotation = 0.0;
  bool solid = true;
  double stroke = 3.0;
  /// Unit-scale vertex offsets before rotation. Required for Polygon;
  /// optional for Triangle and Rectangle.
  std::vector<geometry::Vec2> vertices;
};

struct SceneSpec {
  int width = 160;
  int height = 160;
  std::vector<ShapeSpec> shapes;
};

/// Vertices of a polygonal shape in raster coordinates (empty for circles).
std::vector<geometry::Vec2> shape_polygon(const ShapeSpec& shape);
/// Largest distance from the centre to any point of the shape.
double shape_radius(const ShapeSpec& shape);
/// The class a correct recognizer should report (Polygon maps to Other).
ShapeClass expected_class(const ShapeSpec& shape);

/// Rasterizes pixel centres without anti-aliasing. Outline shapes keep the
/// pixels within `stroke` of the boundary. Throws InputError for shapes
/// leaving the canvas or strokes thinner than 2 px.
BinaryImage render(const SceneSpec& spec);

/// A random shape of the given kind centred at the origin: jittered
/// triangles, rectangles of varied aspect, irregular non-parallelogram
/// quadrangles (Polygon with 4 vertices) or, with `blob_vertices` > 4,
/// star-shaped irregular polygons.
ShapeSpec random_shape(ShapeKind kind, double radius, bool solid, Rng& rng, int blob_vertices = 4);

struct SynthProblem {
  std::string template_name;
  std::uint64_t seed = 0;
  std::array<SceneSpec, kSceneCount> scenes;
  std::vector<BinaryImage> left;
  std::vector<BinaryImage> right;
};

/// Names of the bundled templates.
std::vector<std::string_view> template_names();

/// Rules each template is built to satisfy.
std::vector<std::string> intended_rules(std::string_view template_name);

/// Six left and six right images realizing a template's contrast with
/// randomized positions, rotations, sizes and (where allowed) shapes and
/// fills. Draws are rejected until the intended rules hold, the figures are
/// recognized as drawn, and no attribute outside the template's contrast
/// separates the sides. Deterministic per seed. Throws InputError for an
/// unknown template.
SynthProblem make_problem(std::string_view template_name, std::uint64_t seed);

/// Writes left_1.pgm ... right_6.pgm plus manifest.txt into `dir` and
/// returns the manifest.
Manifest write_problem(const SynthProblem& problem, const std::filesystem::path& dir);

std::vector<BinaryImage> all_images(const SynthProblem& problem);

}  // namespace bongard
