#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string_view>

#include "bongard/mask.hpp"

namespace bongard {

/// Numeric attributes, in the order of the grammar's A-productions.
enum class Attribute : std::uint8_t {
  XPos,
  YPos,
  Distance,
  Orientation,
  NCorners,
  Color,
  Size,
  Compactness,
  Convexity,
  Elongation,
};
inline constexpr std::size_t kAttributeCount = 10;

std::string_view attribute_name(Attribute a) noexcept;

inline constexpr std::array<Attribute, kAttributeCount> kAllAttributes = {
    Attribute::XPos,    Attribute::YPos,        Attribute::Distance,  Attribute::Orientation, Attribute::NCorners,
    Attribute::Color,   Attribute::Size,        Attribute::Compactness, Attribute::Convexity, Attribute::Elongation};

/// ORIENTATION is the only attribute living on a circle (period pi).
constexpr bool is_circular(Attribute a) noexcept { return a == Attribute::Orientation; }

enum class ShapeClass : std::uint8_t { Circle, Triangle, Rectangle, Other };
enum class FillClass : std::uint8_t { Solid, Outline };

std::string_view shape_name(ShapeClass s) noexcept;
std::string_view fill_name(FillClass f) noexcept;

/// Per-object measurements. DISTANCE is relational and not stored here.
struct AttributeVector {
  double xpos = 0.0;         // centroid x, pixels
  double ypos = 0.0;         // centroid y, pixels, larger = higher on the page
  double size = 0.0;         // ln(pixel count)
  double orientation = 0.0;  // [0, pi)
  double convexity = 1.0;    // filled area / filled hull area
  double compactness = 1.0;  // 4 pi A / P^2 of the filled outline
  double elongation = 1.0;   // sqrt(lambda_max / lambda_min)
  double color = 1.0;        // pixel count / filled area
  int ncorners = 0;

  /// Value of a non-relational attribute; DISTANCE yields NaN.
  double value(Attribute a) const noexcept;
};

struct Centroid {
  double x = 0.0;
  double y = 0.0;
};

/// One connected foreground component (or a synthetic region produced by a
/// HULLS/HOLES transform) together with its measurements.
struct FigureObject {
  int id = 0;
  Mask mask;
  Mask filled;  // mask with enclosed background filled in
  std::size_t pixel_count = 0;
  Centroid centroid;  // raster coordinates
  AttributeVector attributes;
  ShapeClass shape = ShapeClass::Other;
  FillClass fill = FillClass::Solid;
  bool synthetic = false;

  /// Fills mask-derived fields (pixel_count, centroid, filled). Attributes and
  /// classes are left for the feature extractor.
  static FigureObject from_mask(Mask mask, int id, bool synthetic = false);
};

}  // namespace bongard
