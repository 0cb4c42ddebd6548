#pragma once

#include <vector>

#include "bongard/figure.hpp"

namespace bongard {

struct FeatureOptions {
  double corner_tolerance = 0.02;     // polygon simplification, fraction of perimeter
  double corner_min_turn_deg = 15.0;  // vertices turning less are not corners
  double circle_compactness = 0.85;
  double hull_area_ratio = 0.9;
  double parallel_tolerance_deg = 10.0;
  double solid_color = 0.5;
};

/// Nine per-object measurements (DISTANCE is relational, see min_pair_distance).
/// Shape-describing attributes are taken from the filled outline so that an
/// outline figure and its solid counterpart differ only in color and size.
AttributeVector compute_attributes(const FigureObject& obj, const FeatureOptions& options = {});

/// Expects attributes to be populated.
ShapeClass classify_shape(const FigureObject& obj, const FeatureOptions& options = {});
FillClass classify_fill(const FigureObject& obj, const FeatureOptions& options = {});

/// Populates attributes, shape and fill. Synthetic regions are always solid.
void describe(FigureObject& obj, const FeatureOptions& options = {});

/// Number of corners of the simplified outer boundary of a filled mask.
int count_corners(const Mask& filled, const FeatureOptions& options = {});

/// True iff every pixel of `a` lies in the filled region of `b` and the two
/// masks are disjoint.
bool inside(const FigureObject& a, const FigureObject& b);

enum class TransformKind : std::uint8_t { Hulls, Holes };

/// Filled convex hull of an object, as a new synthetic object.
FigureObject hull_object(const FigureObject& obj, const FeatureOptions& options = {});
/// One synthetic object per enclosed background region of the object.
std::vector<FigureObject> hole_objects(const FigureObject& obj, const FeatureOptions& options = {});

/// HULLS maps each object to its hull; HOLES to its holes (possibly none).
std::vector<FigureObject> transform(const std::vector<FigureObject>& objects, TransformKind kind,
                                    const FeatureOptions& options = {});

/// Smallest Euclidean distance between boundary pixel centres; 0 when the
/// figures overlap or touch (8-adjacent).
double min_pair_distance(const FigureObject& a, const FigureObject& b);

}  // namespace bongard
