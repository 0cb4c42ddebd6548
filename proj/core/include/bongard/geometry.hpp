#pragma once

#include <vector>

#include "bongard/mask.hpp"

namespace bongard::geometry {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Counter-clockwise (in raster coordinates) convex hull without collinear
/// vertices. Returns fewer than 3 points for degenerate input.
std::vector<IPoint> convex_hull(std::vector<IPoint> points);

/// Every lattice point inside or on the hull polygon. Degenerate hulls
/// (fewer than 3 vertices) rasterize the segment between them.
Mask rasterize_convex(const std::vector<IPoint>& hull, int frame_width, int frame_height);

/// Outer boundary of the (8-connected) pixel set as a closed sequence of
/// pixel centres, traced clockwise by Moore-neighbour following starting at
/// the first pixel in raster order. Only the component containing that pixel
/// is traced.
std::vector<IPoint> trace_outer_contour(const Mask& mask);

/// Length of the closed chain through `contour` (unit or diagonal steps).
double chain_length(const std::vector<IPoint>& contour);

/// Douglas-Peucker on a closed polygon; keeps the two mutually farthest
/// vertices as anchors.
std::vector<Vec2> simplify_closed(const std::vector<Vec2>& polygon, double tolerance);

/// Repeatedly removes the vertex with the smallest turning angle while that
/// angle is below `min_turn` radians.
std::vector<Vec2> drop_shallow_vertices(std::vector<Vec2> polygon, double min_turn);

double polygon_perimeter(const std::vector<Vec2>& polygon);

/// Absolute direction change at vertex i of a closed polygon, in [0, pi].
double turn_angle(const std::vector<Vec2>& polygon, std::size_t i);

/// Pixels of the mask with at least one 4-neighbour outside it.
std::vector<IPoint> boundary_pixels(const Mask& mask);

/// 4-connected components of (filled - mask), in raster order of their first pixel.
std::vector<Mask> hole_regions(const Mask& mask);

std::vector<Vec2> to_vec(const std::vector<IPoint>& points);

}  // namespace bongard::geometry
