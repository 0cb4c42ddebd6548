#include "bongard/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bongard/geometry.hpp"

namespace bongard {

namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double deg) { return deg * kPi / 180.0; }

struct Moments {
  double orientation = 0.0;
  double elongation = 1.0;
};

// Covariance of pixel centres in page coordinates (y up); each pixel also
// contributes the 1/12 variance of a unit square.
Moments second_moments(const Mask& mask) {
  double n = 0.0, sx = 0.0, sy = 0.0;
  mask.for_each([&](int x, int y) {
    n += 1.0;
    sx += x;
    sy -= y;
  });
  if (n == 0.0) return {};
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  mask.for_each([&](int x, int y) {
    const double dx = x - mx;
    const double dy = -y - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  });
  sxx = sxx / n + 1.0 / 12.0;
  syy = syy / n + 1.0 / 12.0;
  sxy /= n;
  const double half_diff = 0.5 * (sxx - syy);
  const double root = std::sqrt(half_diff * half_diff + sxy * sxy);
  const double mean = 0.5 * (sxx + syy);
  const double lmax = mean + root;
  const double lmin = std::max(mean - root, 1e-12);
  Moments m;
  m.elongation = std::sqrt(lmax / lmin);
  if (root > 1e-9 * mean) {
    double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    theta = std::fmod(theta, kPi);
    if (theta < 0.0) theta += kPi;
    if (theta >= kPi) theta -= kPi;
    m.orientation = theta;
  }
  return m;
}

std::vector<IPoint> hull_of_mask(const Mask& filled) {
  return geometry::convex_hull(geometry::boundary_pixels(filled));
}

std::vector<geometry::Vec2> simplified(const std::vector<geometry::Vec2>& poly, const FeatureOptions& options) {
  if (poly.size() < 3) return poly;
  const double tol = options.corner_tolerance * geometry::polygon_perimeter(poly);
  auto simple = geometry::simplify_closed(poly, tol);
  if (simple.size() < 3) return simple;
  return geometry::drop_shallow_vertices(std::move(simple), deg2rad(options.corner_min_turn_deg));
}

int polygon_corners(const std::vector<geometry::Vec2>& poly) {
  return poly.size() < 3 ? 0 : static_cast<int>(poly.size());
}

double direction_difference(geometry::Vec2 a0, geometry::Vec2 a1, geometry::Vec2 b0, geometry::Vec2 b1) {
  double t1 = std::atan2(a1.y - a0.y, a1.x - a0.x);
  double t2 = std::atan2(b1.y - b0.y, b1.x - b0.x);
  double d = std::fmod(std::fabs(t1 - t2), kPi);
  return std::min(d, kPi - d);
}

}  // namespace

int count_corners(const Mask& filled, const FeatureOptions& options) {
  const auto contour = geometry::trace_outer_contour(filled);
  return polygon_corners(simplified(geometry::to_vec(contour), options));
}

AttributeVector compute_attributes(const FigureObject& obj, const FeatureOptions& options) {
  AttributeVector a;
  const double n = static_cast<double>(std::max<std::size_t>(obj.pixel_count, 1));
  a.xpos = obj.centroid.x;
  a.ypos = static_cast<double>(obj.mask.frame_height() - 1) - obj.centroid.y;
  a.size = std::log(n);

  const Mask& filled = obj.filled;
  const double filled_area = static_cast<double>(std::max<std::size_t>(filled.count(), 1));
  a.color = std::min(1.0, n / filled_area);

  const Moments m = second_moments(filled);
  a.orientation = m.orientation;
  a.elongation = m.elongation;

  const auto contour = geometry::trace_outer_contour(filled);
  const double perimeter = geometry::chain_length(contour) + kPi;
  a.compactness = std::min(1.0, 4.0 * kPi * filled_area / (perimeter * perimeter));

  const Mask hull = geometry::rasterize_convex(hull_of_mask(filled), filled.frame_width(), filled.frame_height());
  const double hull_area = static_cast<double>(std::max<std::size_t>(hull.count(), 1));
  a.convexity = std::min(1.0, filled_area / hull_area);

  a.ncorners = polygon_corners(simplified(geometry::to_vec(contour), options));
  return a;
}

ShapeClass classify_shape(const FigureObject& obj, const FeatureOptions& options) {
  const AttributeVector& a = obj.attributes;
  if (a.convexity <= options.hull_area_ratio) return ShapeClass::Other;
  if (a.compactness > options.circle_compactness) return ShapeClass::Circle;

  const auto hull = hull_of_mask(obj.filled);
  const auto poly = simplified(geometry::to_vec(hull), options);
  if (poly.size() == 3) return ShapeClass::Triangle;
  if (poly.size() == 4) {
    const double tol = deg2rad(options.parallel_tolerance_deg);
    const bool parallel = direction_difference(poly[0], poly[1], poly[2], poly[3]) <= tol &&
                          direction_difference(poly[1], poly[2], poly[3], poly[0]) <= tol;
    if (parallel) return ShapeClass::Rectangle;
  }
  return ShapeClass::Other;
}

FillClass classify_fill(const FigureObject& obj, const FeatureOptions& options) {
  return obj.attributes.color >= options.solid_color ? FillClass::Solid : FillClass::Outline;
}

void describe(FigureObject& obj, const FeatureOptions& options) {
  obj.attributes = compute_attributes(obj, options);
  obj.shape = classify_shape(obj, options);
  obj.fill = obj.synthetic ? FillClass::Solid : classify_fill(obj, options);
}

bool inside(const FigureObject& a, const FigureObject& b) {
  if (a.pixel_count == 0) return false;
  return a.mask.subset_of(b.filled) && !a.mask.intersects(b.mask);
}

FigureObject hull_object(const FigureObject& obj, const FeatureOptions& options) {
  const Mask& filled = obj.filled;
  Mask hull = geometry::rasterize_convex(hull_of_mask(filled), filled.frame_width(), filled.frame_height());
  FigureObject out = FigureObject::from_mask(std::move(hull), obj.id, true);
  describe(out, options);
  return out;
}

std::vector<FigureObject> hole_objects(const FigureObject& obj, const FeatureOptions& options) {
  std::vector<FigureObject> out;
  for (auto& region : geometry::hole_regions(obj.mask)) {
    FigureObject hole = FigureObject::from_mask(std::move(region), obj.id, true);
    describe(hole, options);
    out.push_back(std::move(hole));
  }
  return out;
}

std::vector<FigureObject> transform(const std::vector<FigureObject>& objects, TransformKind kind,
                                    const FeatureOptions& options) {
  std::vector<FigureObject> out;
  for (const auto& obj : objects) {
    if (kind == TransformKind::Hulls) {
      out.push_back(hull_object(obj, options));
    } else {
      for (auto& h : hole_objects(obj, options)) out.push_back(std::move(h));
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

double min_pair_distance(const FigureObject& a, const FigureObject& b) {
  if (a.mask.intersects(b.mask)) return 0.0;
  const auto pa = geometry::boundary_pixels(a.mask);
  const auto pb = geometry::boundary_pixels(b.mask);
  if (pa.empty() || pb.empty()) return std::numeric_limits<double>::infinity();
  long best = std::numeric_limits<long>::max();
  for (const auto& p : pa) {
    for (const auto& q : pb) {
      const long dx = p.x - q.x;
      const long dy = p.y - q.y;
      best = std::min(best, dx * dx + dy * dy);
    }
  }
  if (best <= 2) return 0.0;
  return std::sqrt(static_cast<double>(best));
}

}  // namespace bongard
