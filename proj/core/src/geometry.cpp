#include "bongard/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace bongard::geometry {

namespace {

std::int64_t cross(IPoint o, IPoint a, IPoint b) {
  return static_cast<std::int64_t>(a.x - o.x) * (b.y - o.y) - static_cast<std::int64_t>(a.y - o.y) * (b.x - o.x);
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return std::hypot(p.x - a.x, p.y - a.y);
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

// Open-chain Douglas-Peucker over polygon[first..last] (indices mod n).
void simplify_range(const std::vector<Vec2>& poly, std::size_t first, std::size_t last, double tol,
                    std::vector<std::size_t>& keep) {
  const std::size_t n = poly.size();
  std::size_t span = (last + n - first) % n;
  if (span < 2) return;
  double best = -1.0;
  std::size_t best_idx = first;
  for (std::size_t k = 1; k < span; ++k) {
    const std::size_t idx = (first + k) % n;
    const double d = point_segment_distance(poly[idx], poly[first], poly[last]);
    if (d > best) {
      best = d;
      best_idx = idx;
    }
  }
  if (best > tol) {
    simplify_range(poly, first, best_idx, tol, keep);
    keep.push_back(best_idx);
    simplify_range(poly, best_idx, last, tol, keep);
  }
}

// Moore neighbourhood in clockwise order (raster y grows downward):
// W, NW, N, NE, E, SE, S, SW.
constexpr std::array<int, 8> kDx = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr std::array<int, 8> kDy = {0, -1, -1, -1, 0, 1, 1, 1};

int direction_of(int dx, int dy) {
  for (int d = 0; d < 8; ++d)
    if (kDx[d] == dx && kDy[d] == dy) return d;
  return -1;
}

}  // namespace

std::vector<IPoint> convex_hull(std::vector<IPoint> points) {
  std::sort(points.begin(), points.end(), [](IPoint a, IPoint b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<IPoint> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = points[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

Mask rasterize_convex(const std::vector<IPoint>& hull, int frame_width, int frame_height) {
  Box box = bounding_box(hull);
  Mask out(frame_width, frame_height, box);
  if (hull.empty()) return out;
  if (hull.size() == 1) {
    out.set(hull[0].x, hull[0].y);
    return out;
  }
  if (hull.size() == 2) {
    const IPoint a = hull[0];
    const IPoint b = hull[1];
    for (int y = box.y0; y < box.y1; ++y)
      for (int x = box.x0; x < box.x1; ++x)
        if (cross(a, b, {x, y}) == 0) out.set(x, y);
    return out;
  }
  for (int y = box.y0; y < box.y1; ++y) {
    for (int x = box.x0; x < box.x1; ++x) {
      bool inside = true;
      for (std::size_t i = 0; i < hull.size() && inside; ++i) {
        inside = cross(hull[i], hull[(i + 1) % hull.size()], {x, y}) >= 0;
      }
      if (inside) out.set(x, y);
    }
  }
  return out;
}

std::vector<IPoint> trace_outer_contour(const Mask& mask) {
  std::vector<IPoint> contour;
  const Box& box = mask.box();
  IPoint start{-1, -1};
  for (int y = box.y0; y < box.y1 && start.x < 0; ++y)
    for (int x = box.x0; x < box.x1; ++x)
      if (mask.test(x, y)) {
        start = {x, y};
        break;
      }
  if (start.x < 0) return contour;

  // The west neighbour of the first raster pixel is background.
  IPoint current = start;
  int backtrack = 0;
  const std::size_t limit = 4 * mask.count() + 16;
  contour.push_back(start);
  for (std::size_t step = 0; step < limit; ++step) {
    int found = -1;
    for (int k = 1; k <= 8; ++k) {
      const int d = (backtrack + k) % 8;
      if (mask.test(current.x + kDx[d], current.y + kDy[d])) {
        found = d;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    const IPoint next{current.x + kDx[found], current.y + kDy[found]};
    // Closed once the start pixel is left the same way as the first time.
    if (current == start && contour.size() > 1 && next == contour[1]) break;
    const int prev = (found + 7) % 8;
    const IPoint back{current.x + kDx[prev], current.y + kDy[prev]};
    current = next;
    backtrack = direction_of(back.x - current.x, back.y - current.y);
    contour.push_back(current);
  }
  if (contour.size() > 1 && contour.back() == contour.front()) contour.pop_back();
  return contour;
}

double chain_length(const std::vector<IPoint>& contour) {
  if (contour.size() < 2) return 0.0;
  double length = 0.0;
  for (std::size_t i = 0; i < contour.size(); ++i) {
    const IPoint a = contour[i];
    const IPoint b = contour[(i + 1) % contour.size()];
    length += std::hypot(static_cast<double>(b.x - a.x), static_cast<double>(b.y - a.y));
  }
  return length;
}

std::vector<Vec2> simplify_closed(const std::vector<Vec2>& polygon, double tolerance) {
  const std::size_t n = polygon.size();
  if (n <= 3) return polygon;
  std::size_t a = 0;
  std::size_t b = 0;
  double best = -1.0;
  // Anchor pair: farthest point from vertex 0, then farthest from that.
  for (int pass = 0; pass < 2; ++pass) {
    best = -1.0;
    std::size_t far = a;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::hypot(polygon[i].x - polygon[a].x, polygon[i].y - polygon[a].y);
      if (d > best) {
        best = d;
        far = i;
      }
    }
    if (pass == 0) {
      a = far;
    } else {
      b = far;
    }
  }
  if (a == b) return {polygon[a]};
  std::vector<std::size_t> keep{a};
  simplify_range(polygon, a, b, tolerance, keep);
  keep.push_back(b);
  simplify_range(polygon, b, a, tolerance, keep);
  std::vector<Vec2> out;
  out.reserve(keep.size());
  for (std::size_t idx : keep) out.push_back(polygon[idx]);
  return out;
}

double turn_angle(const std::vector<Vec2>& polygon, std::size_t i) {
  const std::size_t n = polygon.size();
  const Vec2 prev = polygon[(i + n - 1) % n];
  const Vec2 cur = polygon[i];
  const Vec2 next = polygon[(i + 1) % n];
  const double a1 = std::atan2(cur.y - prev.y, cur.x - prev.x);
  const double a2 = std::atan2(next.y - cur.y, next.x - cur.x);
  double d = std::fabs(a2 - a1);
  if (d > std::numbers::pi) d = 2.0 * std::numbers::pi - d;
  return d;
}

std::vector<Vec2> drop_shallow_vertices(std::vector<Vec2> polygon, double min_turn) {
  while (polygon.size() > 3) {
    std::size_t worst = 0;
    double worst_turn = 10.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
      const double t = turn_angle(polygon, i);
      if (t < worst_turn) {
        worst_turn = t;
        worst = i;
      }
    }
    if (worst_turn >= min_turn) break;
    polygon.erase(polygon.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  return polygon;
}

double polygon_perimeter(const std::vector<Vec2>& polygon) {
  double length = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % polygon.size()];
    length += std::hypot(b.x - a.x, b.y - a.y);
  }
  return length;
}

std::vector<IPoint> boundary_pixels(const Mask& mask) {
  std::vector<IPoint> out;
  mask.for_each([&](int x, int y) {
    if (!mask.test(x - 1, y) || !mask.test(x + 1, y) || !mask.test(x, y - 1) || !mask.test(x, y + 1)) {
      out.push_back({x, y});
    }
  });
  return out;
}

std::vector<Mask> hole_regions(const Mask& mask) {
  std::vector<Mask> holes;
  const Mask filled = mask.filled();
  const Box& box = filled.box();
  if (box.empty()) return holes;
  Mask visited(mask.frame_width(), mask.frame_height(), box);
  for (int y = box.y0; y < box.y1; ++y) {
    for (int x = box.x0; x < box.x1; ++x) {
      if (!filled.test(x, y) || mask.test(x, y) || visited.test(x, y)) continue;
      std::vector<IPoint> region;
      std::vector<IPoint> stack{{x, y}};
      visited.set(x, y);
      while (!stack.empty()) {
        const IPoint p = stack.back();
        stack.pop_back();
        region.push_back(p);
        const IPoint nbrs[4] = {{p.x + 1, p.y}, {p.x - 1, p.y}, {p.x, p.y + 1}, {p.x, p.y - 1}};
        for (const auto& q : nbrs) {
          if (!filled.test(q.x, q.y) || mask.test(q.x, q.y) || visited.test(q.x, q.y)) continue;
          visited.set(q.x, q.y);
          stack.push_back(q);
        }
      }
      holes.push_back(mask_from_pixels(mask.frame_width(), mask.frame_height(), region));
    }
  }
  return holes;
}

std::vector<Vec2> to_vec(const std::vector<IPoint>& points) {
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  return out;
}

}  // namespace bongard::geometry
