#include "bongard/segment.hpp"

#include <limits>

namespace bongard {

std::string_view attribute_name(Attribute a) noexcept {
  switch (a) {
    case Attribute::XPos: return "XPOS";
    case Attribute::YPos: return "YPOS";
    case Attribute::Distance: return "DISTANCE";
    case Attribute::Orientation: return "ORIENTATION";
    case Attribute::NCorners: return "NCORNERS";
    case Attribute::Color: return "COLOR";
    case Attribute::Size: return "SIZE";
    case Attribute::Compactness: return "COMPACTNESS";
    case Attribute::Convexity: return "CONVEXITY";
    case Attribute::Elongation: return "ELONGATION";
  }
  return "?";
}

std::string_view shape_name(ShapeClass s) noexcept {
  switch (s) {
    case ShapeClass::Circle: return "circle";
    case ShapeClass::Triangle: return "triangle";
    case ShapeClass::Rectangle: return "rectangle";
    case ShapeClass::Other: return "other";
  }
  return "?";
}

std::string_view fill_name(FillClass f) noexcept { return f == FillClass::Solid ? "solid" : "outline"; }

double AttributeVector::value(Attribute a) const noexcept {
  switch (a) {
    case Attribute::XPos: return xpos;
    case Attribute::YPos: return ypos;
    case Attribute::Distance: break;
    case Attribute::Orientation: return orientation;
    case Attribute::NCorners: return static_cast<double>(ncorners);
    case Attribute::Color: return color;
    case Attribute::Size: return size;
    case Attribute::Compactness: return compactness;
    case Attribute::Convexity: return convexity;
    case Attribute::Elongation: return elongation;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

FigureObject FigureObject::from_mask(Mask mask, int id, bool synthetic) {
  FigureObject obj;
  obj.id = id;
  obj.synthetic = synthetic;
  obj.mask = mask.tightened();
  double sx = 0.0;
  double sy = 0.0;
  std::size_t n = 0;
  obj.mask.for_each([&](int x, int y) {
    sx += x;
    sy += y;
    ++n;
  });
  obj.pixel_count = n;
  if (n > 0) obj.centroid = {sx / static_cast<double>(n), sy / static_cast<double>(n)};
  obj.filled = obj.mask.filled();
  return obj;
}

std::vector<FigureObject> segment(const BinaryImage& image, const SegmentOptions& options) {
  std::vector<FigureObject> objects;
  if (image.empty()) return objects;
  const int w = image.width();
  const int h = image.height();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x); };
  std::vector<IPoint> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!image.at(x, y) || seen[idx(x, y)]) continue;
      std::vector<IPoint> pixels;
      stack.assign(1, {x, y});
      seen[idx(x, y)] = 1;
      while (!stack.empty()) {
        const IPoint p = stack.back();
        stack.pop_back();
        pixels.push_back(p);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if ((dx == 0 && dy == 0) || !image.in_bounds(nx, ny)) continue;
            if (!image.at(nx, ny) || seen[idx(nx, ny)]) continue;
            seen[idx(nx, ny)] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      if (static_cast<int>(pixels.size()) < options.min_pixels) continue;
      const int id = static_cast<int>(objects.size());
      objects.push_back(FigureObject::from_mask(mask_from_pixels(w, h, pixels), id));
    }
  }
  return objects;
}

}  // namespace bongard
