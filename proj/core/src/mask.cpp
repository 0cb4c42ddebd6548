#include "bongard/mask.hpp"

#include <algorithm>
#include <limits>

namespace bongard {

Mask::Mask(int frame_width, int frame_height, Box box)
    : frame_width_(frame_width), frame_height_(frame_height), box_(box) {
  if (box_.empty()) box_ = Box{};
  bits_.assign(static_cast<std::size_t>(box_.width()) * static_cast<std::size_t>(box_.height()), 0);
}

std::size_t Mask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Mask Mask::tightened() const {
  std::vector<IPoint> pts = pixels();
  return mask_from_pixels(frame_width_, frame_height_, pts);
}

Mask Mask::expanded(Box box) const {
  Mask out(frame_width_, frame_height_, box);
  for_each([&](int x, int y) { out.set(x, y); });
  return out;
}

Mask Mask::filled() const {
  if (box_.empty()) return *this;
  // Flood the background from a one-pixel frame around the box.
  const int w = box_.width() + 2;
  const int h = box_.height() + 2;
  std::vector<std::uint8_t> outside(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  auto fg = [&](int lx, int ly) {
    return lx >= 1 && ly >= 1 && lx <= box_.width() && ly <= box_.height() &&
           bits_[offset(box_.x0 + lx - 1, box_.y0 + ly - 1)] != 0;
  };
  std::vector<IPoint> stack{{0, 0}};
  outside[0] = 1;
  while (!stack.empty()) {
    const IPoint p = stack.back();
    stack.pop_back();
    constexpr int dx[4] = {1, -1, 0, 0};
    constexpr int dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int nx = p.x + dx[k];
      const int ny = p.y + dy[k];
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      auto& seen = outside[static_cast<std::size_t>(ny) * static_cast<std::size_t>(w) + static_cast<std::size_t>(nx)];
      if (seen || fg(nx, ny)) continue;
      seen = 1;
      stack.push_back({nx, ny});
    }
  }
  Mask out = *this;
  for (int y = box_.y0; y < box_.y1; ++y) {
    for (int x = box_.x0; x < box_.x1; ++x) {
      const int lx = x - box_.x0 + 1;
      const int ly = y - box_.y0 + 1;
      if (!outside[static_cast<std::size_t>(ly) * static_cast<std::size_t>(w) + static_cast<std::size_t>(lx)]) {
        out.set(x, y);
      }
    }
  }
  return out;
}

bool Mask::intersects(const Mask& other) const noexcept {
  const int x0 = std::max(box_.x0, other.box_.x0);
  const int y0 = std::max(box_.y0, other.box_.y0);
  const int x1 = std::min(box_.x1, other.box_.x1);
  const int y1 = std::min(box_.y1, other.box_.y1);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x)
      if (bits_[offset(x, y)] && other.bits_[other.offset(x, y)]) return true;
  return false;
}

bool Mask::subset_of(const Mask& other) const noexcept {
  for (int y = box_.y0; y < box_.y1; ++y)
    for (int x = box_.x0; x < box_.x1; ++x)
      if (bits_[offset(x, y)] && !other.test(x, y)) return false;
  return true;
}

bool Mask::same_pixels(const Mask& other) const noexcept {
  return count() == other.count() && subset_of(other);
}

std::vector<IPoint> Mask::pixels() const {
  std::vector<IPoint> out;
  for_each([&](int x, int y) { out.push_back({x, y}); });
  return out;
}

Box bounding_box(const std::vector<IPoint>& points) {
  if (points.empty()) return Box{};
  Box b{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), std::numeric_limits<int>::min(),
        std::numeric_limits<int>::min()};
  for (const auto& p : points) {
    b.x0 = std::min(b.x0, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.x1 = std::max(b.x1, p.x + 1);
    b.y1 = std::max(b.y1, p.y + 1);
  }
  return b;
}

Mask mask_from_pixels(int frame_width, int frame_height, const std::vector<IPoint>& pixels) {
  Mask m(frame_width, frame_height, bounding_box(pixels));
  for (const auto& p : pixels) m.set(p.x, p.y);
  return m;
}

}  // namespace bongard
