#pragma once

#include <cstdint>
#include <vector>

namespace bongard {

struct IPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(IPoint, IPoint) = default;
  friend auto operator<=>(IPoint, IPoint) = default;
};

/// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct Box {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const noexcept { return x1 - x0; }
  int height() const noexcept { return y1 - y0; }
  bool empty() const noexcept { return x1 <= x0 || y1 <= y0; }
  bool contains(int x, int y) const noexcept { return x >= x0 && x < x1 && y >= y0 && y < y1; }
  friend bool operator==(const Box&, const Box&) = default;
};

/// Boolean pixel set living in an image frame of fixed size. Storage covers
/// only `box()`; queries outside it answer false.
class Mask {
 public:
  Mask() = default;
  Mask(int frame_width, int frame_height, Box box);

  int frame_width() const noexcept { return frame_width_; }
  int frame_height() const noexcept { return frame_height_; }
  const Box& box() const noexcept { return box_; }

  bool test(int x, int y) const noexcept {
    return box_.contains(x, y) && bits_[offset(x, y)] != 0;
  }
  void set(int x, int y, bool value = true) noexcept { bits_[offset(x, y)] = value ? 1 : 0; }

  std::size_t count() const noexcept;
  bool any() const noexcept { return count() != 0; }

  /// Same pixels, box shrunk to the tight bounding box (empty box if no pixels).
  Mask tightened() const;
  /// Same pixels, storage grown to cover `box` (must contain the current box).
  Mask expanded(Box box) const;

  /// Pixels plus every background pixel not 4-connected to the outside.
  Mask filled() const;

  bool intersects(const Mask& other) const noexcept;
  bool subset_of(const Mask& other) const noexcept;
  /// Pixel-set equality, independent of storage box.
  bool same_pixels(const Mask& other) const noexcept;

  std::vector<IPoint> pixels() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (int y = box_.y0; y < box_.y1; ++y)
      for (int x = box_.x0; x < box_.x1; ++x)
        if (bits_[offset(x, y)]) fn(x, y);
  }

 private:
  std::size_t offset(int x, int y) const noexcept {
    return static_cast<std::size_t>(y - box_.y0) * static_cast<std::size_t>(box_.width()) +
           static_cast<std::size_t>(x - box_.x0);
  }

  int frame_width_ = 0;
  int frame_height_ = 0;
  Box box_;
  std::vector<std::uint8_t> bits_;
};

/// Tight bounding box of a point set.
Box bounding_box(const std::vector<IPoint>& points);

/// Builds a tight mask from pixel coordinates.
Mask mask_from_pixels(int frame_width, int frame_height, const std::vector<IPoint>& pixels);

}  // namespace bongard
