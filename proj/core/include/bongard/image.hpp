#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace bongard {

/// Row-major raster of foreground (true) / background (false) pixels.
/// Row 0 is the top of the page.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return width_ == 0 || height_ == 0; }

  bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool at(int x, int y) const noexcept { return pixels_[index(x, y)] != 0; }
  void set(int x, int y, bool value = true) noexcept { pixels_[index(x, y)] = value ? 1 : 0; }

  std::size_t foreground_count() const noexcept;

  const std::vector<std::uint8_t>& raw() const noexcept { return pixels_; }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Default luminance threshold: 50% gray.
inline constexpr int kDefaultThreshold = 128;

/// Reads a PNG or PGM/PBM raster. A pixel is foreground iff its luminance is
/// below `threshold` (0..255). Throws InputError on unreadable, truncated or
/// zero-area files.
BinaryImage load_binary_image(const std::filesystem::path& path, int threshold = kDefaultThreshold);

/// Decodes an in-memory PGM (P2/P5) or PBM (P1/P4) file.
BinaryImage decode_pnm(const std::vector<std::uint8_t>& bytes, int threshold = kDefaultThreshold);

/// Writes foreground as black (0) and background as white (255).
void save_pgm(const BinaryImage& image, const std::filesystem::path& path);
void save_png(const BinaryImage& image, const std::filesystem::path& path);

}  // namespace bongard
