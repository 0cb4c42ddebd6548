#pragma once

#include <vector>

#include "bongard/figure.hpp"
#include "bongard/image.hpp"

namespace bongard {

struct SegmentOptions {
  /// Components with fewer pixels are dropped as scanning noise.
  int min_pixels = 5;
};

/// One FigureObject per 8-connected foreground component, ordered by the
/// raster position of each component's first pixel; ids are 0..n-1.
/// Only mask, pixel_count, centroid and filled are populated.
std::vector<FigureObject> segment(const BinaryImage& image, const SegmentOptions& options = {});

}  // namespace bongard
