#pragma once

#include <optional>
#include <span>

namespace bongard {

/// Thresholds deciding when the largest gap in an attribute's values is a
/// perceptually relevant split.
struct SplitOptions {
  double gap_ratio = 1.5;            // largest gap vs. mean of the other gaps
  double min_range_fraction = 0.1;   // largest gap vs. value range
  double min_absolute_gap = 0.0;     // replaces the range test when > 0 (COLOR)
};

/// Problem-wide two-class split of one attribute. Circular attributes are cut
/// open at `origin` (the middle of their largest wrapped gap) first; the
/// threshold lives in those unrolled coordinates.
struct PerceptualSplit {
  double threshold = 0.0;
  double origin = 0.0;
  bool circular = false;

  double linearize(double v) const noexcept;
  bool is_high(double v) const noexcept { return linearize(v) > threshold; }
};

/// Middle of the largest gap between consecutive angles on the circle of
/// circumference pi; 0 for fewer than two values.
double circular_origin(std::span<const double> values);

/// Maps an angle to [0, pi) measured from `origin`.
double unroll_angle(double v, double origin) noexcept;

/// Split at the middle of the largest gap between consecutive sorted values,
/// provided it is at least `gap_ratio` times the mean of the remaining gaps and
/// at least `min_range_fraction` of the value range (or `min_absolute_gap`).
std::optional<PerceptualSplit> perceptual_split(std::span<const double> values, bool circular,
                                                const SplitOptions& options = {});

}  // namespace bongard
