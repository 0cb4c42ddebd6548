#include "bongard/split.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace bongard {

namespace {
constexpr double kPi = std::numbers::pi;
}

double unroll_angle(double v, double origin) noexcept {
  double d = std::fmod(v - origin, kPi);
  if (d < 0.0) d += kPi;
  if (d >= kPi) d -= kPi;
  return d;
}

double PerceptualSplit::linearize(double v) const noexcept { return circular ? unroll_angle(v, origin) : v; }

double circular_origin(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (double v : values) sorted.push_back(unroll_angle(v, 0.0));
  std::sort(sorted.begin(), sorted.end());
  double best_gap = sorted.front() + kPi - sorted.back();
  double origin = sorted.back() + 0.5 * best_gap;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double gap = sorted[i] - sorted[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      origin = sorted[i - 1] + 0.5 * gap;
    }
  }
  return unroll_angle(origin, 0.0);
}

std::optional<PerceptualSplit> perceptual_split(std::span<const double> values, bool circular,
                                                const SplitOptions& options) {
  if (values.size() < 2) return std::nullopt;
  PerceptualSplit split;
  split.circular = circular;
  if (circular) split.origin = circular_origin(values);

  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (double v : values) sorted.push_back(split.linearize(v));
  std::sort(sorted.begin(), sorted.end());

  const double range = sorted.back() - sorted.front();
  if (range <= 0.0) return std::nullopt;

  std::size_t best = 0;
  double best_gap = -1.0;
  double total = 0.0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double gap = sorted[i] - sorted[i - 1];
    total += gap;
    if (gap > best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  const std::size_t others = sorted.size() - 2;
  const double mean_other = others > 0 ? (total - best_gap) / static_cast<double>(others) : 0.0;
  if (best_gap < options.gap_ratio * mean_other) return std::nullopt;
  if (options.min_absolute_gap > 0.0) {
    if (best_gap < options.min_absolute_gap) return std::nullopt;
  } else if (best_gap < options.min_range_fraction * range) {
    return std::nullopt;
  }
  split.threshold = 0.5 * (sorted[best - 1] + sorted[best]);
  return split;
}

}  // namespace bongard
