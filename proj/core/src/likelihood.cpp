#include "bongard/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bongard/error.hpp"

namespace bongard {

namespace {

bool any_scene(const ProblemContext& ctx, auto&& pred) {
  return std::any_of(ctx.scenes().begin(), ctx.scenes().end(), pred);
}

bool any_with_fill(const ProblemContext& ctx, FillClass fill) {
  return any_scene(ctx, [&](const Scene& s) {
    for (std::size_t i = 0; i < s.original_count(); ++i)
      if (s.object(i).fill == fill) return true;
    return false;
  });
}

bool any_on_size_side(const ProblemContext& ctx, bool high) {
  const auto& split = ctx.split(Attribute::Size);
  if (!split) return false;
  return any_scene(ctx, [&](const Scene& s) {
    for (std::size_t i = 0; i < s.original_count(); ++i)
      if (split->is_high(s.object(i).attributes.size) == high) return true;
    return false;
  });
}

bool any_with_at_least(const ProblemContext& ctx, std::size_t n) {
  return any_scene(ctx, [&](const Scene& s) { return s.original_count() >= n; });
}

}  // namespace

bool production_informative(Production p, const ProblemContext& ctx) {
  using enum Production;
  switch (p) {
    case Figures: return any_with_at_least(ctx, 1);
    case Circles:
    case Triangles:
    case Rectangles: {
      const ShapeClass shape = p == Circles ? ShapeClass::Circle
                               : p == Triangles ? ShapeClass::Triangle
                                                : ShapeClass::Rectangle;
      return any_scene(ctx, [&](const Scene& s) { return !s.of_shape(shape).empty(); });
    }
    case Solid: return any_with_fill(ctx, FillClass::Solid);
    case Outline: return any_with_fill(ctx, FillClass::Outline);
    case Big: return any_on_size_side(ctx, true);
    case Small: return any_on_size_side(ctx, false);
    case Inside:
    case Contains: return any_scene(ctx, [](const Scene& s) { return s.has_nested_pair(); });
    case High:
    case Low:
    case Distance: return any_with_at_least(ctx, 2);
    case Aligned: return any_with_at_least(ctx, 3);
    default: return true;
  }
}

std::array<bool, kProductionCount> informative_productions(const ProblemContext& ctx) {
  std::array<bool, kProductionCount> out{};
  for (std::size_t i = 0; i < kProductionCount; ++i) out[i] = production_informative(static_cast<Production>(i), ctx);
  return out;
}

bool check_informative(const Rule& rule, const ProblemContext& ctx) {
  return std::all_of(rule.nodes().begin(), rule.nodes().end(),
                     [&](Production p) { return production_informative(p, ctx); });
}

CompatibilityReport make_report(const Rule& rule, const TruthVector& truth, bool informative) {
  CompatibilityReport r;
  r.truth = truth;
  r.informative = informative;
  const Side side = rule.side();
  for (std::size_t k = 0; k < kSceneCount; ++k) {
    const bool on_rule_side = (k < kScenesPerSide) == (side == Side::Left);
    if (truth[k] == Truth::Undefined)
      r.undefined_hit = true;
    else if ((truth[k] == Truth::True) != on_rule_side)
      ++r.mistakes;
  }
  r.compatible = r.mistakes == 0 && !r.undefined_hit && r.informative;
  return r;
}

CompatibilityReport compatibility(const Rule& rule, const ProblemContext& ctx) {
  return make_report(rule, eval_rule(rule, ctx), check_informative(rule, ctx));
}

void validate_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError("epsilon must lie strictly between 0 and 1, got " + std::to_string(epsilon));
}

double soft_log_likelihood(const CompatibilityReport& report, double epsilon) {
  validate_epsilon(epsilon);
  if (!report.informative || report.undefined_hit) return -std::numeric_limits<double>::infinity();
  if (report.mistakes == 0) return 0.0;
  return report.mistakes * std::log(epsilon);
}

}  // namespace bongard
