#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "bongard/grammar.hpp"
#include "bongard/object_set.hpp"
#include "bongard/problem.hpp"
#include "bongard/rule.hpp"

namespace bongard {

enum class Truth : std::uint8_t { False, True, Undefined };

/// 'T', 'F' or 'U'.
char truth_char(Truth t) noexcept;

/// One entry per scene, left scenes first.
using TruthVector = std::array<Truth, kSceneCount>;

/// Result of an L-expression. Sets are always defined except where an
/// operator has no meaning (HIGH/LOW without a perceptual split, DISTANCE on a
/// single object); undefinedness propagates upward.
struct LValue {
  ObjectSet set;
  bool defined = true;
};

/// Evaluates an L-typed subtree (preorder) in one scene.
LValue eval_L(std::span<const Production> subtree, const Scene& scene, const ProblemContext& ctx);

/// Evaluates an S-typed subtree in one scene. GREATERLA and MORESIMLA compare
/// against the scenes of the other side, so the whole context is consulted.
Truth eval_S(std::span<const Production> subtree, std::size_t scene, const ProblemContext& ctx);

/// The S-body of a rule on all twelve scenes. Cheaper than twelve eval_S calls
/// because L-values are shared between scenes.
TruthVector eval_S_all(std::span<const Production> subtree, const ProblemContext& ctx);

TruthVector eval_rule(const Rule& rule, const ProblemContext& ctx);

/// Largest subset (at least three members) of `members` whose pairwise
/// centroid directions agree within `tolerance_rad` modulo pi. Ties go to the
/// lexicographically smallest index list. Empty if there is none.
ObjectSet aligned_subset(const Scene& scene, const ObjectSet& members, double tolerance_rad,
                         std::size_t exhaustive_limit);

/// Smallest arc (on a circle of circumference pi) holding all angles.
double angular_spread(std::span<const double> angles) noexcept;

/// Sample variance, or circular variance 1 - |mean exp(2i theta)| for angles.
double dispersion(std::span<const double> values, bool circular) noexcept;

}  // namespace bongard
