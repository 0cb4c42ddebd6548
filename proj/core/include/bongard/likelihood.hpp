#pragma once

#include <array>

#include "bongard/evaluator.hpp"
#include "bongard/grammar.hpp"
#include "bongard/problem.hpp"
#include "bongard/rule.hpp"

namespace bongard {

struct CompatibilityReport {
  TruthVector truth{};
  int mistakes = 0;  // images on the wrong side of the rule
  bool undefined_hit = false;
  bool informative = true;
  bool compatible = false;  // no mistakes, nothing undefined, informative
};

/// Whether the problem's images exhibit what production `p` talks about, so
/// that a rule using it is worth considering at all.
bool production_informative(Production p, const ProblemContext& ctx);

/// Informativeness flags for every production of the grammar.
std::array<bool, kProductionCount> informative_productions(const ProblemContext& ctx);

bool check_informative(const Rule& rule, const ProblemContext& ctx);

/// Builds the report from an already computed truth vector.
CompatibilityReport make_report(const Rule& rule, const TruthVector& truth, bool informative);

CompatibilityReport compatibility(const Rule& rule, const ProblemContext& ctx);

/// n log(epsilon), or -infinity for uninformative rules and rules that are
/// undefined somewhere. Throws ConfigError unless 0 < epsilon < 1.
double soft_log_likelihood(const CompatibilityReport& report, double epsilon);

void validate_epsilon(double epsilon);

}  // namespace bongard
