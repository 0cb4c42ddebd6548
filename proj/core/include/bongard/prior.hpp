#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bongard/grammar.hpp"
#include "bongard/rule.hpp"

namespace bongard {

/// Production usage counts, indexed by Production.
struct ProductionCounts {
  std::array<std::uint32_t, kProductionCount> counts{};

  std::uint32_t operator[](Production p) const noexcept { return counts[static_cast<std::size_t>(p)]; }
  std::uint32_t& operator[](Production p) noexcept { return counts[static_cast<std::size_t>(p)]; }
  /// Counts of one non-terminal's productions, in table order.
  std::vector<std::uint32_t> of(NonTerminal nt) const;
  std::uint32_t total() const noexcept;
};

ProductionCounts count_productions(std::span<const Production> nodes);
inline ProductionCounts count_productions(const Rule& rule) { return count_productions(rule.nodes()); }

/// log of B(c + 1) / B(1) for one count vector, B the multinomial Beta.
double log_beta_ratio(std::span<const std::uint32_t> counts);

/// Rational-rules log prior: sum over non-terminals of log_beta_ratio.
double log_prior(const ProductionCounts& counts);
inline double log_prior(const Rule& rule) { return log_prior(count_productions(rule)); }

}  // namespace bongard
