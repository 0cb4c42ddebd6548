#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "bongard/grammar.hpp"

namespace bongard {

using Rng = std::mt19937_64;

/// Generation probabilities, one per production. Each non-terminal's weights
/// are normalized to sum to 1 unless all of them are zero.
class PcfgWeights {
 public:
  /// Uniform within each non-terminal.
  static PcfgWeights uniform();
  /// Uniform, then every L-production with an L argument scaled by
  /// `recursive_factor` before renormalizing.
  static PcfgWeights standard(double recursive_factor = 0.5);
  /// From raw nonnegative weights; throws ConfigError on negative or
  /// non-finite entries.
  static PcfgWeights from_raw(const std::array<double, kProductionCount>& raw);

  double operator[](Production p) const noexcept { return w_[static_cast<std::size_t>(p)]; }
  const std::array<double, kProductionCount>& raw() const noexcept { return w_; }
  /// Total weight of a non-terminal's productions (1 or 0).
  double mass(NonTerminal nt) const noexcept;

  /// Copy with `allowed[p] == false` productions zeroed, renormalized.
  PcfgWeights restricted(const std::array<bool, kProductionCount>& allowed) const;

 private:
  void normalize();
  std::array<double, kProductionCount> w_{};
};

/// True for productions with at least one L argument under an L head.
bool is_recursive(Production p) noexcept;

/// Spectral radius of the expected-offspring matrix between non-terminals.
double branching_radius(const PcfgWeights& weights);

/// Random derivations terminate with finite expected size.
bool check_properness(const PcfgWeights& weights);

/// Draws a derivation of `start` in preorder and appends it to `out`.
/// Derivations exceeding `max_nodes` are discarded and redrawn. Throws
/// ConfigError if a needed non-terminal has no weight.
void generate(const PcfgWeights& weights, NonTerminal start, Rng& rng, std::vector<Production>& out,
              std::size_t max_nodes = 1000);

/// Sum of log weights of a preorder subtree (-infinity if any is zero).
double log_generation_probability(const PcfgWeights& weights, std::span<const Production> subtree) noexcept;

}  // namespace bongard
