#include "bongard/prior.hpp"

#include <cmath>

namespace bongard {

std::vector<std::uint32_t> ProductionCounts::of(NonTerminal nt) const {
  std::vector<std::uint32_t> out;
  for (const auto& info : GrammarTable::instance().productions(nt)) out.push_back((*this)[info.id]);
  return out;
}

std::uint32_t ProductionCounts::total() const noexcept {
  std::uint32_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

ProductionCounts count_productions(std::span<const Production> nodes) {
  ProductionCounts c;
  for (auto p : nodes) ++c[p];
  return c;
}

double log_beta_ratio(std::span<const std::uint32_t> counts) {
  // B(c+1) = prod Gamma(c_i + 1) / Gamma(C + K);  B(1) = 1 / Gamma(K).
  const auto k = static_cast<double>(counts.size());
  double total = 0.0;
  double sum = 0.0;
  for (auto c : counts) {
    sum += std::lgamma(static_cast<double>(c) + 1.0);
    total += static_cast<double>(c);
  }
  return sum - std::lgamma(total + k) + std::lgamma(k);
}

double log_prior(const ProductionCounts& counts) {
  const auto& grammar = GrammarTable::instance();
  double lp = 0.0;
  for (std::size_t nt = 0; nt < kNonTerminalCount; ++nt) {
    const auto prods = grammar.productions(static_cast<NonTerminal>(nt));
    std::array<std::uint32_t, kProductionCount> local{};
    std::uint32_t used = 0;
    for (std::size_t i = 0; i < prods.size(); ++i) {
      local[i] = counts[prods[i].id];
      used += local[i];
    }
    if (used > 0) lp += log_beta_ratio(std::span(local.data(), prods.size()));
  }
  return lp;
}

}  // namespace bongard
