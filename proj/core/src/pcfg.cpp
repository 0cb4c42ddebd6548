#include "bongard/pcfg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bongard/error.hpp"

namespace bongard {

bool is_recursive(Production p) noexcept {
  return production_info(p).lhs == NonTerminal::L && child_count(p, NonTerminal::L) > 0;
}

PcfgWeights PcfgWeights::uniform() {
  PcfgWeights w;
  w.w_.fill(1.0);
  w.normalize();
  return w;
}

PcfgWeights PcfgWeights::standard(double recursive_factor) {
  PcfgWeights w;
  for (std::size_t i = 0; i < kProductionCount; ++i)
    w.w_[i] = is_recursive(static_cast<Production>(i)) ? recursive_factor : 1.0;
  w.normalize();
  return w;
}

PcfgWeights PcfgWeights::from_raw(const std::array<double, kProductionCount>& raw) {
  for (std::size_t i = 0; i < kProductionCount; ++i)
    if (!(raw[i] >= 0.0) || !std::isfinite(raw[i]))
      throw ConfigError("invalid weight for " + std::string(production_info(static_cast<Production>(i)).name));
  PcfgWeights w;
  w.w_ = raw;
  w.normalize();
  return w;
}

void PcfgWeights::normalize() {
  for (std::size_t nt = 0; nt < kNonTerminalCount; ++nt) {
    double total = 0.0;
    const auto prods = GrammarTable::instance().productions(static_cast<NonTerminal>(nt));
    for (const auto& info : prods) total += w_[static_cast<std::size_t>(info.id)];
    if (total <= 0.0) continue;
    for (const auto& info : prods) w_[static_cast<std::size_t>(info.id)] /= total;
  }
}

double PcfgWeights::mass(NonTerminal nt) const noexcept {
  double total = 0.0;
  for (const auto& info : GrammarTable::instance().productions(nt)) total += (*this)[info.id];
  return total;
}

PcfgWeights PcfgWeights::restricted(const std::array<bool, kProductionCount>& allowed) const {
  PcfgWeights w = *this;
  for (std::size_t i = 0; i < kProductionCount; ++i)
    if (!allowed[i]) w.w_[i] = 0.0;
  w.normalize();
  return w;
}

double branching_radius(const PcfgWeights& weights) {
  constexpr std::size_t n = kNonTerminalCount;
  using Matrix = std::array<std::array<double, n>, n>;
  Matrix m{};
  for (const auto& info : GrammarTable::instance().all())
    for (std::size_t a = 0; a < info.arity; ++a)
      m[static_cast<std::size_t>(info.lhs)][static_cast<std::size_t>(info.args[a])] += weights[info.id];

  // rho = lim ||M^k||^(1/k), via repeated squaring with rescaling.
  double log_scale = 0.0;
  double steps = 1.0;
  for (int iter = 0; iter < 48; ++iter) {
    double largest = 0.0;
    for (const auto& row : m)
      for (double v : row) largest = std::max(largest, v);
    if (largest == 0.0) return 0.0;
    for (auto& row : m)
      for (double& v : row) v /= largest;
    log_scale += std::log(largest) / steps;
    Matrix sq{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) sq[i][j] += m[i][k] * m[k][j];
    m = sq;
    steps *= 2.0;
  }
  return std::exp(log_scale);
}

bool check_properness(const PcfgWeights& weights) { return branching_radius(weights) < 1.0 - 1e-12; }

void generate(const PcfgWeights& weights, NonTerminal start, Rng& rng, std::vector<Production>& out,
              std::size_t max_nodes) {
  const auto& grammar = GrammarTable::instance();
  const std::size_t base = out.size();
  std::vector<NonTerminal> pending;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    out.resize(base);
    pending.assign(1, start);
    while (!pending.empty() && out.size() - base <= max_nodes) {
      const NonTerminal nt = pending.back();
      pending.pop_back();
      const auto prods = grammar.productions(nt);
      const double mass = weights.mass(nt);
      if (mass <= 0.0)
        throw ConfigError("no production of " + std::string(nonterminal_name(nt)) + " has positive weight");
      double u = unit(rng) * mass;
      const ProductionInfo* chosen = nullptr;
      for (const auto& info : prods) {
        const double w = weights[info.id];
        if (w <= 0.0) continue;
        chosen = &info;
        if (u < w) break;
        u -= w;
      }
      out.push_back(chosen->id);
      for (std::size_t a = chosen->arity; a-- > 0;) pending.push_back(chosen->args[a]);
    }
    if (pending.empty()) return;
  }
}

double log_generation_probability(const PcfgWeights& weights, std::span<const Production> subtree) noexcept {
  double lp = 0.0;
  for (auto p : subtree) {
    const double w = weights[p];
    if (w <= 0.0) return -std::numeric_limits<double>::infinity();
    lp += std::log(w);
  }
  return lp;
}

}  // namespace bongard
