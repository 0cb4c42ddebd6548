#include <doctest.h>

#include <cmath>
#include <map>

#include "bongard/error.hpp"
#include "bongard/pcfg.hpp"
#include "bongard/rule.hpp"

using namespace bongard;

namespace {

std::array<double, kProductionCount> only(std::initializer_list<Production> keep) {
  std::array<double, kProductionCount> raw{};
  for (auto p : keep) raw[static_cast<std::size_t>(p)] = 1.0;
  return raw;
}

// Spectral radius of the expected-offspring matrix by plain power iteration.
double power_iteration_radius(const PcfgWeights& w) {
  double m[kNonTerminalCount][kNonTerminalCount] = {};
  for (const auto& info : GrammarTable::instance().all())
    for (std::size_t a = 0; a < info.arity; ++a)
      m[static_cast<std::size_t>(info.lhs)][static_cast<std::size_t>(info.args[a])] += w[info.id];
  std::array<double, kNonTerminalCount> v;
  v.fill(1.0);
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    std::array<double, kNonTerminalCount> next{};
    for (std::size_t i = 0; i < kNonTerminalCount; ++i)
      for (std::size_t j = 0; j < kNonTerminalCount; ++j) next[i] += m[i][j] * v[j];
    double norm = 0.0;
    for (double x : next) norm = std::max(norm, x);
    if (norm == 0.0) return 0.0;
    lambda = norm / std::max({v[0], v[1], v[2], v[3], v[4], v[5]});
    for (auto& x : next) x /= norm;
    v = next;
  }
  return lambda;
}

}  // namespace

TEST_CASE("weights are normalized per non-terminal") {
  for (const auto& w : {PcfgWeights::uniform(), PcfgWeights::standard()}) {
    for (std::size_t y = 0; y < kNonTerminalCount; ++y) CHECK(w.mass(static_cast<NonTerminal>(y)) == doctest::Approx(1.0));
  }
  auto s = PcfgWeights::standard();
  CHECK(s[Production::Cap] == doctest::Approx(s[Production::Figures] * 0.5));
  CHECK(s[Production::Get] == doctest::Approx(s[Production::Circles] * 0.5));
  CHECK(is_recursive(Production::Solid));
  CHECK_FALSE(is_recursive(Production::Exists));
  CHECK_FALSE(is_recursive(Production::Triangles));
  CHECK_THROWS_AS(PcfgWeights::from_raw([] {
                    std::array<double, kProductionCount> r{};
                    r[0] = -1.0;
                    return r;
                  }()),
                  ConfigError);
}

TEST_CASE("properness") {
  auto standard = PcfgWeights::standard();
  CHECK(check_properness(standard));
  CHECK(branching_radius(standard) == doctest::Approx(power_iteration_radius(standard)).epsilon(1e-6));

  auto uniform = PcfgWeights::uniform();
  MESSAGE("uniform branching radius " << branching_radius(uniform));
  CHECK(branching_radius(uniform) == doctest::Approx(power_iteration_radius(uniform)).epsilon(1e-6));
  CHECK(check_properness(uniform) == (power_iteration_radius(uniform) < 1.0));

  auto raw = only({Production::Left, Production::Exists, Production::Cap});
  CHECK_FALSE(check_properness(PcfgWeights::from_raw(raw)));

  // recursion-bearing L productions share 40% of the mass
  std::array<double, kProductionCount> mixed{};
  auto uni = PcfgWeights::uniform().raw();
  double rec = 0, flat = 0;
  for (const auto& info : GrammarTable::instance().productions(NonTerminal::L))
    (is_recursive(info.id) ? rec : flat) += 1;
  mixed = uni;
  for (const auto& info : GrammarTable::instance().productions(NonTerminal::L))
    mixed[static_cast<std::size_t>(info.id)] = is_recursive(info.id) ? 0.4 / rec : 0.6 / flat;
  auto forty = PcfgWeights::from_raw(mixed);
  CHECK(check_properness(forty));
  CHECK(branching_radius(forty) < 1.0);
}

TEST_CASE("degenerate grammar always yields one rule") {
  auto w = PcfgWeights::from_raw(only({Production::Left, Production::Exists, Production::Figures}));
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    std::vector<Production> nodes;
    generate(w, NonTerminal::R, rng, nodes);
    CHECK(to_string(Rule(nodes)) == "LEFT:EXISTS(FIGURES)");
  }
  CHECK(log_generation_probability(w, std::vector<Production>{Production::Left, Production::Exists, Production::Figures}) == 0.0);
}

TEST_CASE("missing mass is a configuration error") {
  auto w = PcfgWeights::from_raw(only({Production::Left, Production::Exists}));
  Rng rng(1);
  std::vector<Production> nodes;
  CHECK_THROWS_AS(generate(w, NonTerminal::R, rng, nodes), ConfigError);
}

TEST_CASE("empirical tree frequencies match weight products") {
  const auto w = PcfgWeights::standard();
  Rng rng(2);
  const int draws = 1000000;
  std::map<std::string, int> freq;
  std::vector<Production> nodes;
  for (int k = 0; k < draws; ++k) {
    nodes.clear();
    generate(w, NonTerminal::R, rng, nodes);
    if (nodes.size() <= 5) ++freq[to_string(Rule(nodes))];
  }
  int tested = 0;
  for (const char* text : {"LEFT:EXISTS(FIGURES)", "RIGHT:EXISTS(TRIANGLES)", "LEFT:EXACTLY(2,CIRCLES)",
                           "RIGHT:GREATERLA(FIGURES,SIZE)", "LEFT:EXISTS(SOLID(FIGURES))"}) {
    const double p = std::exp(log_generation_probability(w, parse_rule(text).nodes()));
    const double sigma = std::sqrt(draws * p * (1 - p));
    const double seen = freq[text];
    INFO(text << " expected " << draws * p << " seen " << seen);
    CHECK(std::abs(seen - draws * p) <= 3 * sigma);
    ++tested;
  }
  CHECK(tested == 5);
}

TEST_CASE("zero-weight productions are never generated") {
  std::array<bool, kProductionCount> allowed;
  allowed.fill(true);
  allowed[static_cast<std::size_t>(Production::Triangles)] = false;
  const auto w = PcfgWeights::standard().restricted(allowed);
  CHECK(w[Production::Triangles] == 0.0);
  CHECK(w.mass(NonTerminal::L) == doctest::Approx(1.0));
  Rng rng(3);
  std::vector<Production> nodes;
  std::size_t seen = 0;
  for (int k = 0; k < 1000000; ++k) {
    nodes.clear();
    generate(w, NonTerminal::L, rng, nodes);
    for (auto p : nodes) seen += p == Production::Triangles;
  }
  CHECK(seen == 0);
}

TEST_CASE("oversized derivations are redrawn") {
  auto raw = PcfgWeights::uniform().raw();
  raw[static_cast<std::size_t>(Production::Cup)] = 3.0;
  auto w = PcfgWeights::from_raw(raw);
  Rng rng(4);
  for (int k = 0; k < 200; ++k) {
    std::vector<Production> nodes;
    generate(w, NonTerminal::R, rng, nodes, 50);
    CHECK(nodes.size() <= 50);
    CHECK(is_derivation(nodes, NonTerminal::R));
  }
}
