#include <doctest.h>

#include <cmath>
#include <map>

#include "bongard/error.hpp"
#include "bongard/sampler.hpp"
#include "bongard/synth.hpp"
#include "support.hpp"

using namespace bongard;
using namespace bongard::testing;

namespace {

std::array<double, kProductionCount> only(std::initializer_list<std::pair<Production, double>> keep) {
  std::array<double, kProductionCount> raw{};
  for (auto [p, v] : keep) raw[static_cast<std::size_t>(p)] = v;
  return raw;
}

// Five left scenes with a circle and one with a square; right scenes empty.
// EXISTS(FIGURES) makes no mistake, EXISTS(CIRCLES) exactly one.
ProblemContext two_state_problem() {
  std::array<SceneSpec, kSceneCount> s;
  for (std::size_t k = 0; k < kSceneCount; ++k)
    s[k] = k >= kScenesPerSide ? scene({}) : k == 0 ? scene({square(80, 80, 20)}) : scene({disk(80, 80, 20)});
  return problem(s);
}

PcfgWeights two_state_weights() {
  return PcfgWeights::from_raw(only({{Production::Left, 1}, {Production::Exists, 1}, {Production::Figures, 1}, {Production::Circles, 1}}));
}

SamplerConfig small_config() {
  SamplerConfig c;
  c.chains = 3;
  c.samples_per_chain = 1500;
  c.thinning = 3;
  c.burn_in = 2000;
  c.seed = 17;
  return c;
}

const ProblemContext& bp6() {
  static const ProblemContext ctx = [] {
    auto p = make_problem("bp6_triangle_vs_quadrangle", 1);
    return build_problem(p.left, p.right);
  }();
  return ctx;
}

}  // namespace

TEST_CASE("config validation") {
  SamplerConfig c;
  CHECK_NOTHROW(c.validate());
  c.chains = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.epsilon = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.thinning = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.weights = PcfgWeights::from_raw(only({{Production::Left, 1}, {Production::Exists, 1}, {Production::Cup, 1}}));
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(run(bp6(), c), ConfigError);
}

TEST_CASE("pruning removes absent ingredients") {
  SamplerConfig c;
  auto w = effective_weights(c, bp6());
  CHECK(w[Production::Circles] == 0.0);
  CHECK(w[Production::Triangles] > 0.0);
  CHECK(w.mass(NonTerminal::L) == doctest::Approx(1.0));
  c.pragmatic_pruning = false;
  CHECK(effective_weights(c, bp6())[Production::Circles] > 0.0);
}

TEST_CASE("proposal probabilities are exact") {
  const auto w = PcfgWeights::standard();
  const auto from = parse_rule("LEFT:EXISTS(SOLID(FIGURES))");
  Rng rng(4);
  std::map<std::string, int> freq;
  const int draws = 400000;
  for (int k = 0; k < draws; ++k) {
    auto prop = propose(from, w, rng);
    if (k < 2000) {
      CHECK(prop.log_q_forward == doctest::Approx(log_proposal_probability(from, prop.candidate, w)));
      CHECK(prop.log_q_backward == doctest::Approx(log_proposal_probability(prop.candidate, from, w)));
    }
    ++freq[to_string(prop.candidate)];
  }
  for (const char* text : {"LEFT:EXISTS(SOLID(FIGURES))", "LEFT:EXISTS(FIGURES)", "LEFT:EXISTS(SOLID(CIRCLES))",
                           "RIGHT:EXISTS(FIGURES)", "LEFT:EXISTS(OUTLINE(FIGURES))"}) {
    const double p = std::exp(log_proposal_probability(from, parse_rule(text), w));
    const double sigma = std::sqrt(draws * p * (1 - p));
    INFO(text << " p=" << p << " seen " << freq[text]);
    CHECK(std::abs(freq[text] - draws * p) <= 3 * sigma + 1);
  }
}

TEST_CASE("identical proposals and single choices") {
  const auto w = PcfgWeights::from_raw(only({{Production::Left, 1}, {Production::Exists, 1}, {Production::Figures, 1}}));
  const auto r = parse_rule("LEFT:EXISTS(FIGURES)");
  Rng rng(1);
  auto prop = propose(r, w, rng);
  CHECK(prop.candidate == r);
  CHECK(prop.log_q_forward == doctest::Approx(0.0));
  CHECK(prop.log_q_backward == doctest::Approx(0.0));

  auto ctx = problem(scene({disk(80, 80, 20)}), scene({}));
  RuleScorer scorer(ctx, 0.01);
  ChainState state{r, scorer.score(r)};
  for (int k = 0; k < 100; ++k) CHECK(mh_step(state, scorer, w, rng));
}

TEST_CASE("impossible candidates are always rejected") {
  // no triangles anywhere, so EXISTS(TRIANGLES) has zero likelihood
  auto ctx = problem(scene({disk(80, 80, 20)}), scene({}));
  const auto w = PcfgWeights::from_raw(
      only({{Production::Left, 1}, {Production::Exists, 1}, {Production::Figures, 1}, {Production::Triangles, 1}}));
  RuleScorer scorer(ctx, 0.3);
  const auto start = parse_rule("LEFT:EXISTS(FIGURES)");
  ChainState state{start, scorer.score(start)};
  Rng rng(2);
  for (int k = 0; k < 5000; ++k) {
    mh_step(state, scorer, w, rng);
    CHECK(state.rule == start);
  }
  CHECK(std::isinf(scorer.score(parse_rule("LEFT:EXISTS(TRIANGLES)")).log_posterior()));
}

TEST_CASE("two-state acceptance rate matches the analytic value") {
  auto ctx = two_state_problem();
  const double eps = 0.3;
  RuleScorer scorer(ctx, eps);
  const auto f = parse_rule("LEFT:EXISTS(FIGURES)");
  const auto c = parse_rule("LEFT:EXISTS(CIRCLES)");
  REQUIRE(scorer.score(f).mistakes == 0);
  REQUIRE(scorer.score(c).mistakes == 1);
  REQUIRE(scorer.score(f).log_prior == scorer.score(c).log_prior);

  const auto w = two_state_weights();
  Rng rng(3);
  ChainState state{f, scorer.score(f)};
  const int steps = 200000;
  int accepted = 0, at_c = 0;
  for (int k = 0; k < steps; ++k) {
    accepted += mh_step(state, scorer, w, rng);
    at_c += state.rule == c;
  }
  const double analytic = 0.5 + 0.5 * 2 * eps / (1 + eps);
  CHECK(static_cast<double>(accepted) / steps == doctest::Approx(analytic).epsilon(0.02));
  CHECK(static_cast<double>(at_c) / steps == doctest::Approx(eps / (1 + eps)).epsilon(0.05));
}

TEST_CASE("initial states have finite posterior") {
  RuleScorer scorer(bp6(), 0.01);
  Rng rng(5);
  SamplerConfig c;
  const auto w = effective_weights(c, bp6());
  for (int k = 0; k < 20; ++k) CHECK(std::isfinite(initial_state(scorer, w, rng).score.log_posterior()));
}

TEST_CASE("runs are deterministic, cache-transparent and thread-count independent") {
  const auto config = small_config();
  const auto a = run(bp6(), config);
  const auto b = run(bp6(), config);
  CHECK(a.distribution.left == b.distribution.left);
  CHECK(a.distribution.right == b.distribution.right);
  CHECK(a.visits == b.visits);
  CHECK(a.distribution.total_discarded == b.distribution.total_discarded);

  auto uncached = config;
  uncached.use_cache = false;
  const auto c = run(bp6(), uncached);
  CHECK(c.distribution.left == a.distribution.left);
  CHECK(c.distribution.right == a.distribution.right);
  CHECK(c.visits == a.visits);

  auto threaded = config;
  threaded.threads = 3;
  const auto d = run(bp6(), threaded);
  CHECK(d.distribution.left == a.distribution.left);
  CHECK(d.distribution.right == a.distribution.right);
  REQUIRE(d.chains.size() == a.chains.size());
  for (std::size_t k = 0; k < a.chains.size(); ++k) {
    CHECK(d.chains[k].index == k);
    CHECK(d.chains[k].top_rule == a.chains[k].top_rule);
    CHECK(d.chains[k].retained == a.chains[k].retained);
  }

  auto reseeded = config;
  reseeded.seed = 18;
  CHECK(run(bp6(), reseeded).visits != a.visits);
}

TEST_CASE("retained distribution is pure and normalized") {
  const auto config = small_config();
  const auto r = run(bp6(), config);
  double total = 0.0;
  std::size_t visits = 0;
  for (const auto& [text, count] : r.visits) visits += count;
  CHECK(visits == config.chains * config.samples_per_chain);
  CHECK(r.distribution.total_retained + r.distribution.total_discarded == visits);
  for (auto side : {Side::Left, Side::Right}) {
    for (const auto& [text, p] : r.distribution.side(side)) {
      total += p;
      auto rule = parse_rule(text);
      CHECK(rule.side() == side);
      auto rep = compatibility(rule, bp6());
      INFO(text);
      CHECK(rep.compatible);
      CHECK(rep.mistakes == 0);
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  std::size_t chain_retained = 0;
  for (const auto& c : r.chains) {
    chain_retained += c.retained;
    CHECK(c.retained + c.discarded == config.samples_per_chain);
    CHECK(c.steps == config.burn_in + config.samples_per_chain * config.thinning);
  }
  CHECK(chain_retained == r.distribution.total_retained);
  CHECK(r.distinct_rules > 0);

  auto ranked = r.distribution.ranked(Side::Left);
  REQUIRE(!ranked.empty());
  for (std::size_t k = 1; k < ranked.size(); ++k) CHECK(ranked[k - 1].second >= ranked[k].second);
}

TEST_CASE("scorer cache counts distinct rules") {
  RuleScorer scorer(bp6(), 0.01);
  const auto r = parse_rule("LEFT:EXISTS(TRIANGLES)");
  auto a = scorer.score(r);
  auto b = scorer.score(r);
  CHECK(a.log_posterior() == b.log_posterior());
  CHECK(scorer.distinct_rules() == 1);
  scorer.score(parse_rule("LEFT:EXISTS(FIGURES)"));
  CHECK(scorer.distinct_rules() == 2);
  CHECK(a.mistakes == 0);
  CHECK(a.log_likelihood == 0.0);
}
