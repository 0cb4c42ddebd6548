#include <benchmark/benchmark.h>

#include "bongard/prior.hpp"
#include "bongard/sampler.hpp"
#include "bongard/synth.hpp"

using namespace bongard;

namespace {

const ProblemContext& bp6() {
  static const ProblemContext ctx = [] {
    auto p = make_problem("bp6_triangle_vs_quadrangle", 1);
    return build_problem(p.left, p.right);
  }();
  return ctx;
}

}  // namespace

static void BM_LogPrior(benchmark::State& state) {
  const auto rule = parse_rule("LEFT:GREATERLLA(OUTLINE(TRIANGLES),SOLID(FIGURES),SIZE)");
  for (auto _ : state) benchmark::DoNotOptimize(log_prior(rule));
}
BENCHMARK(BM_LogPrior);

static void BM_Propose(benchmark::State& state) {
  const auto w = PcfgWeights::standard();
  const auto rule = parse_rule("LEFT:EXISTS(SOLID(TRIANGLES))");
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(propose(rule, w, rng));
}
BENCHMARK(BM_Propose);

// range(0): scorer cache on or off
static void BM_MhStep(benchmark::State& state) {
  SamplerConfig config;
  const auto w = effective_weights(config, bp6());
  RuleScorer scorer(bp6(), config.epsilon, state.range(0) != 0);
  Rng rng(2);
  auto chain = initial_state(scorer, w, rng);
  for (int k = 0; k < 20000; ++k) mh_step(chain, scorer, w, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mh_step(chain, scorer, w, rng));
  state.SetLabel(state.range(0) ? "cached" : "uncached");
}
BENCHMARK(BM_MhStep)->Arg(1)->Arg(0);

static void BM_CacheHit(benchmark::State& state) {
  RuleScorer scorer(bp6(), 0.01);
  const auto rule = parse_rule("LEFT:EXISTS(TRIANGLES)");
  scorer.score(rule);
  for (auto _ : state) benchmark::DoNotOptimize(scorer.score(rule));
}
BENCHMARK(BM_CacheHit);

BENCHMARK_MAIN();
