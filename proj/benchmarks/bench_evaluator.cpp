#include <benchmark/benchmark.h>

#include "bongard/evaluator.hpp"
#include "bongard/pcfg.hpp"
#include "bongard/synth.hpp"

using namespace bongard;

namespace {

const ProblemContext& bp3() {
  static const ProblemContext ctx = [] {
    auto p = make_problem("bp3_outline_vs_solid", 1);
    return build_problem(p.left, p.right);
  }();
  return ctx;
}

const char* const kRules[] = {
    "LEFT:EXISTS(FIGURES)",
    "LEFT:EXISTS(OUTLINE(FIGURES))",
    "RIGHT:GREATERLA(FIGURES,COLOR)",
    "LEFT:EXISTS(ALIGNED(FIGURES))",
    "LEFT:MORESIMLLA(INSIDE(FIGURES),CONTAINS(FIGURES),SIZE)",
};

}  // namespace

static void BM_EvalRule(benchmark::State& state) {
  const auto rule = parse_rule(kRules[state.range(0)]);
  const auto& ctx = bp3();
  for (auto _ : state) benchmark::DoNotOptimize(eval_rule(rule, ctx));
  state.SetLabel(kRules[state.range(0)]);
}
BENCHMARK(BM_EvalRule)->DenseRange(0, 4);

static void BM_EvalRandomRules(benchmark::State& state) {
  const auto& ctx = bp3();
  const auto w = PcfgWeights::standard();
  Rng rng(1);
  std::vector<Rule> rules;
  for (int k = 0; k < 256; ++k) {
    std::vector<Production> nodes;
    generate(w, NonTerminal::R, rng, nodes);
    rules.emplace_back(nodes);
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eval_rule(rules[k++ % rules.size()], ctx));
}
BENCHMARK(BM_EvalRandomRules);

static void BM_ParseRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_rule("LEFT:MORESIMLLA(INSIDE(FIGURES),CONTAINS(FIGURES),SIZE)"));
}
BENCHMARK(BM_ParseRule);

BENCHMARK_MAIN();
