#include <benchmark/benchmark.h>

#include "bongard/features.hpp"
#include "bongard/problem.hpp"
#include "bongard/segment.hpp"
#include "bongard/synth.hpp"

using namespace bongard;

static void BM_Segment(benchmark::State& state) {
  const auto p = make_problem("bp47_nesting", 1);
  const auto& img = p.left[0];
  for (auto _ : state) benchmark::DoNotOptimize(segment(img));
}
BENCHMARK(BM_Segment);

static void BM_SegmentAndDescribe(benchmark::State& state) {
  const auto p = make_problem("bp47_nesting", 1);
  const auto& img = p.left[0];
  for (auto _ : state) {
    auto objs = segment(img);
    for (auto& o : objs) describe(o);
    benchmark::DoNotOptimize(objs);
  }
}
BENCHMARK(BM_SegmentAndDescribe);

static void BM_BuildProblem(benchmark::State& state) {
  const auto p = make_problem("bp3_outline_vs_solid", 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_problem(p.left, p.right));
}
BENCHMARK(BM_BuildProblem)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
