#include <benchmark/benchmark.h>

#include "stablerank/dsl.hpp"
#include "stablerank/engine.hpp"
#include "stablerank/selfcheck.hpp"

using namespace stablerank;

static void BM_InferSphere(benchmark::State& state) {
  auto expr = parse("Cx(S(" + std::to_string(state.range(0)) + "))").expr;
  for (auto _ : state) {
    auto r = infer(expr);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_InferSphere)->Arg(5)->Arg(9)->Arg(12);

static void BM_InferSpherePullback(benchmark::State& state) {
  std::string d = std::to_string(state.range(0));
  auto expr =
      parse("pullback(Cx(D(" + d + ")), Cx(D(" + d + ")); Cx(S(" +
            std::to_string(state.range(0) - 1) + ")))")
          .expr;
  for (auto _ : state) {
    auto r = infer(expr);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_InferSpherePullback)->Arg(5)->Arg(10);

static void BM_InferNccwLadder(benchmark::State& state) {
  NccwComplex c;
  c.base_blocks = {1};
  for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(state.range(0));
       ++k)
    c.stages.push_back({k, {1}});
  AlgRef expr = alg::nccw(c);
  for (auto _ : state) {
    auto r = infer(expr);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_InferNccwLadder)->Arg(4)->Arg(10);

static void BM_InferCorpus(benchmark::State& state) {
  auto corpus = make_corpus(64, 1);
  for (auto _ : state) {
    for (const auto& e : corpus) {
      auto r = infer(e);
      benchmark::DoNotOptimize(r);
    }
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_InferCorpus);

static void BM_ParseFormat(benchmark::State& state) {
  auto corpus = make_corpus(64, 2);
  std::vector<std::string> texts;
  for (const auto& e : corpus) texts.push_back(format(e));
  for (auto _ : state) {
    for (const auto& t : texts) {
      auto r = parse(t);
      benchmark::DoNotOptimize(r);
    }
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_ParseFormat);

BENCHMARK_MAIN();
