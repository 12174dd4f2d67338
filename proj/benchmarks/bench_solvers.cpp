#include <benchmark/benchmark.h>

#include <random>

#include "sumfree/constructions.hpp"
#include "sumfree/proof.hpp"
#include "sumfree/search.hpp"
#include "sumfree/solver.hpp"

using namespace sumfree;

namespace {

NumSet random_set(std::size_t size, Element max_value, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Element> value(1, max_value);
  std::vector<Element> v;
  while (v.size() < size) {
    const Element e = value(rng);
    if (std::find(v.begin(), v.end(), e) == v.end()) v.push_back(e);
  }
  return NumSet::from(v);
}

void BM_BranchBoundRecord(benchmark::State& state) {
  const NumSet a = record_set();
  for (auto _ : state) benchmark::DoNotOptimize(max_sum_free_branch_bound(a).optimum);
}
BENCHMARK(BM_BranchBoundRecord);

void BM_BranchBoundRandom(benchmark::State& state) {
  const NumSet a = random_set(static_cast<std::size_t>(state.range(0)), 4 * static_cast<Element>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(max_sum_free_branch_bound(a).optimum);
}
BENCHMARK(BM_BranchBoundRandom)->Arg(16)->Arg(24)->Arg(32)->Arg(40);

void BM_ExhaustiveRandom(benchmark::State& state) {
  const NumSet a = random_set(static_cast<std::size_t>(state.range(0)), 4 * static_cast<Element>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(max_sum_free_exhaustive(a).optimum);
}
BENCHMARK(BM_ExhaustiveRandom)->Arg(12)->Arg(16)->Arg(20);

void BM_ExhaustiveRecordSize12(benchmark::State& state) {
  const NumSet a = record_set();
  ExhaustiveOptions opts;
  opts.size_cap = 12;
  for (auto _ : state) benchmark::DoNotOptimize(max_sum_free_exhaustive(a, opts).work);
}
BENCHMARK(BM_ExhaustiveRecordSize12)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_ProofBundle(benchmark::State& state) {
  const auto bundle = proof::load_bundle(SUMFREE_PROOF_DIR);
  for (auto _ : state) {
    benchmark::DoNotOptimize(proof::check_theorem2_bundle(std::span<const proof::ScriptSource>(bundle)).verdict);
  }
}
BENCHMARK(BM_ProofBundle)->Unit(benchmark::kMillisecond);

void BM_StochasticSearch(benchmark::State& state) {
  SearchConfig c;
  c.set_size = 10;
  c.max_element = 18;
  c.iterations = 20'000;
  c.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stochastic_search(c).evaluated);
}
BENCHMARK(BM_StochasticSearch)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
