#include <benchmark/benchmark.h>

#include <random>

#include "qdom/domination.hpp"
#include "qdom/enumeration.hpp"
#include "qdom/graph.hpp"
#include "qdom/spectra.hpp"

using namespace qdom;

namespace {

Graph random_connected(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  for (;;) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    Graph g = Graph::build(n, edges);
    if (is_connected(g)) return g;
  }
}

void BM_Canonical(benchmark::State& state) {
  std::mt19937_64 rng(1);
  Graph g = random_connected(rng, static_cast<int>(state.range(0)), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_cert(g));
}
BENCHMARK(BM_Canonical)->Arg(8)->Arg(10)->Arg(12);

void BM_DominationPath(benchmark::State& state) {
  std::vector<std::pair<int, int>> edges;
  int n = static_cast<int>(state.range(0));
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  Graph g = Graph::build(n, edges);
  for (auto _ : state)
    benchmark::DoNotOptimize(domination::domination_number(g).gamma);
}
BENCHMARK(BM_DominationPath)->Arg(16)->Arg(24)->Arg(30);

void BM_QSpectrum(benchmark::State& state) {
  std::mt19937_64 rng(2);
  Graph g = random_connected(rng, static_cast<int>(state.range(0)), 0.4);
  for (auto _ : state)
    benchmark::DoNotOptimize(spectra::q_spectrum(g).q_min);
}
BENCHMARK(BM_QSpectrum)->Arg(8)->Arg(16)->Arg(32);

void BM_Graph6RoundTrip(benchmark::State& state) {
  std::mt19937_64 rng(3);
  Graph g = random_connected(rng, 20, 0.4);
  std::string text = g.to_graph6();
  for (auto _ : state) benchmark::DoNotOptimize(Graph::from_graph6(text));
}
BENCHMARK(BM_Graph6RoundTrip);

void BM_EnumerateUnicyclic(benchmark::State& state) {
  for (auto _ : state) {
    enumeration::UniverseSpec spec;
    spec.kind = enumeration::UniverseKind::UnicyclicNonbipartite;
    spec.n = static_cast<int>(state.range(0));
    benchmark::DoNotOptimize(enumeration::enumerate_universe(spec));
  }
}
BENCHMARK(BM_EnumerateUnicyclic)->Arg(9)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
