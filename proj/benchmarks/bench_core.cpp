#include "pclique/community.hpp"
#include "pclique/encoder_embed.hpp"
#include "pclique/graph_model.hpp"
#include "pclique/metrics.hpp"
#include "pclique/spectral_embed.hpp"

#include <benchmark/benchmark.h>

using namespace pclique;

namespace {

AdjacencyMatrix rdpg_graph(Index n) {
    return sample_rdpg(edge_prob_matrix(sample_dirichlet_latents(n, 1)), 2);
}

void BM_SampleRdpg(benchmark::State& state) {
    const Index n = state.range(0);
    const auto p = edge_prob_matrix(sample_dirichlet_latents(n, 1));
    for (auto _ : state) benchmark::DoNotOptimize(sample_rdpg(p, 3));
}
BENCHMARK(BM_SampleRdpg)->Arg(300)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_Ase(benchmark::State& state) {
    const auto a = rdpg_graph(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ase(a, 2));
}
BENCHMARK(BM_Ase)->Arg(300)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_Gee(benchmark::State& state) {
    const Index n = state.range(0);
    const auto a = rdpg_graph(n);
    std::vector<int> y(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = 1 + static_cast<int>(i % 3);
    const LabelVector labels(y);
    for (auto _ : state) benchmark::DoNotOptimize(gee(a, labels));
}
BENCHMARK(BM_Gee)->Arg(300)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_Leiden(benchmark::State& state) {
    const auto a = rdpg_graph(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(leiden(a, PartitionQuality::modularity(), 4));
}
BENCHMARK(BM_Leiden)->Arg(300)->Arg(1500)->Unit(benchmark::kMillisecond);

void BM_Procrustes(benchmark::State& state) {
    const Index n = state.range(0);
    const auto a = rdpg_graph(n);
    const auto x = ase(a, 3);
    const auto xc = ase(plant_true_clique(a, choose_clique(n, 40, 5)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(procrustes_align(x, xc));
}
BENCHMARK(BM_Procrustes)->Arg(1500);

}  // namespace

BENCHMARK_MAIN();
