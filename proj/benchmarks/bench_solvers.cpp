#include <benchmark/benchmark.h>

#include <vector>

#include <dwring/composites.hpp>
#include <dwring/eigensolvers.hpp>
#include <dwring/hamiltonian.hpp>

using namespace dwring;

namespace {

HamiltonianApplier chain_sector() { return build_hamiltonian(build_spin1_chain(4, 10, 8, 1, 0.3, true).to_system(), 0); }

}  // namespace

static void BM_Matvec(benchmark::State& state) {
    const HamiltonianApplier h = chain_sector();
    std::vector<double> in(h.dimension(), 1.0), out(h.dimension());
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        h.apply(in, out, threads);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(h.dimension()));
}
BENCHMARK(BM_Matvec)->Arg(1)->Arg(2)->Arg(4);

static void BM_DenseLowest(benchmark::State& state) {
    const HamiltonianApplier h = chain_sector();
    SolverSettings s;
    s.kind = SolverKind::dense;
    for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenpairs(h, 2, s).eigenvalues);
}
BENCHMARK(BM_DenseLowest)->Unit(benchmark::kMillisecond);

static void BM_LanczosLowest(benchmark::State& state) {
    const HamiltonianApplier h = chain_sector();
    SolverSettings s;
    s.kind = SolverKind::lanczos;
    for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenpairs(h, 2, s).eigenvalues);
}
BENCHMARK(BM_LanczosLowest)->Unit(benchmark::kMillisecond);

static void BM_GapComparison(benchmark::State& state) {
    const CompositeSpec spec = build_spin1_chain(4, 10, 8, 1, 0.3, true);
    for (auto _ : state) benchmark::DoNotOptimize(gap_comparison(spec).e_gap_full);
}
BENCHMARK(BM_GapComparison)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
