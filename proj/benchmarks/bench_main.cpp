#include <benchmark/benchmark.h>

#include "commdiag/eigen.hpp"
#include "commdiag/generator.hpp"
#include "commdiag/simdiag.hpp"
#include "commdiag/svd.hpp"

using namespace commdiag;

namespace {

PairSpec spec_for(std::size_t n, bool repeated) {
    PairSpec s;
    s.n = n;
    s.seed = 1234 + n;
    s.multiplicities_a.clear();
    if (repeated) {
        for (std::size_t left = n; left > 0;) {
            const std::size_t m = std::min<std::size_t>(3, left);
            s.multiplicities_a.push_back(m);
            left -= m;
        }
    } else {
        s.multiplicities_a.assign(n, 1);
    }
    return s;
}

void bm_eigendecompose(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const MatrixPair pair = generate_commuting_pair(spec_for(n, false));
    for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(pair.a));
    state.SetComplexityN(state.range(0));
}

void bm_simdiag_simple(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const MatrixPair pair = generate_commuting_pair(spec_for(n, false));
    for (auto _ : state) benchmark::DoNotOptimize(simultaneous_diagonalize(pair.a, pair.b));
}

void bm_simdiag_repeated(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const MatrixPair pair = generate_commuting_pair(spec_for(n, true));
    for (auto _ : state) benchmark::DoNotOptimize(simultaneous_diagonalize(pair.a, pair.b));
}

void bm_svd_star(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const MatrixPair pair = generate_star_commuting_pair(spec_for(n, true));
    for (auto _ : state) benchmark::DoNotOptimize(svd_commuting_pair(pair.a, pair.b));
}

}  // namespace

BENCHMARK(bm_eigendecompose)->RangeMultiplier(2)->Range(4, 128)->Complexity(benchmark::oNCubed);
BENCHMARK(bm_simdiag_simple)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(bm_simdiag_repeated)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(bm_svd_star)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK_MAIN();
