// Timings for the hot paths: lattice enumeration, the Eisenstein table and the
// smoothed functional equation for the 11a example.
#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#include "arithlift/eisenstein.hpp"
#include "arithlift/lfunc.hpp"
#include "arithlift/special.hpp"

using namespace arithlift;

namespace {

void BM_NormCounts(benchmark::State& state) {
    auto K = std::make_shared<QuadField>(-7);
    for (auto _ : state) {
        // A fresh lattice each round so the count cache does not hide the enumeration.
        HermitianLattice L = unit_lattice(K, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(L.norm_counts(Rat(12), 7));
    }
}
BENCHMARK(BM_NormCounts)->Arg(1)->Arg(2)->Arg(3);

void BM_HolomorphicPart(benchmark::State& state) {
    auto K = std::make_shared<QuadField>(-23);
    HermSpaceSpec s0 = default_incoherent(K);
    for (auto _ : state) benchmark::DoNotOptimize(holomorphic_part(s0, Rat(state.range(0))));
}
BENCHMARK(BM_HolomorphicPart)->Arg(10)->Arg(40);

void BM_SpecialV(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(special_V_closed(3, 0.7, 1.3));
        benchmark::DoNotOptimize(special_V_quadrature(3, 0.7, 1.3));
    }
}
BENCHMARK(BM_SpecialV);

struct LSeries {
    RankinSeries V;
    LSeries() {
        NewformData g = ingest_newform(std::string(ARITHLIFT_DATA_DIR) + "/11a.csv", 11, 2);
        HermSpaceSpec s0 = default_incoherent(g.field);
        HermitianLattice L = unit_lattice(g.field, 1);
        FQMPtr mod = FiniteQuadraticModule::direct_sum(*FiniteQuadraticModule::rank_one(s0),
                                                       *FiniteQuadraticModule::from_lattice(L));
        InducedForm F = induce(g, orthogonal_sum(s0, L), mod, Rat(10000));
        V = vector_series(F, L, Rat(10000));
    }
};

const LSeries& series() {
    static const LSeries s;
    return s;
}

void BM_CompletedL(benchmark::State& state) {
    const RankinSeries& V = series().V;
    for (auto _ : state) benchmark::DoNotOptimize(completed_L(V, 0.5));
}
BENCHMARK(BM_CompletedL)->Unit(benchmark::kMillisecond);

void BM_LPrimeAt0(benchmark::State& state) {
    const RankinSeries& V = series().V;
    for (auto _ : state) benchmark::DoNotOptimize(L_prime_at_0(V));
}
BENCHMARK(BM_LPrimeAt0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
