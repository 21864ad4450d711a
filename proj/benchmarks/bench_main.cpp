#include <benchmark/benchmark.h>

#include "hyperb/bieberbach.hpp"
#include "hyperb/charclasses.hpp"
#include "hyperb/cube_complex.hpp"
#include "hyperb/f2poly.hpp"
#include "hyperb/hyperbolize.hpp"

namespace {

void BM_NormalForm(benchmark::State& state) {
    const int n = (int)state.range(0);
    // Dense exponent vector; every variable needs sliding.
    const std::vector<hyperb::ExpVec> monos(8, hyperb::ExpVec(n - 1, 2));
    for (auto _ : state) {
        auto p = hyperb::normal_form(monos, n);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_NormalForm)->Arg(8)->Arg(14)->Arg(20);

void BM_SquareSigma(benchmark::State& state) {
    const int n = (int)state.range(0);
    const auto sigma = hyperb::w_ls(n, n / 4);
    for (auto _ : state) {
        auto sq = hyperb::square(sigma);
        benchmark::DoNotOptimize(sq);
    }
}
BENCHMARK(BM_SquareSigma)->Arg(12)->Arg(16)->Arg(20);

void BM_VanishesModL(benchmark::State& state) {
    const int n = (int)state.range(0);
    const auto sq = hyperb::square(hyperb::w_ls(n, 2));
    for (auto _ : state) {
        bool v = hyperb::vanishes_mod_L(sq);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_VanishesModL)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_CubulateLS(benchmark::State& state) {
    const int n = (int)state.range(0);
    const auto g = hyperb::normalize_even(hyperb::lee_szczarba_group(n));
    for (auto _ : state) {
        auto q = hyperb::quotient_cube_complex(g);
        benchmark::DoNotOptimize(q.complex.counts);
    }
}
BENCHMARK(BM_CubulateLS)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_HyperbolizeHatTorus(benchmark::State& state) {
    const int n = (int)state.range(0);
    const auto q = hyperb::quotient_cube_complex(hyperb::hat_torus_group(n));
    for (auto _ : state) {
        auto H = hyperb::hyperbolize(q.complex, hyperb::PieceModel{});
        benchmark::DoNotOptimize(H.gluings);
    }
}
BENCHMARK(BM_HyperbolizeHatTorus)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
