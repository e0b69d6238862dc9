#include <benchmark/benchmark.h>

#include "weyl/bessel.hpp"
#include "weyl/counting.hpp"
#include "weyl/fourier.hpp"
#include "weyl/lattice.hpp"
#include "weyl/spectra.hpp"

using namespace weyl;
using counting::ProductSpec;
using spectra::FactorSpec;

namespace {

lattice::WeightSpec torus2() { return {{1, 1}, {Rational(0), Rational(0)}}; }
lattice::WeightSpec plane21() { return {{2, 1}, {Rational(1, 4), Rational(0)}}; }

void bm_torus_count(benchmark::State& state) {
    auto w = torus2();
    double lam = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice::weighted_count(w, lam).value);
    }
}
BENCHMARK(bm_torus_count)->Arg(500)->Arg(2000)->Arg(8000);

void bm_weighted_count(benchmark::State& state) {
    auto w = plane21();
    double lam = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice::weighted_count(w, lam).value);
    }
}
BENCHMARK(bm_weighted_count)->Arg(300)->Arg(1000)->Arg(3000);

void bm_weighted_count_parallel(benchmark::State& state) {
    auto w = plane21();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice::weighted_count(w, 3000.0,
                                                         static_cast<int>(state.range(0)))
                                     .value);
    }
}
BENCHMARK(bm_weighted_count_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void bm_sphere_product(benchmark::State& state) {
    auto spec = ProductSpec::make({FactorSpec::sphere(2), FactorSpec::sphere(2)});
    double lam = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(counting::sphere_product_count(spec, lam));
    }
}
BENCHMARK(bm_sphere_product)->Arg(50)->Arg(200)->Arg(400);

void bm_cluster_walk(benchmark::State& state) {
    auto spec = ProductSpec::make({FactorSpec::zoll(3, Rational(2), 0.8, 0.25, 0.1,
                                                    spectra::Placement::SeededUniform, 5),
                                   FactorSpec::circle()});
    double lam = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(counting::zoll_product_count(spec, lam).total);
    }
}
BENCHMARK(bm_cluster_walk)->Arg(30)->Arg(80);

void bm_mollified_count(benchmark::State& state) {
    auto w = plane21();
    lattice::MollifierSpec moll;
    moll.epsilon = 0.2;
    double lam = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice::mollified_count(w, lam, moll));
    }
}
BENCHMARK(bm_mollified_count)->Arg(50)->Arg(200);

void bm_bessel(benchmark::State& state) {
    double z = 0.5;
    for (auto _ : state) {
        double acc = 0;
        for (int i = 0; i < 256; ++i) {
            acc += bessel_j_half(2, z + 0.13 * i);
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(bm_bessel);

void bm_poisson_sum(benchmark::State& state) {
    auto w = torus2();
    lattice::MollifierSpec moll;
    moll.epsilon = 0.3;
    fourier::TruncationSpec trunc;
    trunc.box_radius = static_cast<double>(state.range(0));
    trunc.tail_tolerance = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourier::poisson_error_sum(w, 10.0, moll, trunc).value);
    }
}
BENCHMARK(bm_poisson_sum)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
