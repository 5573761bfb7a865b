#include <benchmark/benchmark.h>

#include "wolff/generator.hpp"
#include "wolff/instance.hpp"

using namespace wolff;

namespace {

Instance make_bench_instance(int depth, std::size_t atoms) {
    InstanceSpec spec;
    spec.seed = 0xbe7c4;
    spec.n = 1;
    spec.level_min = -depth;
    spec.level_max = 0;
    spec.sigma_atoms = atoms;
    spec.mu_atoms = atoms;
    return generate(spec);
}

void BM_MassTreeBuild(benchmark::State &state) {
    const auto inst = make_bench_instance(static_cast<int>(state.range(0)),
                                          static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) {
        MassTree tree(inst.window, inst.sigma);
        benchmark::DoNotOptimize(tree.cube_mass().data());
    }
}
BENCHMARK(BM_MassTreeBuild)->Args({6, 1000})->Args({10, 10000});

void BM_Aggregate(benchmark::State &state) {
    const auto inst = make_bench_instance(static_cast<int>(state.range(0)),
                                          static_cast<std::size_t>(state.range(1)));
    const MassTree tree(inst.window, inst.sigma);
    const std::vector<double> values(inst.sigma.size(), 1.0);
    for (auto _ : state) {
        auto field = tree.aggregate(values);
        benchmark::DoNotOptimize(field.data());
    }
}
BENCHMARK(BM_Aggregate)->Args({6, 1000})->Args({10, 10000});

void BM_ApplyTSweep(benchmark::State &state) {
    const auto inst = make_bench_instance(static_cast<int>(state.range(0)),
                                          static_cast<std::size_t>(state.range(1)));
    const auto setting = make_setting(inst);
    const std::vector<double> ones(inst.sigma.size(), 1.0);
    for (auto _ : state) {
        auto values = setting.apply_T_sweep(ones, inst.mu);
        benchmark::DoNotOptimize(values.data());
    }
}
BENCHMARK(BM_ApplyTSweep)->Args({6, 1000})->Args({10, 10000});

void BM_WolffEnergy(benchmark::State &state) {
    const auto inst = make_bench_instance(static_cast<int>(state.range(0)),
                                          static_cast<std::size_t>(state.range(1)));
    const auto setting = make_setting(inst);
    const Exponents e(2.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(setting.wolff_energy(inst.mu, e));
    }
}
BENCHMARK(BM_WolffEnergy)->Args({6, 1000})->Args({10, 10000});

void BM_Carleson(benchmark::State &state) {
    const auto inst = make_bench_instance(static_cast<int>(state.range(0)),
                                          static_cast<std::size_t>(state.range(1)));
    const auto setting = make_setting(inst);
    const Exponents e(2.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(setting.carleson_constant(inst.mu, e).B);
    }
}
BENCHMARK(BM_Carleson)->Args({6, 1000})->Args({10, 10000});

} // namespace

BENCHMARK_MAIN();
