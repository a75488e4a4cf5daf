// Parallel sphere means against the serial reference.
#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>

#include "qnev/integrate.hpp"
#include "qnev/nevanlinna.hpp"

using namespace qnev;

namespace {

const SemiregularRational kF(LeftPoly{Quaternion{0.2, 0, 0, 0.3}, Quaternion{0, 0, 0.5, 0}, 1.0, kOne},
                             LeftPoly{2.0, kI});

Integrand two_logs() {
    return [](const Quaternion& w, double* out) {
        out[0] = std::log(kF.abs_at(w));
        out[1] = std::log(kF.abs_at(conj(w)));
        return true;
    };
}

IntegratorConfig cfg_for(benchmark::State& st) {
    IntegratorConfig c;
    c.samples = static_cast<std::size_t>(st.range(0));
    c.seed = 20240607;
    return c;
}

void BM_Serial(benchmark::State& st) {
    IntegratorConfig cfg = cfg_for(st);
    Integrand g = two_logs();
    for (auto _ : st) benchmark::DoNotOptimize(integrate_serial(g, 2, 1.7, cfg));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Parallel(benchmark::State& st) {
    IntegratorConfig cfg = cfg_for(st);
    Integrand g = two_logs();
    int saved = omp_get_max_threads();
    omp_set_num_threads(static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(integrate(g, 2, 1.7, cfg));
    omp_set_num_threads(saved);
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_JensenReference(benchmark::State& st) {
    IntegratorConfig cfg = cfg_for(st);
    SemiregularRational f(LeftPoly::linear({0.5, 0.7, 0, 0}));
    for (auto _ : st) benchmark::DoNotOptimize(verify_jensen(f, 2.0, cfg));
}

void thread_args(benchmark::internal::Benchmark* b) {
    int max = omp_get_num_procs();
    for (long n : {100000L, 1000000L})
        for (int t = 1; t <= max; t *= 2) b->Args({n, t});
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_JensenReference)->Arg(300000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
