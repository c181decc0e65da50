#include <benchmark/benchmark.h>

#include <random>

#include "sps/metrics.hpp"
#include "sps/rif.hpp"
#include "sps/synth.hpp"
#include "sps/touchstone.hpp"

using namespace sps;

namespace {

RifPointCloud make_cloud(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    RifPointCloud cloud;
    cloud.f_norm_hz = 1e9;
    double z = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        z += 0.005 + 0.01 * u01(rng);
        cloud.points.push_back({2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0, z});
        cloud.source_freqs_hz.push_back(z * 1e9);
    }
    return cloud;
}

std::vector<RifPoint> make_queries(const RifPointCloud& cloud, std::size_t n,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double zlo = cloud.points.front().z;
    double zhi = cloud.points.back().z;
    std::vector<RifPoint> queries;
    for (std::size_t k = 0; k < n; ++k) {
        queries.push_back(
            {2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0, zlo + (zhi - zlo) * u01(rng)});
    }
    return queries;
}

void BM_NearestBrute(benchmark::State& state) {
    auto cloud = make_cloud(static_cast<std::size_t>(state.range(0)), 1);
    auto queries = make_queries(cloud, 64, 2);
    std::size_t q = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nearest_distance_brute(queries[q++ % queries.size()], cloud));
    }
}
BENCHMARK(BM_NearestBrute)->Range(64, 16384);

void BM_NearestSweep(benchmark::State& state) {
    auto cloud = make_cloud(static_cast<std::size_t>(state.range(0)), 1);
    auto queries = make_queries(cloud, 64, 2);
    std::size_t q = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nearest_distance(queries[q++ % queries.size()], cloud));
    }
}
BENCHMARK(BM_NearestSweep)->Range(64, 16384);

void BM_Compare2Port(benchmark::State& state) {
    LineSpec lossless;
    lossless.grid = {1e7, 1e7 * static_cast<double>(state.range(0)), 1e7};
    LineSpec lossy = lossless;
    lossy.loss_db_per_m_at_f0 = 4.0;
    NetworkData a = ideal_line(lossless);
    NetworkData b = ideal_line(lossy);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compare(a, b, ComparisonConfig{}));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Compare2Port)->Range(256, 8192)->Complexity();

void BM_ParseTouchstone(benchmark::State& state) {
    LineSpec spec;
    spec.loss_db_per_m_at_f0 = 4.0;
    spec.grid = {1e7, 1e7 * static_cast<double>(state.range(0)), 1e7};
    std::string text = write_touchstone(ideal_line(spec), ValueFormat::RI, FreqUnit::GHz);
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_touchstone(text, 2));
    }
}
BENCHMARK(BM_ParseTouchstone)->Range(256, 8192);

void BM_WriteTouchstone(benchmark::State& state) {
    LineSpec spec;
    spec.loss_db_per_m_at_f0 = 4.0;
    spec.grid = {1e7, 1e7 * static_cast<double>(state.range(0)), 1e7};
    NetworkData net = ideal_line(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(write_touchstone(net, ValueFormat::RI, FreqUnit::GHz));
    }
}
BENCHMARK(BM_WriteTouchstone)->Range(256, 8192);

}  // namespace

BENCHMARK_MAIN();
