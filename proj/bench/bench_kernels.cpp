#include "isowreath/curvature.hpp"
#include "isowreath/discrete.hpp"
#include "isowreath/isometry.hpp"
#include "isowreath/minkowski.hpp"
#include "isowreath/wreath.hpp"

#include <benchmark/benchmark.h>

using namespace isowreath;

namespace {

Exec mode(const benchmark::State& s) { return s.range(1) ? Exec::Parallel : Exec::Serial; }

Grid2 square(int n) { return Grid2::spanning(-1, 1, -1, 1, n, n); }

void BM_curvature_grid(benchmark::State& s)
{
    const Field f = Field::analytic("sin(u)*cosh(v)/2 + u^2*v/3");
    const Grid2 g = square(static_cast<int>(s.range(0)));
    for (auto _ : s)
        benchmark::DoNotOptimize(curvature_grid(f, g, mode(s)).K.data());
    s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(g.size()));
}

void BM_is_isometric(benchmark::State& s)
{
    const HeightField f(Field::analytic("(u^2 - v^2 + cos(1 + u)*cosh(1 + v))/10 + (u^2 + v^2)/6"));
    const HeightField h(Field::analytic("(u^2 - v^2 + cos(1 + u)*cosh(1 + v))/10 - (u^2 + v^2)/6"));
    const Grid2 g = square(static_cast<int>(s.range(0)));
    for (auto _ : s)
        benchmark::DoNotOptimize(is_isometric(f, h, g, 1e-10, mode(s)).max_dK);
    s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(g.size()));
}

void BM_wreath_report(benchmark::State& s)
{
    const Grid2 g = square(static_cast<int>(s.range(0)));
    const WreathSet w = build_wreath({HeightField(Field::analytic("(u^2 + v^2)/2")), HeightField(Field::analytic("u*v"))},
                                     g, 1e-8);
    for (auto _ : s)
        benchmark::DoNotOptimize(wreath_report(w, mode(s)).max_residual());
    s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(g.size()));
}

void BM_windowed_mixed_area(benchmark::State& s)
{
    const Field f = Field::analytic("(u^2 + 2*v^2)/2 + u^3/9");
    const Field h = Field::analytic("u*v + v^3/7");
    const Grid2 g = square(static_cast<int>(s.range(0)));
    for (auto _ : s)
        benchmark::DoNotOptimize(windowed_mixed_area(f, h, g, mode(s)).mixed_area);
}

void BM_is_qnet(benchmark::State& s)
{
    const int n = static_cast<int>(s.range(0));
    const auto top = circle_tangent_topview(n, n, 0, 0.8, 1.6, 2.4);
    std::vector<double> zr(n), zc(n);
    for (int k = 0; k < n; ++k) {
        zr[k] = 0.3 * std::sin(0.2 * k);
        zc[k] = 0.2 * std::cos(0.3 * k) - 0.2;
    }
    const QuadNet F = voss_construct(n, n, top, zr, zc);
    for (auto _ : s)
        benchmark::DoNotOptimize(is_qnet(F, 1e-10, mode(s)).max_residual);
}

} // namespace

// Args: {grid side, parallel}
BENCHMARK(BM_curvature_grid)->ArgsProduct({{65, 257}, {0, 1}});
BENCHMARK(BM_is_isometric)->ArgsProduct({{65, 257}, {0, 1}});
BENCHMARK(BM_wreath_report)->ArgsProduct({{33, 129}, {0, 1}});
BENCHMARK(BM_windowed_mixed_area)->ArgsProduct({{65, 257}, {0, 1}});
BENCHMARK(BM_is_qnet)->ArgsProduct({{21, 41}, {0, 1}});

BENCHMARK_MAIN();
