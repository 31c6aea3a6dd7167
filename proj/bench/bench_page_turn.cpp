#include "loophom/naturality.hpp"
#include "loophom/space_models.hpp"

#include <benchmark/benchmark.h>

using namespace loophom;

namespace {

struct TurnFixture {
    Page page;
    Differential d;
};

TurnFixture make_turn(const SpaceTag& s, int max_total) {
    Page e2 = loop_homology_E2(s, loop_window(s, max_total));
    const int r = known_differential_page(s);
    auto d = install_known_differentials(s, e2).at(r);
    e2.index = r;
    return {e2, d};
}

const SpaceTag& space_for(int which) {
    static const SpaceTag spaces[] = {SpaceTag::even_sphere(2), SpaceTag::complex_projective(4)};
    return spaces[which];
}

void BM_turn_page_serial(benchmark::State& state) {
    const auto f = make_turn(space_for(static_cast<int>(state.range(0))), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(turn_page_serial(f.page, f.d));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.page.cells.size()));
}

void BM_turn_page_parallel(benchmark::State& state) {
    const auto f = make_turn(space_for(static_cast<int>(state.range(0))), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(turn_page(f.page, f.d));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.page.cells.size()));
}

void abutment(benchmark::State& state, bool parallel) {
    const auto s = SpaceTag::even_sphere(2);
    const auto tag = FibrationTag::path_over_diagonal(s);
    const Page e2 = serre_E2(tag, serre_window(tag, 32));
    AbutmentConstraint c;
    c.groups = {{0, AbelianGroup{1, {}}}, {2, AbelianGroup{1, {}}}};
    c.boundary_classes = {e2.algebra->parse("a - b")};
    for (auto _ : state) benchmark::DoNotOptimize(solve_by_abutment(e2, 2, c, static_cast<int>(state.range(0)), {}, parallel));
}

void BM_abutment_serial(benchmark::State& state) { abutment(state, false); }
void BM_abutment_parallel(benchmark::State& state) { abutment(state, true); }

}  // namespace

// args: space (0 = S^2, 1 = CP^4), max total degree
BENCHMARK(BM_turn_page_serial)->Args({0, 120})->Args({0, 400})->Args({1, 120})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_turn_page_parallel)->Args({0, 120})->Args({0, 400})->Args({1, 120})->Unit(benchmark::kMillisecond);
// arg: coefficient bound B
BENCHMARK(BM_abutment_serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_abutment_parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
