#include <benchmark/benchmark.h>

#include <numbers>

#include "noonsim/circuits.hpp"
#include "noonsim/detection.hpp"
#include "noonsim/metrology.hpp"
#include "noonsim/script.hpp"
#include "noonsim/transforms.hpp"

namespace {

using namespace noonsim;

constexpr double kInvSqrt2 = 0.7071067811865475244;

void BM_ApplyBalancedSplitter8Photons(benchmark::State& state) {
    // worst realistic case: two four-photon NOON states meeting a splitter
    PureState joined = tensor(noon_state("a", 4, +1), noon_state("b", 4, -1));
    ModeTransform splitter = beam_splitter("a", "b", kInvSqrt2, kInvSqrt2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply(joined, splitter));
    }
}
BENCHMARK(BM_ApplyBalancedSplitter8Photons);

void BM_Noon4Pnr(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(noon4(kInvSqrt2, kInvSqrt2));
    }
}
BENCHMARK(BM_Noon4Pnr);

void BM_Noon8Cascade(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(noon8());
    }
}
BENCHMARK(BM_Noon8Cascade);

void BM_ConditionNoClick(benchmark::State& state) {
    const double eta = 0.66;
    Register reg = Register::of_paths({"a", "b"});
    PureState s = inject_photon(PureState::vacuum(reg), "a", PolState::D);
    s = inject_photon(s, "a", PolState::A);
    s = inject_photon(s, "b", PolState::L);
    s = inject_photon(s, "b", PolState::R);
    StateEnsemble pre(apply(s, beam_splitter("a", "b", kInvSqrt2, kInvSqrt2)));
    auto modes = reg.modes_of_path("b");
    for (auto _ : state) {
        benchmark::DoNotOptimize(condition_no_click(pre, modes, eta));
    }
}
BENCHMARK(BM_ConditionNoClick);

void BM_ParseAndRunNoon8Script(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_circuit(parse_circuit(scripts::kNoon8)));
    }
}
BENCHMARK(BM_ParseAndRunNoon8Script);

void BM_ParitySweepPoint(benchmark::State& state) {
    StateEnsemble ens = noon4(kInvSqrt2, kInvSqrt2, DetectorModel::on_off(0.66)).output;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phase_sensitivity_numeric(ens, std::numbers::pi / 8));
    }
}
BENCHMARK(BM_ParitySweepPoint);

}  // namespace

BENCHMARK_MAIN();
