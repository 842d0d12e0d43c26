#include <benchmark/benchmark.h>

#include "vortexform/inner_loop.hpp"
#include "vortexform/outer_loop.hpp"
#include "vortexform/sim.hpp"
#include "vortexform/wake.hpp"

using namespace vortexform;

namespace {

FollowerState trimmed_follower(const AircraftParams& P, const AeroCoeffs& C) {
    const TrimResult t = trim_solve(P, C, 200, 0, 5015);
    FollowerState f;
    f.x = -36;
    f.y = 9;
    f.z = -5015;
    f.V = 200;
    f.alpha = t.alpha;
    f.T = t.T;
    return f;
}

}  // namespace

static void BM_WakeSample(benchmark::State& st) {
    const AircraftParams P;
    const AeroCoeffs C;
    WakeParams w = WakeParams::for_leader(P, air_density(5000), 200);
    w.strips = static_cast<int>(st.range(0));
    const FollowerState f = trimmed_follower(P, C);
    LeaderPose l;
    l.position = Vec3(0, 0, -5000);
    for (auto _ : st) benchmark::DoNotOptimize(sample_wake(l, f, w, P, C));
}
BENCHMARK(BM_WakeSample)->Arg(40)->Arg(80)->Arg(160);

static void BM_ControllerTick(benchmark::State& st) {
    const AircraftParams P;
    const AeroCoeffs C;
    FollowerState f = trimmed_follower(P, C);
    OuterLoop outer(OuterGains{}, P, C, true);
    InnerLoop inner(InnerGains{}, P, C, true);
    ReferenceState r;
    r.x_r = -36;
    r.y_r = 9;
    r.z_r = -5015;
    r.V_r = 200;
    for (auto _ : st) {
        const OuterOutput o = outer.step(f, r, 0.002);
        benchmark::DoNotOptimize(inner.step(f, o.cmd.mu_d, o.cmd.alpha_d, Vec2::Zero(), 0.002));
        r.x_r += 0.4;
        f.x += 0.4;
    }
}
BENCHMARK(BM_ControllerTick);

static void BM_ShortRun(benchmark::State& st) {
    ScenarioConfig c = ScenarioConfig::scenario1();
    c.duration = 10;
    for (auto _ : st) benchmark::DoNotOptimize(run_scenario(c));
}
BENCHMARK(BM_ShortRun)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
