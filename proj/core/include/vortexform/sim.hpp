#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vortexform/errors.hpp"
#include "vortexform/inner_loop.hpp"
#include "vortexform/metrics.hpp"
#include "vortexform/outer_loop.hpp"
#include "vortexform/planner.hpp"
#include "vortexform/telemetry.hpp"
#include "vortexform/vehicle.hpp"
#include "vortexform/wake.hpp"

namespace vortexform {

// Classical RK4 for Eigen-like vectors.
template <class State, class Deriv>
State rk4_step(const Deriv& f, const State& x, double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("rk4_step: dt must be positive");
    const State k1 = f(x, 0.0);
    const State k2 = f(x + 0.5 * dt * k1, 0.5 * dt);
    const State k3 = f(x + 0.5 * dt * k2, 0.5 * dt);
    const State k4 = f(x + dt * k3, dt);
    const State out = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!out.allFinite()) throw SimulationAbort("rk4_step: non-finite state");
    return out;
}

struct TrimResult {
    double alpha = 0;
    double T = 0;
    double delta_e = 0;
    double residual = 0;
    int iterations = 0;
};

// Newton on (V_dot, gamma_dot, q_dot) at wings level, zero sideslip and rates.
TrimResult trim_solve(const AircraftParams& P, const AeroCoeffs& C, double V, double gamma, double altitude,
                      const UncertaintySpec& spec = UncertaintySpec::none());

struct ScenarioConfig {
    std::string name = "s1";
    double dt = 0.002;
    double duration = 180.0;
    double speed = 200.0;
    LeaderProfile leader = LeaderProfile::scenario1();
    Vec3 leader_position{45.0, -15.0, -5015.0};
    Vec3 follower_position{45.0, -15.0, -5015.0};
    FormationGeometry formation;
    UncertaintySpec uncertainty;
    bool wake = true;
    bool observers = true;

    AircraftParams aircraft;
    AeroCoeffs aero;
    PlannerGains planner;
    OuterGains outer;
    InnerGains inner;
    double core_radius_ratio = 0.05;  // r_c / b
    double circulation_scale = 1.0;
    int wake_strips = 40;

    double window = 20.0;
    double settle_time = 60.0;

    void validate() const;
    // Everything except the observer flag.
    std::string signature() const;
    WakeParams wake_params() const;

    static ScenarioConfig scenario1(double V = 200.0);
    static ScenarioConfig scenario2(double V);
    // Wake off, nominal model, level leader.
    static ScenarioConfig nominal();
    static ScenarioConfig by_name(const std::string& name, double V = 200.0);
};

struct RunResult {
    RunMetrics metrics;
    TrimResult trim;
    WakeParams wake;
};

RunResult run_scenario(const ScenarioConfig& cfg, const TelemetrySink& sink = {});

struct SpeedResult {
    double V = 0;
    double steady_y = 0;    // max |y_e| in the last 20 s of the turn
    double steady_e_y = 0;  // same, track frame
    RunMetrics metrics;
};

// Scenario 2 at each speed, same gains. Runs are independent and may execute in parallel.
std::vector<SpeedResult> lateral_speed_study(const ScenarioConfig& base, const std::vector<double>& speeds,
                                             unsigned threads = 1);

}  // namespace vortexform
