#include "vortexform/sim.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace vortexform {

namespace {

using Vec17 = Eigen::Matrix<double, 17, 1>;

Vec3 trim_residual(const Eigen::Vector3d& u, const AircraftParams& P, const AeroCoeffs& C, double V, double gamma,
                   double altitude, const UncertaintySpec& spec) {
    FollowerState s;
    s.z = -altitude;
    s.V = V;
    s.gamma = gamma;
    s.alpha = u[0];
    s.T = u[1];
    ControlCommand c;
    c.T_c = u[1];
    c.delta_e = u[2];
    const FollowerState d = truth_derivative(s, c, WakeSample{}, spec, P, C);
    return {d.V, d.gamma, d.q};
}

std::string snapshot_json(double t, const LeaderState& l, const FollowerState& f, const ControlCommand& c) {
    nlohmann::ordered_json j;
    j["t"] = t;
    j["leader"] = {{"x", l.x}, {"y", l.y}, {"z", l.z}, {"V", l.V}, {"gamma", l.gamma}, {"chi", l.chi}};
    const auto a = f.to_array();
    j["follower"] = std::vector<double>(a.begin(), a.end());
    j["command"] = {{"T_c", c.T_c}, {"delta_a", c.delta_a}, {"delta_e", c.delta_e}, {"delta_r", c.delta_r}};
    return j.dump(2);
}

LeaderState leader_at(const Vec17& x, const LeaderCommand& lc) {
    LeaderState l;
    l.x = x[0];
    l.y = x[1];
    l.z = x[2];
    l.chi = x[3];
    l.V = lc.V;
    l.gamma = lc.gamma;
    l.chi_dot = lc.chi_dot;
    l.gamma_dot = lc.gamma_dot;
    l.mu = coordinated_bank(lc.V, lc.gamma, lc.chi_dot);
    return l;
}

FollowerState follower_at(const Vec17& x) {
    std::array<double, FollowerState::kSize> a;
    for (int i = 0; i < FollowerState::kSize; ++i) a[i] = x[4 + i];
    return FollowerState::from_array(a);
}

}  // namespace

TrimResult trim_solve(const AircraftParams& P, const AeroCoeffs& C, double V, double gamma, double altitude,
                      const UncertaintySpec& spec) {
    Eigen::Vector3d u(3.0 * kDeg, 0.05 * P.m * kG, 0.0);
    Vec3 r = trim_residual(u, P, C, V, gamma, altitude, spec);
    const double h[3] = {1e-7, 1e-2, 1e-7};
    for (int it = 1; it <= 50; ++it) {
        Mat3 J;
        for (int k = 0; k < 3; ++k) {
            Eigen::Vector3d up = u, um = u;
            up[k] += h[k];
            um[k] -= h[k];
            J.col(k) = (trim_residual(up, P, C, V, gamma, altitude, spec) -
                        trim_residual(um, P, C, V, gamma, altitude, spec)) / (2.0 * h[k]);
        }
        u -= J.partialPivLu().solve(r);
        r = trim_residual(u, P, C, V, gamma, altitude, spec);
        if (r.cwiseAbs().maxCoeff() < 1e-8) {
            if (u[1] > P.T_max || u[1] < 0.0) throw TrimError("trim thrust outside [0, T_max]");
            return {u[0], u[1], u[2], r.cwiseAbs().maxCoeff(), it};
        }
    }
    throw TrimError("trim did not converge in 50 iterations");
}

void ScenarioConfig::validate() const {
    if (!(dt >= 1e-4 && dt <= 0.01)) throw ConfigError("dt must lie in [1e-4, 0.01] s");
    if (!(duration > 0.0)) throw ConfigError("duration must be positive");
    if (!(speed >= kStallSpeed)) throw ConfigError("speed below stall floor");
    if (!(window > 0.0) || !(settle_time >= 0.0)) throw ConfigError("window and settle_time must be positive");
    if (!(core_radius_ratio > 0.0) || !std::isfinite(circulation_scale)) throw ConfigError("bad wake settings");
    aircraft.validate();
    aero.validate();
    uncertainty.validate();
    formation.validate(aircraft.b);
    outer.validate();
    inner.validate();
    wake_params().validate();
}

std::string ScenarioConfig::signature() const {
    std::ostringstream os;
    os.precision(17);
    os << name << '|' << dt << '|' << duration << '|' << speed << '|' << wake << '|';
    for (const auto& s : leader.segments()) os << s.duration << ',' << s.V << ',' << s.gamma << ',' << s.chi_dot << ';';
    os << leader.ramp() << '|' << leader_position.transpose() << '|' << follower_position.transpose() << '|'
       << formation.r_x << ',' << formation.r_y << '|' << uncertainty.drag << ',' << uncertainty.lift_slope << ','
       << uncertainty.roll_moment << ',' << uncertainty.pitch_moment << ',' << uncertainty.yaw_moment << ','
       << uncertainty.C_Y_beta << '|' << core_radius_ratio << ',' << circulation_scale << ',' << wake_strips;
    // gains and coefficients
    const OuterGains& o = outer;
    os << '|' << o.K_x << ',' << o.K_z << ',' << o.K_V << ',' << o.K_gamma << ',' << o.K_chi << ',' << o.c_V << ','
       << o.c_chi << ',' << o.T_Wx << ',' << o.T_Wy << ',' << o.T_Wz << ',' << o.T_V << ',' << o.T_gamma << ','
       << o.T_chi << ',' << o.omega_V << ',' << o.omega_gamma << ',' << static_cast<int>(o.observer_input);
    const InnerGains& i = inner;
    os << '|' << i.K_mu << ',' << i.K_alpha << ',' << i.K_beta << ',' << i.K_p << ',' << i.K_q << ',' << i.K_r << ','
       << i.c_p << ',' << i.T_mu << ',' << i.T_p << ',' << i.omega_mu << ',' << i.omega_p << ',' << i.omega_q;
    os << '|' << aircraft.m << ',' << aircraft.S << ',' << aero.C_D0 << ',' << aero.C_L_alpha << ',' << aero.C_M_alpha;
    return os.str();
}

WakeParams ScenarioConfig::wake_params() const {
    WakeParams w = WakeParams::for_leader(aircraft, air_density(-leader_position.z()), leader.at(0.0).V);
    w.core_radius = core_radius_ratio * aircraft.b;
    w.circulation *= circulation_scale;
    w.strips = wake_strips;
    return w;
}

ScenarioConfig ScenarioConfig::scenario1(double V) {
    ScenarioConfig c;
    c.name = "s1";
    c.speed = V;
    c.leader = LeaderProfile::scenario1(V);
    c.duration = c.leader.duration();
    return c;
}

ScenarioConfig ScenarioConfig::scenario2(double V) {
    ScenarioConfig c = scenario1(V);
    c.name = "s2";
    return c;
}

ScenarioConfig ScenarioConfig::nominal() {
    ScenarioConfig c;
    c.name = "nominal";
    c.leader = LeaderProfile({{180.0, c.speed, 0.0, 0.0}});
    c.duration = 180.0;
    c.wake = false;
    c.uncertainty = UncertaintySpec::none();
    return c;
}

ScenarioConfig ScenarioConfig::by_name(const std::string& name, double V) {
    if (name == "s1") return scenario1(V);
    if (name == "s2") return scenario2(V);
    if (name == "nominal") {
        ScenarioConfig c = nominal();
        c.speed = V;
        c.leader = LeaderProfile({{180.0, V, 0.0, 0.0}});
        return c;
    }
    throw ConfigError("unknown scenario '" + name + "' (expected s1, s2 or nominal)");
}

RunResult run_scenario(const ScenarioConfig& cfg, const TelemetrySink& sink) {
    cfg.validate();
    const auto wall0 = std::chrono::steady_clock::now();
    const AircraftParams& P = cfg.aircraft;
    const AeroCoeffs& C = cfg.aero;

    RunResult res;
    res.wake = cfg.wake_params();
    const LeaderCommand lc0 = cfg.leader.at(0.0);
    res.trim = trim_solve(P, C, lc0.V, lc0.gamma, -cfg.follower_position.z(), cfg.uncertainty);

    Vec17 x = Vec17::Zero();
    x.head<3>() = cfg.leader_position;
    x[3] = 0.0;
    FollowerState f0;
    f0.x = cfg.follower_position.x();
    f0.y = cfg.follower_position.y();
    f0.z = cfg.follower_position.z();
    f0.V = lc0.V;
    f0.gamma = lc0.gamma;
    f0.alpha = res.trim.alpha;
    f0.T = res.trim.T;
    {
        const auto a = f0.to_array();
        for (int i = 0; i < FollowerState::kSize; ++i) x[4 + i] = a[i];
    }

    Planner planner(cfg.formation, cfg.planner);
    OuterLoop outer(cfg.outer, P, C, cfg.observers);
    InnerLoop inner(cfg.inner, P, C, cfg.observers);

    std::vector<double> ends;
    for (double e : cfg.leader.phase_ends()) {
        if (e <= cfg.duration + 1e-9) ends.push_back(e);
    }
    if (ends.empty() || ends.back() < cfg.duration - 1e-9) ends.push_back(cfg.duration);
    MetricsAccumulator acc(ends, cfg.window, cfg.settle_time);

    const long n = std::lround(cfg.duration / cfg.dt);
    const double dt = cfg.dt;
    ControlCommand u;
    LeaderState leader;
    FollowerState s;
    double t = 0.0;

    auto wake_at = [&](const LeaderState& l, const FollowerState& fs) {
        if (!cfg.wake) return WakeSample{};
        return sample_wake(LeaderPose{Vec3(l.x, l.y, l.z), l.angles()}, fs, res.wake, P, C);
    };

    try {
        for (long k = 0; k <= n; ++k) {
            t = k * dt;
            const LeaderCommand lc = cfg.leader.at(t);
            leader = leader_at(x, lc);
            s = follower_at(x);

            const ReferenceState ref = planner.update(leader, dt);
            const OuterOutput oo = outer.step(s, ref, dt);
            const Vec3 un = nominal_outer_inputs(s, P, C);
            const Vec2 psi_dot_hat(un[1] + oo.d_hat[1], un[2] + oo.d_hat[2]);
            const InnerOutput io = inner.step(s, oo.cmd.mu_d, oo.cmd.alpha_d, psi_dot_hat, dt);

            u.T_c = oo.cmd.T_c;
            u.delta_a = io.surfaces.delta_a;
            u.delta_e = io.surfaces.delta_e;
            u.delta_r = io.surfaces.delta_r;
            u.thrust_saturated = oo.cmd.thrust_saturated;
            u.surface_saturated = io.surfaces.saturated;

            const WakeSample w = wake_at(leader, s);
            TickSample ts;
            ts.t = t;
            ts.x_e = s.x - ref.x_r;
            ts.y_e = s.y - ref.y_r;
            ts.z_e = s.z - ref.z_r;
            ts.e_x = oo.err.e_x;
            ts.e_y = oo.err.e_y;
            ts.e_z = oo.err.e_z;
            ts.thrust = s.T;
            ts.beta = s.beta;
            ts.wake_error = (oo.W_hat - w.W).norm();
            ts.thrust_sat = oo.cmd.thrust_saturated;
            ts.attitude_sat = oo.cmd.attitude_saturated;
            ts.surface_sat = io.surfaces.saturated;
            ts.allocation_error = oo.cmd.allocation_error || io.surfaces.allocation_error;
            acc.add(ts);

            if (sink) {
                TelemetryRow row;
                int c = 0;
                auto put = [&](double v) { row.v[c++] = v; };
                put(t);
                for (double v : {leader.x, leader.y, leader.z, leader.V, leader.gamma, leader.chi, leader.mu,
                                 leader.chi_dot, leader.gamma_dot})
                    put(v);
                for (double v : s.to_array()) put(v);
                for (double v : {ref.x_r, ref.y_r, ref.z_r, ref.V_r, ref.gamma_r, ref.chi_r}) put(v);
                for (double v : {ts.x_e, ts.y_e, ts.z_e, s.V - ref.V_r, s.gamma - ref.gamma_r,
                                 wrap_pi(s.chi - ref.chi_r)})
                    put(v);
                for (int i = 0; i < 3; ++i) put(oo.W_hat[i]);
                for (int i = 0; i < 3; ++i) put(oo.d_hat[i]);
                for (int i = 0; i < 3; ++i) put(io.d_hat_tau[i]);
                for (double v : {u.T_c, u.delta_a, u.delta_e, u.delta_r}) put(v);
                put(ts.thrust_sat);
                put(ts.attitude_sat);
                put(ts.surface_sat);
                sink(row);
            }
            if (k == n) break;

            auto deriv = [&](const Vec17& xs, double tau) -> Vec17 {
                const LeaderCommand lcs = cfg.leader.at(t + tau);
                const LeaderState ls = leader_at(xs, lcs);
                const FollowerState fs = follower_at(xs);
                const FollowerState d = truth_derivative(fs, u, wake_at(ls, fs), cfg.uncertainty, P, C);
                Vec17 out;
                const Vec3 lv = ls.velocity();
                out.head<3>() = lv;
                out[3] = lcs.chi_dot;
                const auto a = d.to_array();
                for (int i = 0; i < FollowerState::kSize; ++i) out[4 + i] = a[i];
                return out;
            };
            x = rk4_step(deriv, x, dt);
        }
    } catch (SimulationAbort& e) {
        e.set_context(t, snapshot_json(t, leader, s, u));
        throw;
    }

    res.metrics = acc.finish();
    res.metrics.config_signature = cfg.signature();
    res.metrics.observers = cfg.observers;
    res.metrics.asin_clamps = planner.diagnostics().asin_clamps;
    res.metrics.fpa_clamps = outer.clamp_count();
    res.metrics.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return res;
}

std::vector<SpeedResult> lateral_speed_study(const ScenarioConfig& base, const std::vector<double>& speeds,
                                             unsigned threads) {
    if (speeds.size() < 2) throw InvalidArgument("lateral_speed_study: at least two speeds required");
    std::vector<ScenarioConfig> cfgs;
    for (double V : speeds) {
        ScenarioConfig c = base;
        c.name = "s2";
        c.speed = V;
        std::vector<LeaderSegment> segs = base.leader.segments();
        for (auto& sg : segs) sg.V = V;
        c.leader = LeaderProfile(segs, base.leader.ramp());
        c.validate();
        cfgs.push_back(c);
    }
    std::vector<SpeedResult> out(speeds.size());
    std::vector<std::exception_ptr> errs(speeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cfgs.size(); i = next++) {
            try {
                const RunResult r = run_scenario(cfgs[i]);
                SpeedResult& sr = out[i];
                sr.V = speeds[i];
                sr.metrics = r.metrics;
                // the turn is the longest phase; fall back to the last window
                const auto& ws = r.metrics.windows;
                const PhaseWindow& w = ws.size() >= 2 ? ws[1] : ws.back();
                sr.steady_y = w.max_abs_y_e;
                sr.steady_e_y = w.max_abs_e_y;
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfgs.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < nt; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errs) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace vortexform
