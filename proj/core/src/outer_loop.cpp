#include "vortexform/outer_loop.hpp"

#include <algorithm>
#include <cmath>

#include "vortexform/errors.hpp"

namespace vortexform {

void OuterGains::validate() const {
    const double pos[] = {K_x,     K_z,   K_V,   K_gamma, K_chi,   c_V,     c_chi,  T_Wx,     T_Wy,
                          T_Wz,    T_V,   T_gamma, T_chi,  omega_V, omega_gamma, zeta_V, zeta_gamma,
                          omega_chi_f, zeta_chi_f};
    for (double v : pos) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("OuterGains: all gains must be positive");
    }
}

std::vector<AuditItem> audit_outer_gains(const OuterGains& g) {
    std::vector<AuditItem> out;
    auto below = [&](std::string name, double v, double b) { out.push_back({std::move(name), v, b, false, v < b}); };
    auto above = [&](std::string name, double v, double b) { out.push_back({std::move(name), v, b, true, v > b}); };
    below("K_x < 2 zeta_V omega_V", g.K_x, 2.0 * g.zeta_V * g.omega_V);
    below("K_z < 2 zeta_gamma omega_gamma", g.K_z, 2.0 * g.zeta_gamma * g.omega_gamma);
    above("det[[2K_chi,-1],[-1,1/T_chi]] > 0", 2.0 * g.K_chi / g.T_chi - 1.0, 0.0);
    above("det[[K_V,-1/2],[-1/2,1/T_V]] > 0", g.K_V / g.T_V - 0.25, 0.0);
    above("det[[K_gamma,-1/2],[-1/2,1/T_gamma]] > 0", g.K_gamma / g.T_gamma - 0.25, 0.0);
    return out;
}

CorrectedAir corrected_air_state(double V, double gamma, double chi, const Vec3& W) {
    const double cg = std::cos(gamma), sg = std::sin(gamma);
    const double cc = std::cos(chi), sc = std::sin(chi);
    const Vec3 ground(V * cg * cc + W.x(), V * cg * sc + W.y(), -V * sg + W.z());
    CorrectedAir a;
    a.V_hat = ground.norm();
    if (!(a.V_hat > 1.0)) throw SimulationAbort("corrected airspeed degenerate (<= 1 m/s)");
    a.gamma_hat = -std::asin(std::clamp((W.z() - V * sg) / a.V_hat, -1.0, 1.0));
    const double arg = (W.y() * cc - W.x() * sc) / (a.V_hat * std::cos(a.gamma_hat));
    a.chi_hat = chi + std::asin(std::clamp(arg, -1.0, 1.0));
    a.dV = a.V_hat - V;
    return a;
}

GuidanceErrors guidance_errors(const Vec3& pos, const ReferenceState& ref, double chi_hat, double xi_x,
                               double xi_z) {
    GuidanceErrors e;
    e.x_e = pos.x() - ref.x_r;
    e.y_e = pos.y() - ref.y_r;
    e.z_e = pos.z() - ref.z_r;
    const TrackError t = inertial_error_to_track(e.x_e, e.y_e, e.z_e, chi_hat);
    e.e_x = t.e_x;
    e.e_y = t.e_y;
    e.e_z = t.e_z;
    e.eps_x = e.e_x - xi_x;
    e.eps_z = e.e_z - xi_z;
    e.e_chi = wrap_pi(chi_hat - ref.chi_r);
    return e;
}

SpeedFpa desired_speed_fpa(const GuidanceErrors& e, const ReferenceState& ref, const CorrectedAir& air,
                           double V_f, double W_hat_z, const OuterGains& g, long& clamp_count) {
    const double cgh = std::cos(air.gamma_hat);
    if (!(cgh > 0.05)) throw SimulationAbort("near-vertical corrected flight path");
    SpeedFpa out;
    out.V_d = (-g.K_x * e.e_x + ref.V_r * std::cos(ref.gamma_r) * std::cos(e.e_chi)) / cgh - air.dV;
    double arg = (g.K_z * e.e_z + ref.V_r * std::sin(ref.gamma_r) + W_hat_z) / V_f;
    if (arg > 1.0 || arg < -1.0) {
        ++clamp_count;
        arg = std::clamp(arg, -1.0, 1.0);
    }
    out.gamma_d = std::asin(arg);
    return out;
}

Vec3 outer_nominal_inputs(const GuidanceErrors& e, double e_V, double e_gamma, const ReferenceState& ref,
                          const CorrectedAir& air, const OuterGains& g) {
    const double H = std::sqrt(e.eps_x * e.eps_x + e.e_y * e.e_y + 1.0);
    return {-g.K_V * e_V - g.c_V * e.eps_x * std::cos(air.gamma_hat) / H,
            -g.K_gamma * e_gamma,
            -g.K_chi * std::sin(0.5 * e.e_chi) -
                g.c_chi * e.e_y * ref.V_r * std::cos(ref.gamma_r) * std::cos(0.5 * e.e_chi) / H};
}

AuxStates auxiliary_update(const AuxStates& xi, double V_c, double V_d, double gamma_d, double gamma_f, double V_f,
                           double gamma_hat, const OuterGains& g, double dt) {
    const double fx = (V_c - V_d) * std::cos(gamma_hat);
    const double fz = V_f * (std::sin(gamma_d) - std::sin(gamma_f));
    auto rk4 = [dt](double x, double k, double f) {
        auto rhs = [&](double v) { return -k * v + f; };
        const double k1 = rhs(x);
        const double k2 = rhs(x + 0.5 * dt * k1);
        const double k3 = rhs(x + 0.5 * dt * k2);
        const double k4 = rhs(x + dt * k3);
        return x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    };
    return {rk4(xi.xi_x, g.K_x, fx), rk4(xi.xi_z, g.K_z, fz)};
}

OuterCommand allocate(const Vec3& u, const FollowerState& s, const NominalForces& nf, const AircraftParams& P,
                      const OuterCommand& previous) {
    const double ca = std::cos(s.alpha), cb = std::cos(s.beta);
    if (!(ca * cb > 0.5) || !(nf.L_bar_alpha > 0.0)) {
        OuterCommand held = previous;
        held.allocation_error = true;
        return held;
    }
    const double cg = std::cos(s.gamma);
    OuterCommand c;
    c.T_c = (P.m * (u.x() + kG * std::sin(s.gamma)) + nf.D_bar) / (ca * cb);
    const double a = u.y() + kG * cg / s.V;
    const double b = u.z() * cg;
    c.mu_d = std::atan2(P.m * s.V * u.z() * cg, P.m * s.V * u.y() + P.m * kG * cg);
    // A negative-g demand lands beyond +-90 deg; flip to the same force with negative lift.
    double lift_sign = 1.0;
    if (std::abs(c.mu_d) > 0.5 * kPi) {
        c.mu_d -= std::copysign(kPi, c.mu_d);
        lift_sign = -1.0;
    }
    c.alpha_d = (lift_sign * P.m * s.V * std::sqrt(a * a + b * b) - s.T * std::sin(s.alpha) - nf.L_bar0) /
                nf.L_bar_alpha;

    if (c.T_c < 0.0 || c.T_c > P.T_max) {
        c.T_c = std::clamp(c.T_c, 0.0, P.T_max);
        c.thrust_saturated = true;
    }
    if (std::abs(c.alpha_d) > kAlphaLimit || std::abs(c.mu_d) > kMuLimit) {
        c.alpha_d = std::clamp(c.alpha_d, -kAlphaLimit, kAlphaLimit);
        c.mu_d = std::clamp(c.mu_d, -kMuLimit, kMuLimit);
        c.attitude_saturated = true;
    }
    return c;
}

OuterLoop::OuterLoop(const OuterGains& g, const AircraftParams& P, const AeroCoeffs& C, bool observers)
    : g_(g), P_(P), C_(C), observers_(observers) {
    g_.validate();
    wake_obs_ = LambdaObserver3(Vec3(g.T_Wx, g.T_Wy, g.T_Wz));
    outer_obs_ = LambdaObserver3(Vec3(g.T_V, g.T_gamma, g.T_chi));
}

OuterOutput OuterLoop::step(const FollowerState& s, const ReferenceState& ref, double dt) {
    OuterOutput o;
    o.ref = ref;
    const Vec3 pos = s.position();
    const Vec3 air_state(s.V, s.gamma, s.chi);
    const Vec3 UP(s.V * std::cos(s.gamma) * std::cos(s.chi), s.V * std::cos(s.gamma) * std::sin(s.chi),
                  -s.V * std::sin(s.gamma));

    if (!initialized_) {
        wake_obs_.init(pos);
        outer_obs_.init(air_state);
    } else if (observers_) {
        o.W_hat = wake_obs_.step(pos, last_UP_, dt);
        o.d_hat = outer_obs_.step(air_state, last_f_, dt);
    }

    o.air = corrected_air_state(s.V, s.gamma, s.chi, o.W_hat);
    if (!initialized_) chi_f_filter_ = CommandFilter2(g_.omega_chi_f, g_.zeta_chi_f, o.air.chi_hat);
    o.chi_hat_dot = chi_f_filter_.rate();

    o.err = guidance_errors(pos, ref, o.air.chi_hat, xi_.xi_x, xi_.xi_z);
    const SpeedFpa sf = desired_speed_fpa(o.err, ref, o.air, s.V, o.W_hat.z(), g_, clamps_);
    o.V_d = sf.V_d;
    o.gamma_d = sf.gamma_d;
    if (!initialized_) {
        V_filter_ = CommandFilter2(g_.omega_V, g_.zeta_V, sf.V_d);
        gamma_filter_ = CommandFilter2(g_.omega_gamma, g_.zeta_gamma, sf.gamma_d);
    }
    o.V_c = V_filter_.value();
    o.gamma_c = gamma_filter_.value();
    o.e_V = s.V - o.V_c;
    o.e_gamma = s.gamma - o.gamma_c;

    const Vec3 u0 = outer_nominal_inputs(o.err, o.e_V, o.e_gamma, ref, o.air, g_);
    const Vec3 ff(V_filter_.rate(), gamma_filter_.rate(), ref.chi_r_dot_hat);
    o.u_d = u0 - o.d_hat + ff;

    const NominalForces nf = nominal_forces(s, P_, C_);
    o.cmd = allocate(o.u_d, s, nf, P_, last_cmd_);
    last_cmd_ = o.cmd;

    last_UP_ = UP;
    last_f_ = g_.observer_input == ObserverInput::commanded ? o.u_d : nominal_outer_inputs(s, P_, C_);

    o.xi = xi_;
    xi_ = auxiliary_update(xi_, o.V_c, sf.V_d, sf.gamma_d, s.gamma, s.V, o.air.gamma_hat, g_, dt);
    V_filter_.step(sf.V_d, dt);
    gamma_filter_.step(sf.gamma_d, dt);
    chi_f_filter_.step(o.air.chi_hat, dt);
    initialized_ = true;
    return o;
}

}  // namespace vortexform
