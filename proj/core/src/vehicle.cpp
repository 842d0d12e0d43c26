#include "vortexform/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vortexform/errors.hpp"

namespace vortexform {

Mat3 AircraftParams::inertia() const {
    Mat3 I;
    I << I_x, 0, -I_xz, 0, I_y, 0, -I_xz, 0, I_z;
    return I;
}

double AircraftParams::chord_at(double y) const {
    const double eta = std::min(1.0, std::abs(2.0 * y / b));
    return c_r - (c_r - c_t) * eta;
}

void AircraftParams::validate() const {
    const double pos[] = {S, b, c_bar, m, I_x, I_y, I_z, S_v, S_h, b_t, c_r, c_t, h_t, l_t, T_max, thrust_lag};
    for (double v : pos) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("AircraftParams: all parameters must be positive");
    }
    if (!(I_x * I_z - I_xz * I_xz > 0.0)) throw ConfigError("AircraftParams: inertia matrix not positive definite");
}

void AeroCoeffs::validate() const {
    if (!(C_D0 > 0.0)) throw ConfigError("AeroCoeffs: C_D0 must be positive");
    if (!(e_o > 0.0)) throw ConfigError("AeroCoeffs: e_o must be positive");
    if (!(C_calL_p < 0.0 && C_M_q < 0.0 && C_N_r < 0.0)) {
        throw ConfigError("AeroCoeffs: damping derivatives must be negative");
    }
}

std::array<double, FollowerState::kSize> FollowerState::to_array() const {
    return {x, y, z, V, gamma, chi, mu, alpha, beta, p, q, r, T};
}

FollowerState FollowerState::from_array(const std::array<double, kSize>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9], a[10], a[11], a[12]};
}

void UncertaintySpec::validate() const {
    for (double f : {drag, lift_slope, roll_moment, pitch_moment, yaw_moment}) {
        if (!(f >= 0.5 && f <= 1.5)) throw ConfigError("UncertaintySpec: factors must lie in [0.5, 1.5]");
    }
}

double air_density(double altitude) {
    if (!(altitude >= 0.0 && altitude <= 20000.0)) {
        throw InvalidArgument("air_density: altitude outside [0, 20000] m: " + std::to_string(altitude));
    }
    return 1.225 * std::exp(-altitude / 9296.0);
}

NominalForces nominal_forces(const FollowerState& s, const AircraftParams& P, const AeroCoeffs& C) {
    NominalForces f;
    f.qbar = 0.5 * air_density(-s.z) * s.V * s.V;
    const double qS = f.qbar * P.S;
    const double CL = C.C_L0 + C.C_L_alpha * s.alpha;
    f.L_bar0 = qS * C.C_L0;
    f.L_bar_alpha = qS * C.C_L_alpha;
    f.L_bar = qS * CL;
    f.D_bar = qS * (C.C_D0 + CL * CL / (kPi * C.e_o * P.aspect_ratio()));
    return f;
}

NominalMoments nominal_moments(const FollowerState& s, const AircraftParams& P, const AeroCoeffs& C) {
    NominalMoments m;
    const double qbar = 0.5 * air_density(-s.z) * s.V * s.V;
    if (s.V <= 0.0) return m;
    const double qSb = qbar * P.S * P.b;
    const double qSc = qbar * P.S * P.c_bar;
    const double kb = P.b / (2.0 * s.V);
    const double kc = P.c_bar / (2.0 * s.V);
    m.tau0 << qSb * (C.C_calL_beta * s.beta + kb * (C.C_calL_p * s.p + C.C_calL_r * s.r)),
        qSc * (C.C_M0 + C.C_M_alpha * s.alpha + kc * C.C_M_q * s.q),
        qSb * (C.C_N_beta * s.beta + kb * (C.C_N_p * s.p + C.C_N_r * s.r));
    m.M_tau << qSb * C.C_calL_delta_a, 0.0, qSb * C.C_calL_delta_r,
        0.0, qSc * C.C_M_delta_e, 0.0,
        qSb * C.C_N_delta_a, 0.0, qSb * C.C_N_delta_r;
    return m;
}

Vec3 nominal_outer_inputs(const FollowerState& s, const AircraftParams& P, const AeroCoeffs& C) {
    const NominalForces f = nominal_forces(s, P, C);
    const double lift = f.L_bar + s.T * std::sin(s.alpha);
    const double mV = P.m * s.V;
    return {(s.T * std::cos(s.alpha) * std::cos(s.beta) - f.D_bar) / P.m - kG * std::sin(s.gamma),
            (lift * std::cos(s.mu) - P.m * kG * std::cos(s.gamma)) / mV,
            lift * std::sin(s.mu) / (mV * std::cos(s.gamma))};
}

FollowerState truth_derivative(const FollowerState& s, const ControlCommand& u, const WakeSample& wake,
                               const UncertaintySpec& spec, const AircraftParams& P, const AeroCoeffs& C) {
    if (!(s.V >= kStallSpeed)) {
        throw SimulationAbort("follower airspeed below stall floor (" + std::to_string(s.V) + " m/s)");
    }
    if (!(-s.z >= 0.0 && -s.z <= 20000.0)) {
        throw SimulationAbort("follower altitude outside the atmosphere model range");
    }
    const double qbar = 0.5 * air_density(-s.z) * s.V * s.V;
    const double qS = qbar * P.S;

    const double CL = C.C_L0 + C.C_L_alpha * spec.lift_slope * s.alpha;
    const double L = qS * CL + wake.dL;
    const double D = qS * spec.drag * (C.C_D0 + CL * CL / (kPi * C.e_o * P.aspect_ratio())) + wake.dD;
    const double Y = qS * spec.C_Y_beta * s.beta + wake.dY;

    const double sa = std::sin(s.alpha), ca = std::cos(s.alpha);
    const double sb = std::sin(s.beta), cb = std::cos(s.beta);
    const double sm = std::sin(s.mu), cm = std::cos(s.mu);
    const double sg = std::sin(s.gamma), cg = std::cos(s.gamma);
    const double sc = std::sin(s.chi), cc = std::cos(s.chi);
    const double mV = P.m * s.V;

    const double lift = L + s.T * sa;
    const double side = Y - s.T * ca * sb;

    FollowerState d;
    d.x = s.V * cg * cc + wake.W.x();
    d.y = s.V * cg * sc + wake.W.y();
    d.z = -s.V * sg + wake.W.z();
    d.V = (s.T * ca * cb - D) / P.m - kG * sg;
    d.gamma = (lift * cm - side * sm) / mV - kG * cg / s.V;
    d.chi = (lift * sm + side * cm) / (mV * cg);

    const double tb = std::tan(s.beta), secb = 1.0 / cb;
    d.mu = s.p * ca * secb + s.r * sa * secb + d.gamma * cm * tb + d.chi * (sg + sm * cg * tb);
    d.alpha = s.q - s.p * ca * tb - s.r * sa * tb - d.gamma * cm * secb - d.chi * sm * cg * secb;
    d.beta = s.p * sa - s.r * ca - d.gamma * sm + d.chi * cm * cg;

    const double qSb = qS * P.b, qSc = qS * P.c_bar;
    const double kb = P.b / (2.0 * s.V), kc = P.c_bar / (2.0 * s.V);
    const Vec3 tau{
        qSb * (spec.roll_moment * (C.C_calL_beta * s.beta + kb * (C.C_calL_p * s.p + C.C_calL_r * s.r)) +
               C.C_calL_delta_a * u.delta_a + C.C_calL_delta_r * u.delta_r) + wake.dRoll,
        qSc * (spec.pitch_moment * (C.C_M0 + C.C_M_alpha * s.alpha + kc * C.C_M_q * s.q) +
               C.C_M_delta_e * u.delta_e) + wake.dPitch,
        qSb * (spec.yaw_moment * (C.C_N_beta * s.beta + kb * (C.C_N_p * s.p + C.C_N_r * s.r)) +
               C.C_N_delta_a * u.delta_a + C.C_N_delta_r * u.delta_r) + wake.dYaw};
    const Mat3 I = P.inertia();
    const Vec3 w = s.rates();
    const Vec3 wdot = I.ldlt().solve(tau - w.cross(I * w));
    d.p = wdot.x();
    d.q = wdot.y();
    d.r = wdot.z();

    const double Tc = std::clamp(u.T_c, 0.0, P.T_max);
    d.T = (Tc - s.T) / P.thrust_lag;
    return d;
}

}  // namespace vortexform
