#pragma once

#include <array>

#include "vortexform/frames.hpp"

namespace vortexform {

// Geometry and mass of a light fighter. l_t, T_max and thrust_lag are assumed.
struct AircraftParams {
    double S = 27.87;
    double b = 9.14;
    double c_bar = 3.45;
    double m = 9295.44;
    double I_x = 12874.8;
    double I_y = 75673.6;
    double I_z = 85552.1;
    double I_xz = 1331.4;
    double S_v = 5.09;
    double S_h = 10.034;
    double b_t = 5.49;
    double c_r = 5.02;
    double c_t = 1.07;
    double h_t = 3.05;
    double Lambda_s = 0.57;
    double Lambda_d = 0.0;
    double l_t = 4.6;          // tail moment arm, m (not tabulated)
    double T_max = 129000.0;   // N
    double thrust_lag = 0.5;   // s

    Mat3 inertia() const;
    double aspect_ratio() const { return b * b / S; }
    double chord_at(double y) const;  // trapezoidal planform, y from centerline
    void validate() const;
};

struct AeroCoeffs {
    double C_D0 = 0.02;
    double e_o = 0.663;
    double C_l_alpha = 5.3;
    double C_L0 = 0.05;
    double C_L_alpha = 5.3;
    double c_eta = 0.95;
    double C_calL_beta = -0.1059;
    double C_calL_p = -0.4127;
    double C_calL_r = 0.0625;
    double C_calL_delta_a = -0.1463;
    double C_calL_delta_r = 0.02636;
    double C_M0 = -0.02029;
    double C_M_alpha = 0.0466;
    double C_M_q = -5.159;
    double C_M_delta_e = -0.60123;
    double C_N_beta = 0.2993;
    double C_N_p = 0.02678;
    double C_N_r = -0.36988;
    double C_N_delta_a = -0.03349;
    double C_N_delta_r = -0.081159;

    void validate() const;
};

struct FollowerState {
    double x = 0, y = 0, z = 0;
    double V = 0, gamma = 0, chi = 0;
    double mu = 0, alpha = 0, beta = 0;
    double p = 0, q = 0, r = 0;
    double T = 0;

    static constexpr int kSize = 13;
    std::array<double, kSize> to_array() const;
    static FollowerState from_array(const std::array<double, kSize>& a);
    Vec3 position() const { return {x, y, z}; }
    Vec3 rates() const { return {p, q, r}; }
    EulerWind wind_angles() const { return {mu, gamma, chi}; }
};

// Multiplicative truth-model factors. The nominal model is recovered with all factors 1 and C_Y_beta 0.
struct UncertaintySpec {
    double drag = 1.08;
    double lift_slope = 0.95;
    double roll_moment = 1.05;
    double pitch_moment = 0.95;
    double yaw_moment = 1.05;
    double C_Y_beta = -0.8;

    static UncertaintySpec none() { return {1.0, 1.0, 1.0, 1.0, 1.0, 0.0}; }
    void validate() const;
};

struct ControlCommand {
    double T_c = 0.0;
    double delta_a = 0.0;
    double delta_e = 0.0;
    double delta_r = 0.0;
    bool thrust_saturated = false;
    bool surface_saturated = false;
};

// Induced velocity at the follower (inertial) plus vortex force/moment increments
// (forces along follower wind axes, moments about body axes).
struct WakeSample {
    Vec3 W = Vec3::Zero();
    double dL = 0, dD = 0, dY = 0;
    double dRoll = 0, dPitch = 0, dYaw = 0;
};

double air_density(double altitude);

struct NominalForces {
    double qbar = 0;
    double D_bar = 0;
    double L_bar0 = 0;
    double L_bar_alpha = 0;
    double L_bar = 0;
};

NominalForces nominal_forces(const FollowerState& s, const AircraftParams& P, const AeroCoeffs& C);

struct NominalMoments {
    Vec3 tau0 = Vec3::Zero();
    Mat3 M_tau = Mat3::Zero();
};

NominalMoments nominal_moments(const FollowerState& s, const AircraftParams& P, const AeroCoeffs& C);

// Nominal intermediate inputs (u_V, u_gamma, u_chi) evaluated on a state.
Vec3 nominal_outer_inputs(const FollowerState& s, const AircraftParams& P, const AeroCoeffs& C);

inline constexpr double kStallSpeed = 40.0;

FollowerState truth_derivative(const FollowerState& s, const ControlCommand& u, const WakeSample& wake,
                               const UncertaintySpec& spec, const AircraftParams& P, const AeroCoeffs& C);

}  // namespace vortexform
