#include <gtest/gtest.h>

#include <cmath>

#include "vortexform/errors.hpp"
#include "vortexform/sim.hpp"
#include "vortexform/vehicle.hpp"

using namespace vortexform;

namespace {

FollowerState trimmed(const TrimResult& tr, double V = 200.0) {
    FollowerState s;
    s.z = -5015.0;
    s.V = V;
    s.alpha = tr.alpha;
    s.T = tr.T;
    return s;
}

}  // namespace

TEST(Atmosphere, Density) {
    EXPECT_DOUBLE_EQ(air_density(0.0), 1.225);
    EXPECT_NEAR(air_density(5015.0), 0.714, 0.001);
    double prev = air_density(0.0);
    for (double h = 100; h <= 20000; h += 100) {
        const double r = air_density(h);
        ASSERT_LT(r, prev);
        prev = r;
    }
    EXPECT_THROW(air_density(-1.0), InvalidArgument);
    EXPECT_THROW(air_density(20001.0), InvalidArgument);
}

TEST(Params, DefaultsValidate) {
    EXPECT_NO_THROW(AircraftParams{}.validate());
    EXPECT_NO_THROW(AeroCoeffs{}.validate());
    EXPECT_NO_THROW(UncertaintySpec{}.validate());
    AircraftParams P;
    P.I_xz = 40000;  // I_x I_z < I_xz^2
    EXPECT_THROW(P.validate(), ConfigError);
    AeroCoeffs C;
    C.C_M_q = 1.0;
    EXPECT_THROW(C.validate(), ConfigError);
    UncertaintySpec u;
    u.drag = 1.6;
    EXPECT_THROW(u.validate(), ConfigError);
}

TEST(Params, Planform) {
    const AircraftParams P;
    EXPECT_DOUBLE_EQ(P.chord_at(0.0), P.c_r);
    EXPECT_DOUBLE_EQ(P.chord_at(0.5 * P.b), P.c_t);
    EXPECT_DOUBLE_EQ(P.chord_at(-0.25 * P.b), 0.5 * (P.c_r + P.c_t));
}

TEST(NominalForces, ZeroSpeed) {
    FollowerState s;
    s.z = -5015;
    const NominalForces f = nominal_forces(s, AircraftParams{}, AeroCoeffs{});
    EXPECT_EQ(f.D_bar, 0);
    EXPECT_EQ(f.L_bar, 0);
    EXPECT_EQ(f.L_bar0, 0);
    EXPECT_EQ(f.L_bar_alpha, 0);
}

TEST(NominalForces, LiftAtZeroAlpha) {
    FollowerState s;
    s.z = -5015;
    s.V = 200;
    const NominalForces f = nominal_forces(s, AircraftParams{}, AeroCoeffs{});
    EXPECT_NEAR(f.L_bar0, 1.99e4, 0.01e4);
    EXPECT_DOUBLE_EQ(f.L_bar, f.L_bar0);
    EXPECT_NEAR(f.L_bar_alpha / f.L_bar0, 5.3 / 0.05, 1e-9);
}

TEST(NominalForces, DragGrowsWithLiftMagnitude) {
    FollowerState s;
    s.z = -5015;
    s.V = 200;
    double prev = -1;
    for (double CL = 0.0; CL < 1.5; CL += 0.1) {
        s.alpha = (CL - 0.05) / 5.3;
        const double D = nominal_forces(s, AircraftParams{}, AeroCoeffs{}).D_bar;
        ASSERT_GT(D, prev);
        prev = D;
    }
}

TEST(NominalMoments, OnlyPitchZeroSurvivesAtZeroState) {
    FollowerState s;
    s.z = -5015;
    s.V = 200;
    const AircraftParams P;
    const AeroCoeffs C;
    const NominalMoments m = nominal_moments(s, P, C);
    const double q = 0.5 * air_density(5015) * 200 * 200;
    EXPECT_EQ(m.tau0.x(), 0.0);
    EXPECT_NEAR(m.tau0.y(), q * P.S * P.c_bar * C.C_M0, 1e-9);
    EXPECT_EQ(m.tau0.z(), 0.0);
    EXPECT_NEAR(m.M_tau(0, 0), q * P.S * P.b * -0.1463, 1e-6);
    EXPECT_GT(std::abs(m.M_tau.determinant()), 1e-9 * std::pow(m.M_tau.norm(), 3));
}

TEST(Truth, TrimIsEquilibrium) {
    const AircraftParams P;
    const AeroCoeffs C;
    const TrimResult tr = trim_solve(P, C, 200, 0, 5015);
    FollowerState s = trimmed(tr);
    ControlCommand u;
    u.T_c = tr.T;
    u.delta_e = tr.delta_e;
    const FollowerState d = truth_derivative(s, u, WakeSample{}, UncertaintySpec::none(), P, C);
    const auto a = d.to_array();
    EXPECT_NEAR(a[0], 200.0, 1e-9);  // x' is the cruise speed
    for (int i = 1; i < FollowerState::kSize; ++i) EXPECT_LT(std::abs(a[i]), 1e-6) << i;
}

TEST(Truth, GammaRateEqualsNominalWithoutDisturbance) {
    const AircraftParams P;
    const AeroCoeffs C;
    FollowerState s;
    s.z = -4000;
    s.V = 180;
    s.gamma = 0.05;
    s.chi = 0.4;
    s.mu = 0.3;
    s.alpha = 0.06;
    s.T = 20000;
    s.p = 0.1;
    s.q = -0.02;
    s.r = 0.03;
    const FollowerState d = truth_derivative(s, ControlCommand{}, WakeSample{}, UncertaintySpec::none(), P, C);
    const NominalForces f = nominal_forces(s, P, C);
    const double expect = (f.L_bar + s.T * std::sin(s.alpha)) * std::cos(s.mu) / (P.m * s.V) -
                          kG * std::cos(s.gamma) / s.V;
    EXPECT_NEAR(d.gamma, expect, 1e-14);
    // the lumped outer disturbances vanish when truth equals the model
    const Vec3 un = nominal_outer_inputs(s, P, C);
    EXPECT_NEAR(d.V, un[0], 1e-12);
    EXPECT_NEAR(d.gamma, un[1], 1e-14);
    EXPECT_NEAR(d.chi, un[2], 1e-14);
}

TEST(Truth, PositionKinematicsUseSinChi) {
    FollowerState s;
    s.z = -5000;
    s.V = 200;
    s.gamma = 0.1;
    s.chi = 0.7;
    WakeSample w;
    w.W = Vec3(1, -2, 3);
    const FollowerState d =
        truth_derivative(s, ControlCommand{}, w, UncertaintySpec::none(), AircraftParams{}, AeroCoeffs{});
    EXPECT_NEAR(d.x, 200 * std::cos(0.1) * std::cos(0.7) + 1, 1e-12);
    EXPECT_NEAR(d.y, 200 * std::cos(0.1) * std::sin(0.7) - 2, 1e-12);
    EXPECT_NEAR(d.z, -200 * std::sin(0.1) + 3, 1e-12);
}

TEST(Truth, PureRollMomentResponse) {
    const AircraftParams P;
    FollowerState s;
    s.z = -5000;
    s.V = 200;
    WakeSample w;
    w.dRoll = 1000.0;
    const FollowerState d = truth_derivative(s, ControlCommand{}, w, UncertaintySpec::none(), P, AeroCoeffs{});
    const double expect = P.I_z * 1000.0 / (P.I_x * P.I_z - P.I_xz * P.I_xz);
    EXPECT_NEAR(d.p, expect, 1e-12);
    EXPECT_NEAR(expect, 0.0778, 1e-4);
}

TEST(Truth, GyroscopicTermsConserveEnergy) {
    const AircraftParams P;
    const AeroCoeffs C;
    FollowerState s;
    s.z = -5000;
    s.V = 200;
    s.alpha = 0.03;
    s.beta = 0.01;
    s.p = 0.8;
    s.q = -0.3;
    s.r = 0.5;
    ControlCommand u;
    u.delta_a = 0.05;
    u.delta_r = -0.02;
    const FollowerState d = truth_derivative(s, u, WakeSample{}, UncertaintySpec::none(), P, C);
    const NominalMoments m = nominal_moments(s, P, C);
    const Vec3 tau = m.tau0 + m.M_tau * Vec3(u.delta_a, u.delta_e, u.delta_r);
    const Vec3 w = s.rates();
    // d/dt(1/2 w'Iw) = w'tau: the cross-coupling part contributes nothing
    EXPECT_NEAR(w.dot(P.inertia() * d.rates()), w.dot(tau), 1e-9 * tau.norm());
}

TEST(Truth, ThrustLag) {
    const AircraftParams P;
    const AeroCoeffs C;
    FollowerState s;
    s.z = -5000;
    s.V = 200;
    ControlCommand u;
    u.T_c = 10000;
    const double dt = 0.002;
    int k = 0;
    while (s.T < 0.632 * u.T_c) {
        // thrust obeys its own linear lag; integrate that row only
        auto f = [&](double T) {
            FollowerState x = s;
            x.T = T;
            return truth_derivative(x, u, WakeSample{}, UncertaintySpec::none(), P, C).T;
        };
        const double k1 = f(s.T), k2 = f(s.T + 0.5 * dt * k1), k3 = f(s.T + 0.5 * dt * k2), k4 = f(s.T + dt * k3);
        s.T += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        ++k;
    }
    EXPECT_NEAR(k * dt, 0.5, dt);
    u.T_c = 2 * P.T_max;
    s.T = P.T_max;
    EXPECT_NEAR(truth_derivative(s, u, WakeSample{}, UncertaintySpec::none(), P, C).T, 0.0, 1e-12);
}

TEST(Truth, UncertaintyCreatesDisturbance) {
    const AircraftParams P;
    const AeroCoeffs C;
    FollowerState s;
    s.z = -5000;
    s.V = 200;
    s.alpha = 0.04;
    s.T = 15000;
    const FollowerState a = truth_derivative(s, {}, {}, UncertaintySpec::none(), P, C);
    const FollowerState b = truth_derivative(s, {}, {}, UncertaintySpec{}, P, C);
    EXPECT_LT(b.V, a.V);          // more drag
    EXPECT_LT(b.gamma, a.gamma);  // less lift slope
}

TEST(Truth, AbortsBelowStall) {
    FollowerState s;
    s.z = -5000;
    s.V = 30;
    EXPECT_THROW(truth_derivative(s, {}, {}, UncertaintySpec::none(), AircraftParams{}, AeroCoeffs{}),
                 SimulationAbort);
}

TEST(StateArray, RoundTrip) {
    FollowerState s{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    const FollowerState t = FollowerState::from_array(s.to_array());
    EXPECT_EQ(t.to_array(), s.to_array());
}
