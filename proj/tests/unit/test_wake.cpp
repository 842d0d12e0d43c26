#include <gtest/gtest.h>

#include <cmath>

#include "vortexform/errors.hpp"
#include "vortexform/wake.hpp"

using namespace vortexform;

namespace {

WakeParams s1_wake() {
    const AircraftParams P;
    return WakeParams::for_leader(P, air_density(5015.0), 200.0);
}

FollowerState cruise() {
    FollowerState f;
    f.V = 200.0;
    f.z = -5015.0;
    f.alpha = 0.034;
    return f;
}

}  // namespace

TEST(WakeParams, CirculationFromLeaderWeight) {
    const AircraftParams P;
    const WakeParams w = s1_wake();
    const double bp = kPi / 4 * P.b;
    EXPECT_NEAR(w.vortex_span, bp, 1e-12);
    EXPECT_NEAR(w.core_radius, 0.05 * P.b, 1e-12);
    EXPECT_NEAR(w.circulation, P.m * kG / (air_density(5015.0) * 200.0 * bp), 1e-9);
    EXPECT_NEAR(w.circulation, 88.9, 0.5);
}

TEST(WakeParams, Validation) {
    WakeParams w = s1_wake();
    w.core_radius = 0;
    EXPECT_THROW(w.validate(), ConfigError);
    w = s1_wake();
    w.strips = 10;
    EXPECT_THROW(w.validate(), ConfigError);
}

TEST(InducedVelocity, FarFieldAndZeroCirculation) {
    const WakeParams w = s1_wake();
    // lateral, vertical and forward separations. Straight aft the steady lines keep their 2-D strength.
    EXPECT_LT(induced_velocity(Vec3(-1e-3, 1e6, 0), w).norm(), 1e-9);
    EXPECT_LT(induced_velocity(Vec3(-1e-3, 0, 1e6), w).norm(), 1e-9);
    EXPECT_LT(induced_velocity(Vec3(-1e6, 1e6, 1e6), w).norm(), 1e-9);
    EXPECT_EQ(induced_velocity(Vec3(1e6, 0, 0), w).norm(), 0.0);
    WakeParams z = w;
    z.circulation = 0;
    EXPECT_EQ(induced_velocity(Vec3(-36, 9, 0), z), Vec3::Zero());
}

TEST(InducedVelocity, AheadOfLeaderIsZero) {
    EXPECT_EQ(induced_velocity(Vec3(5, 3, 0), s1_wake()), Vec3::Zero());
    EXPECT_EQ(induced_velocity(Vec3(0, 3, 0), s1_wake()), Vec3::Zero());
}

TEST(InducedVelocity, UpwashOutboardDownwashBetween) {
    const AircraftParams P;
    const WakeParams w = s1_wake();
    EXPECT_LT(induced_velocity(Vec3(-36, 0.95 * P.b, 0), w).z(), 0.0);
    EXPECT_GT(induced_velocity(Vec3(-36, 0, 0), w).z(), 0.0);
    EXPECT_LT(induced_velocity(Vec3(-36, -0.95 * P.b, 0), w).z(), 0.0);
}

TEST(InducedVelocity, MatchesTwoDimensionalPairFarAft) {
    // far behind, each line is effectively infinite: w = G/(2 pi) * (1/(y-s) - 1/(y+s)) outside the cores
    const WakeParams w = s1_wake();
    const double s = 0.5 * w.vortex_span, y = 9.0;
    const double expect = -w.circulation / (2 * kPi) * (1.0 / (y - s) - 1.0 / (y + s));
    EXPECT_NEAR(induced_velocity(Vec3(-1e5, y, 0), w).z(), expect, 1e-6);
}

TEST(InducedVelocity, MirrorSymmetryAboutCenterline) {
    const WakeParams w = s1_wake();
    for (double y : {0.3, 2.0, 3.59, 5.0, 9.0, 20.0}) {
        for (double z : {-2.0, 0.0, 1.5}) {
            const Vec3 a = induced_velocity(Vec3(-36, y, z), w);
            const Vec3 b = induced_velocity(Vec3(-36, -y, z), w);
            EXPECT_NEAR(a.z(), b.z(), 1e-9);
            EXPECT_NEAR(a.y(), -b.y(), 1e-9);
        }
    }
}

TEST(InducedVelocity, SmoothThroughCore) {
    const WakeParams w = s1_wake();
    const double s = 0.5 * w.vortex_span;
    const Vec3 c = induced_velocity(Vec3(-36, s, 0), w);
    EXPECT_TRUE(c.allFinite());
    // no jump across the core: the change shrinks with the probe width
    auto jump = [&](double h) {
        return (induced_velocity(Vec3(-36, s - h, 0), w) - induced_velocity(Vec3(-36, s + h, 0), w)).norm();
    };
    EXPECT_NEAR(jump(1e-4) / jump(2e-4), 0.5, 1e-3);
    // peak swirl stays bounded
    double peak = 0;
    for (int i = 0; i <= 400; ++i) {
        peak = std::max(peak, induced_velocity(Vec3(-200, s - 2.0 + i * 0.01, 0), w).norm());
    }
    EXPECT_LT(peak, w.circulation / (2 * kPi * w.core_radius));
}

TEST(InducedVelocity, LinearInCirculation) {
    const WakeParams w = s1_wake();
    WakeParams w2 = w;
    w2.circulation *= 2;
    const Vec3 p(-36, 7.3, -1.2);
    EXPECT_LT((induced_velocity(p, w2) - 2.0 * induced_velocity(p, w)).cwiseAbs().maxCoeff(), 1e-12);
    const AircraftParams P;
    const AeroCoeffs C;
    const WakeSample a = induced_increments(p, Mat3::Identity(), cruise(), w, P, C);
    const WakeSample b = induced_increments(p, Mat3::Identity(), cruise(), w2, P, C);
    EXPECT_NEAR(b.dL, 2 * a.dL, 1e-12 * std::abs(a.dL) + 1e-12);
    EXPECT_NEAR(b.dD, 2 * a.dD, 1e-12 * std::abs(a.dD) + 1e-12);
    EXPECT_NEAR(b.dRoll, 2 * a.dRoll, 1e-12 * std::abs(a.dRoll) + 1e-12);
    EXPECT_NEAR(b.dYaw, 2 * a.dYaw, 1e-12 * std::abs(a.dYaw) + 1e-12);
}

TEST(InducedVelocity, DecaysAtLeastAsOneOverDistance) {
    const WakeParams w = s1_wake();
    const Vec3 dir = Vec3(-1, 0.4, 0.2).normalized();
    double prev = induced_velocity(dir * 50.0, w).norm() * 50.0;
    for (double r = 100; r <= 1e5; r *= 2) {
        const double scaled = induced_velocity(dir * r, w).norm() * r;
        EXPECT_LE(scaled, prev * (1 + 1e-9)) << r;
        prev = scaled;
    }
}

TEST(Increments, ZeroCirculationGivesZero) {
    WakeParams w = s1_wake();
    w.circulation = 0;
    const WakeSample s =
        induced_increments(Vec3(-36, 9, 0), Mat3::Identity(), cruise(), w, AircraftParams{}, AeroCoeffs{});
    EXPECT_EQ(s.dL, 0);
    EXPECT_EQ(s.dD, 0);
    EXPECT_EQ(s.dY, 0);
    EXPECT_EQ(s.dRoll, 0);
    EXPECT_EQ(s.dPitch, 0);
    EXPECT_EQ(s.dYaw, 0);
}

TEST(Increments, DragReductionAtOptimalStation) {
    const WakeSample s = induced_increments(Vec3(-36, 9, 0), Mat3::Identity(), cruise(), s1_wake(),
                                            AircraftParams{}, AeroCoeffs{});
    EXPECT_LT(s.dD, 0.0);
    EXPECT_GT(s.dL, 0.0);
    // the left wing sits nearer the vortex, sees more upwash and lifts more: right wing down
    EXPECT_GT(s.dRoll, 0.0);
}

TEST(Increments, StripRefinement) {
    WakeParams w = s1_wake();
    const AircraftParams P;
    const AeroCoeffs C;
    for (const Vec3& p : {Vec3(-36, 9, 0), Vec3(-36, 8, -1), Vec3(-60, 11, 0.5)}) {
        w.strips = 40;
        const WakeSample a = induced_increments(p, Mat3::Identity(), cruise(), w, P, C);
        w.strips = 400;
        const WakeSample b = induced_increments(p, Mat3::Identity(), cruise(), w, P, C);
        EXPECT_NEAR(a.dL, b.dL, 0.01 * std::abs(b.dL));
        EXPECT_NEAR(a.dD, b.dD, 0.01 * std::abs(b.dD));
        EXPECT_NEAR(a.dRoll, b.dRoll, 0.01 * std::abs(b.dRoll));
        EXPECT_NEAR(a.dPitch, b.dPitch, 0.01 * std::abs(b.dPitch));
        EXPECT_NEAR(a.dYaw, b.dYaw, 0.01 * std::abs(b.dYaw));
    }
}

TEST(Increments, SampleWakeRotatesIntoInertial) {
    const AircraftParams P;
    const AeroCoeffs C;
    const WakeParams w = s1_wake();
    LeaderPose L;
    L.position = Vec3(100, 50, -5015);
    L.angles = {0, 0, kPi / 2};  // heading east
    FollowerState f = cruise();
    f.chi = kPi / 2;
    // 36 m behind and 9 m to the right of an eastbound leader
    f.x = 100 + 9;
    f.y = 50 - 36;
    const WakeSample s = sample_wake(L, f, w, P, C);
    const Vec3 local = induced_velocity(Vec3(-36, 9, 0), w);
    EXPECT_NEAR(s.W.x(), -local.y(), 1e-12);
    EXPECT_NEAR(s.W.y(), local.x(), 1e-12);
    EXPECT_NEAR(s.W.z(), local.z(), 1e-12);
    const WakeSample ref = induced_increments(Vec3(-36, 9, 0), Mat3::Identity(), f, w, P, C);
    EXPECT_NEAR(s.dD, ref.dD, 1e-9);
}

TEST(OffsetSearch, OptimumNearPointNineFiveSpan) {
    const AircraftParams P;
    const AeroCoeffs C;
    const OffsetSearchResult r = optimal_offset_search(s1_wake(), FlightCondition{}, P, C);
    EXPECT_GE(r.r_y, 0.8 * P.b);
    EXPECT_LE(r.r_y, 1.1 * P.b);
    FollowerState f = cruise();
    const WakeSample far = induced_increments(Vec3(-36, 2 * P.b, 0), Mat3::Identity(), f, s1_wake(), P, C);
    EXPECT_LT(r.dD, far.dD);
}

TEST(OffsetSearch, StableUnderStripDoubling) {
    const AircraftParams P;
    const AeroCoeffs C;
    WakeParams w = s1_wake();
    const int grid = 201;
    const double cell = P.b / (grid - 1);
    const OffsetSearchResult a = optimal_offset_search(w, FlightCondition{}, P, C, grid);
    w.strips = 80;
    const OffsetSearchResult b = optimal_offset_search(w, FlightCondition{}, P, C, grid);
    EXPECT_LE(std::abs(a.r_y - b.r_y), cell + 1e-12);
}
