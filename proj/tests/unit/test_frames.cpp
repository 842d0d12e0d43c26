#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vortexform/errors.hpp"
#include "vortexform/frames.hpp"

using namespace vortexform;

TEST(Rotation, ZeroAnglesGiveIdentity) {
    const Mat3 R = rotation_wind_to_inertial({0, 0, 0});
    EXPECT_TRUE(R.isApprox(Mat3::Identity(), 1e-15));
}

TEST(Rotation, QuarterHeadingMapsXToY) {
    const Vec3 v = rotation_wind_to_inertial({0, 0, kPi / 2}) * Vec3(1, 0, 0);
    EXPECT_NEAR(v.x(), 0.0, 1e-15);
    EXPECT_NEAR(v.y(), 1.0, 1e-15);
    EXPECT_NEAR(v.z(), 0.0, 1e-15);
}

TEST(Rotation, XAxisFollowsVelocityDirection) {
    // climb (gamma > 0) means negative z in NED
    const double g = 0.2, c = 1.1;
    const Vec3 v = rotation_wind_to_inertial({0.7, g, c}) * Vec3(1, 0, 0);
    EXPECT_NEAR(v.x(), std::cos(g) * std::cos(c), 1e-14);
    EXPECT_NEAR(v.y(), std::cos(g) * std::sin(c), 1e-14);
    EXPECT_NEAR(v.z(), -std::sin(g), 1e-14);
}

TEST(Rotation, OrthonormalOnFixedTriple) {
    const Mat3 R = rotation_wind_to_inertial({0.3, -0.2, 1.1});
    EXPECT_LT((R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
}

TEST(Rotation, OrthonormalOnThousandRandomTriples) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ang(-kPi, kPi), fpa(-1.5, 1.5);
    for (int i = 0; i < 1000; ++i) {
        const Mat3 R = rotation_wind_to_inertial({ang(rng), fpa(rng), ang(rng)});
        ASSERT_LT((R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
        ASSERT_NEAR(R.determinant(), 1.0, 1e-12);
    }
}

TEST(Rotation, RejectsBadInput) {
    EXPECT_THROW(rotation_wind_to_inertial({NAN, 0, 0}), InvalidArgument);
    EXPECT_THROW(rotation_wind_to_inertial({0, kPi / 2, 0}), InvalidArgument);
}

TEST(TrackError, IdentityAtZeroHeading) {
    const TrackError e = inertial_error_to_track(1, 2, 3, 0.0);
    EXPECT_DOUBLE_EQ(e.e_x, 1);
    EXPECT_DOUBLE_EQ(e.e_y, 2);
    EXPECT_DOUBLE_EQ(e.e_z, 3);
}

TEST(TrackError, QuarterTurn) {
    const TrackError e = inertial_error_to_track(1, 0, 0, kPi / 2);
    EXPECT_NEAR(e.e_x, 0.0, 1e-15);
    EXPECT_NEAR(e.e_y, -1.0, 1e-15);
    EXPECT_NEAR(e.e_z, 0.0, 1e-15);
}

TEST(TrackError, IsometryAndRoundTrip) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-100, 100), a(-10, 10);
    for (int i = 0; i < 500; ++i) {
        const double x = u(rng), y = u(rng), z = u(rng), c = a(rng);
        const TrackError e = inertial_error_to_track(x, y, z, c);
        ASSERT_NEAR(std::hypot(e.e_x, e.e_y), std::hypot(x, y), 1e-12);
        const Vec3 back = track_to_inertial(e, c);
        ASSERT_NEAR(back.x(), x, 1e-12);
        ASSERT_NEAR(back.y(), y, 1e-12);
        ASSERT_NEAR(back.z(), z, 1e-12);
    }
}

TEST(TrackError, RejectsNonFinite) {
    EXPECT_THROW(inertial_error_to_track(INFINITY, 0, 0, 0), InvalidArgument);
}

TEST(Angles, WrapAndUnwrap) {
    EXPECT_NEAR(wrap_pi(3 * kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_pi(-kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_pi(0.5), 0.5, 1e-15);
    EXPECT_NEAR(unwrap_near(0.1, 2 * kPi), 2 * kPi + 0.1, 1e-12);
    EXPECT_NEAR(unwrap_near(-3.1, 3.1), 2 * kPi - 3.1, 1e-12);
}
