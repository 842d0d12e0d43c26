#include "vortexform/wake.hpp"

#include <cmath>
#include <limits>

#include "vortexform/errors.hpp"

namespace vortexform {

WakeParams WakeParams::for_leader(const AircraftParams& leader, double rho, double V_l) {
    WakeParams w;
    w.vortex_span = kPi / 4.0 * leader.b;
    w.core_radius = 0.05 * leader.b;
    w.circulation = leader.m * kG / (rho * V_l * w.vortex_span);
    return w;
}

void WakeParams::validate() const {
    if (!std::isfinite(circulation) || !(vortex_span > 0.0) || !(core_radius > 0.0)) {
        throw ConfigError("WakeParams: finite circulation, vortex_span > 0, core_radius > 0 required");
    }
    if (strips < 40) throw ConfigError("WakeParams: at least 40 strips required");
}

namespace {

// Semi-infinite line starting at `a`, running along -x, unit circulation.
Vec3 semi_infinite_line(const Vec3& p, const Vec3& a, double rc) {
    const Vec3 w = p - a;
    const double along = -w.x();  // distance aft of the start point
    const double h2 = w.y() * w.y() + w.z() * w.z();
    if (h2 == 0.0) return Vec3::Zero();
    const double h = std::sqrt(h2);
    const double factor = 1.0 + along / std::sqrt(along * along + h2);
    const double core = -std::expm1(-h2 / (rc * rc));
    const double mag = factor * core / (4.0 * kPi * h);
    // direction u x h_hat with u = (-1,0,0): (0, h_z, -h_y)/h
    return Vec3(0.0, w.z() / h, -w.y() / h) * mag;
}

}  // namespace

Vec3 induced_velocity(const Vec3& rel_pos, const WakeParams& params) {
    if (!(rel_pos.x() < 0.0) || params.circulation == 0.0) return Vec3::Zero();
    const double half = 0.5 * params.vortex_span;
    const Vec3 right(0.0, half, 0.0), left(0.0, -half, 0.0);
    const Vec3 v = semi_infinite_line(rel_pos, right, params.core_radius) -
                   semi_infinite_line(rel_pos, left, params.core_radius);
    return params.circulation * v;
}

namespace {

double finite_lift_slope(double span, double area) {
    const double ar = span * span / area;
    return 2.0 * kPi * ar / (2.0 + ar);
}

}  // namespace

WakeSample induced_increments(const Vec3& rel_pos, const Mat3& rel_rot, const FollowerState& f,
                              const WakeParams& params, const AircraftParams& P, const AeroCoeffs& C) {
    WakeSample out;
    if (params.circulation == 0.0) return out;
    const double V = f.V;
    const double qbar = 0.5 * air_density(-f.z) * V * V;
    const double CL = C.C_L0 + C.C_L_alpha * f.alpha;
    const int n = params.strips;
    const double dy = P.b / n;
    const Mat3 back = rel_rot.transpose();
    // elliptic spanwise loading: c(y) C_L(y) = (4 S C_L / (pi b)) sqrt(1 - (2y/b)^2)
    const double load0 = 4.0 * P.S * CL / (kPi * P.b);

    for (int i = 0; i < n; ++i) {
        const double y = -0.5 * P.b + (i + 0.5) * dy;
        const Vec3 pos = rel_pos + rel_rot * Vec3(0.0, y, 0.0);
        const Vec3 w = back * induced_velocity(pos, params);
        const double dalpha = -w.z() / V;
        const double eta = 2.0 * y / P.b;
        const double dl = qbar * P.chord_at(y) * C.C_l_alpha * dalpha * dy;
        out.dL += dl;
        out.dD -= qbar * load0 * std::sqrt(1.0 - eta * eta) * dalpha * dy;
        out.dRoll -= y * dl;
    }

    const Vec3 tail = back * induced_velocity(rel_pos + rel_rot * Vec3(-P.l_t, 0.0, 0.0), params);
    const double dL_tail = qbar * P.S_h * finite_lift_slope(P.b_t, P.S_h) * (-tail.z() / V);
    out.dL += dL_tail;
    out.dPitch = -P.l_t * dL_tail;

    const Vec3 fin = back * induced_velocity(rel_pos + rel_rot * Vec3(-P.l_t, 0.0, -0.5 * P.h_t), params);
    const double dY_fin = qbar * P.S_v * C.c_eta * finite_lift_slope(P.h_t, P.S_v) * fin.y() / V;
    out.dY = dY_fin;
    out.dYaw = -P.l_t * dY_fin;
    return out;
}

WakeSample sample_wake(const LeaderPose& leader, const FollowerState& follower, const WakeParams& params,
                       const AircraftParams& P, const AeroCoeffs& C) {
    const Mat3 Cl = rotation_wind_to_inertial(leader.angles);
    const Mat3 Cf = rotation_wind_to_inertial(follower.wind_angles());
    const Vec3 rel = Cl.transpose() * (follower.position() - leader.position);
    WakeSample s = induced_increments(rel, Cl.transpose() * Cf, follower, params, P, C);
    s.W = Cl * induced_velocity(rel, params);
    return s;
}

OffsetSearchResult optimal_offset_search(const WakeParams& params, const FlightCondition& fc,
                                         const AircraftParams& P, const AeroCoeffs& C, int grid) {
    if (grid < 2) throw InvalidArgument("optimal_offset_search: grid needs at least 2 points");
    FollowerState f;
    f.V = fc.V;
    f.z = -fc.altitude;
    f.alpha = fc.alpha;
    OffsetSearchResult best;
    best.dD = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double ry = P.b * (0.5 + static_cast<double>(i) / (grid - 1));
        const WakeSample s = induced_increments(Vec3(-36.0, ry, 0.0), Mat3::Identity(), f, params, P, C);
        if (s.dD < best.dD) best = {-36.0, ry, s.dD};
    }
    return best;
}

}  // namespace vortexform
