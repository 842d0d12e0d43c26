#pragma once

#include "vortexform/vehicle.hpp"

namespace vortexform {

// Horseshoe wake of the leader: two semi-infinite trailing lines at +-b'/2
// running aft from the leader, Lamb-Oseen core, no decay.
struct WakeParams {
    double circulation = 0.0;   // m^2/s
    double vortex_span = 0.0;   // b' = (pi/4) b
    double core_radius = 0.0;   // default 0.05 b
    int strips = 40;

    static WakeParams for_leader(const AircraftParams& leader, double rho, double V_l);
    void validate() const;
};

// Leader pose used to place the wake.
struct LeaderPose {
    Vec3 position = Vec3::Zero();
    EulerWind angles;
};

// Induced velocity at rel_pos (leader wind frame), returned in leader wind-frame components.
Vec3 induced_velocity(const Vec3& rel_pos, const WakeParams& params);

// Strip-theory increments on a follower whose reference point sits at rel_pos in the leader
// wind frame. `rel_rot` maps follower wind-frame vectors into the leader wind frame.
WakeSample induced_increments(const Vec3& rel_pos, const Mat3& rel_rot, const FollowerState& follower,
                              const WakeParams& params, const AircraftParams& P, const AeroCoeffs& C);

// Full evaluation: velocity at the follower (inertial components) plus increments.
WakeSample sample_wake(const LeaderPose& leader, const FollowerState& follower, const WakeParams& params,
                       const AircraftParams& P, const AeroCoeffs& C);

struct FlightCondition {
    double V = 200.0;
    double altitude = 5015.0;
    double alpha = 0.034;
};

struct OffsetSearchResult {
    double r_x = -36.0;
    double r_y = 0.0;
    double dD = 0.0;
};

// Grid search of the drag increment over r_y in [0.5b, 1.5b] at r_x = -36 m, level wings.
OffsetSearchResult optimal_offset_search(const WakeParams& params, const FlightCondition& fc,
                                         const AircraftParams& P, const AeroCoeffs& C, int grid = 201);

}  // namespace vortexform
