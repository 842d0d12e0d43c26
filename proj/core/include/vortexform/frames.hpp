#pragma once

#include <Eigen/Dense>

namespace vortexform {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kG = 9.81;
inline constexpr double kDeg = kPi / 180.0;

// Wind-axis attitude triplet.
struct EulerWind {
    double mu = 0.0;
    double gamma = 0.0;
    double chi = 0.0;
};

// Maps wind-frame vectors into inertial NED (z down): heading, then flight path, then bank.
// The x axis lands on (cos g cos c, cos g sin c, -sin g).
Mat3 rotation_wind_to_inertial(const EulerWind& angles);

struct TrackError {
    double e_x = 0.0;
    double e_y = 0.0;
    double e_z = 0.0;
};

TrackError inertial_error_to_track(double x_e, double y_e, double z_e, double chi_hat);
Vec3 track_to_inertial(const TrackError& e, double chi_hat);

// Wraps to (-pi, pi].
double wrap_pi(double a);

// Returns the representative of `a` (mod 2pi) nearest to `reference`.
double unwrap_near(double a, double reference);

}  // namespace vortexform
