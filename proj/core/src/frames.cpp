#include "vortexform/frames.hpp"

#include <cmath>

#include "vortexform/errors.hpp"

namespace vortexform {

Mat3 rotation_wind_to_inertial(const EulerWind& a) {
    if (!std::isfinite(a.mu) || !std::isfinite(a.gamma) || !std::isfinite(a.chi)) {
        throw InvalidArgument("rotation_wind_to_inertial: non-finite angle");
    }
    if (std::abs(a.gamma) >= kPi / 2) {
        throw InvalidArgument("rotation_wind_to_inertial: |gamma| must be below pi/2");
    }
    const double cm = std::cos(a.mu), sm = std::sin(a.mu);
    const double cg = std::cos(a.gamma), sg = std::sin(a.gamma);
    const double cc = std::cos(a.chi), sc = std::sin(a.chi);

    Mat3 rz, ry, rx;
    rz << cc, -sc, 0, sc, cc, 0, 0, 0, 1;
    // climb (gamma > 0) must point the x axis toward -z
    ry << cg, 0, sg, 0, 1, 0, -sg, 0, cg;
    rx << 1, 0, 0, 0, cm, -sm, 0, sm, cm;
    return rz * ry * rx;
}

TrackError inertial_error_to_track(double x_e, double y_e, double z_e, double chi_hat) {
    if (!std::isfinite(x_e) || !std::isfinite(y_e) || !std::isfinite(z_e) || !std::isfinite(chi_hat)) {
        throw InvalidArgument("inertial_error_to_track: non-finite input");
    }
    const double c = std::cos(chi_hat), s = std::sin(chi_hat);
    return {c * x_e + s * y_e, -s * x_e + c * y_e, z_e};
}

Vec3 track_to_inertial(const TrackError& e, double chi_hat) {
    const double c = std::cos(chi_hat), s = std::sin(chi_hat);
    return {c * e.e_x - s * e.e_y, s * e.e_x + c * e.e_y, e.e_z};
}

double wrap_pi(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

double unwrap_near(double a, double reference) {
    return reference + wrap_pi(a - reference);
}

}  // namespace vortexform
