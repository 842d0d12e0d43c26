#pragma once

#include <vector>

#include "vortexform/filters.hpp"
#include "vortexform/frames.hpp"

namespace vortexform {

struct LeaderSegment {
    double duration = 0.0;  // s
    double V = 200.0;       // m/s
    double gamma = 0.0;     // rad
    double chi_dot = 0.0;   // rad/s
};

struct LeaderCommand {
    double V = 0, gamma = 0, chi_dot = 0;
    double V_dot = 0, gamma_dot = 0, chi_ddot = 0;
};

// Piecewise-constant segments joined by cosine ramps that start at each junction.
class LeaderProfile {
public:
    LeaderProfile() = default;
    LeaderProfile(std::vector<LeaderSegment> segments, double ramp = 2.0);

    LeaderCommand at(double t) const;
    double duration() const;
    std::vector<double> phase_ends() const;
    const std::vector<LeaderSegment>& segments() const { return segments_; }
    double ramp() const { return ramp_; }

    // Scenario-1 profile at constant speed V.
    static LeaderProfile scenario1(double V = 200.0);

private:
    std::vector<LeaderSegment> segments_;
    double ramp_ = 2.0;
};

// Kinematic leader. Heading is integrated, never wrapped.
struct LeaderState {
    double x = 0, y = 0, z = 0, chi = 0;
    double V = 0, gamma = 0, mu = 0, chi_dot = 0, gamma_dot = 0;

    EulerWind angles() const { return {mu, gamma, chi}; }
    Vec3 velocity() const;
};

// Coordinated-turn bank for a kinematic leader.
double coordinated_bank(double V, double gamma, double chi_dot);

struct FormationGeometry {
    double r_x = -36.0;
    double r_y = 9.0;
    void validate(double span) const;
};

Vec3 offset_inertial(const FormationGeometry& g, const EulerWind& leader);

struct OffsetFilterGains {
    double omega = 5.0;
    double zeta = 1.0;
};

class OffsetFilter {
public:
    OffsetFilter() = default;
    OffsetFilter(const OffsetFilterGains& g, const Vec3& l0);
    void step(const Vec3& l, double dt);
    Vec3 value() const { return {f_[0].value(), f_[1].value(), f_[2].value()}; }
    Vec3 rate() const { return {f_[0].rate(), f_[1].rate(), f_[2].rate()}; }

private:
    CommandFilter2 f_[3];
};

struct ReferenceState {
    double x_r = 0, y_r = 0, z_r = 0;
    double V_r = 0, gamma_r = 0, chi_r = 0;
    double chi_r_dot_hat = 0;
};

struct PlannerDiagnostics {
    long asin_clamps = 0;
};

ReferenceState reference_state(const LeaderState& leader, const Vec3& l_c, const Vec3& l_c_dot,
                               PlannerDiagnostics& diag);

struct PlannerGains {
    double omega_l = 5.0;
    double zeta_l = 1.0;
    double omega_chi_r = 5.0;
    double zeta_chi_r = 1.0;
};

// Offset filtering, reference kinematics and the chi_r rate estimate, one tick at a time.
// update() returns the reference at the current tick, then advances the filters.
class Planner {
public:
    Planner() = default;
    Planner(const FormationGeometry& g, const PlannerGains& gains);

    ReferenceState update(const LeaderState& leader, double dt);
    const PlannerDiagnostics& diagnostics() const { return diag_; }

private:
    FormationGeometry geom_;
    PlannerGains gains_;
    OffsetFilter offsets_;
    CommandFilter2 chi_r_filter_;
    bool initialized_ = false;
    PlannerDiagnostics diag_;
};

}  // namespace vortexform
