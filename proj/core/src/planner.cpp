#include "vortexform/planner.hpp"

#include <algorithm>
#include <cmath>

#include "vortexform/errors.hpp"
#include "vortexform/vehicle.hpp"

namespace vortexform {

LeaderProfile::LeaderProfile(std::vector<LeaderSegment> segments, double ramp)
    : segments_(std::move(segments)), ramp_(ramp) {
    if (segments_.empty()) throw ConfigError("LeaderProfile: at least one segment required");
    if (!(ramp_ > 0.0)) throw ConfigError("LeaderProfile: ramp must be positive");
    for (const auto& s : segments_) {
        if (!(s.duration >= ramp_)) throw ConfigError("LeaderProfile: segment shorter than the ramp");
        if (!(s.V > kStallSpeed)) throw ConfigError("LeaderProfile: segment speed too low");
        if (!(std::abs(s.gamma) < kPi / 4)) throw ConfigError("LeaderProfile: |gamma| must be below 45 deg");
    }
}

double LeaderProfile::duration() const {
    double t = 0.0;
    for (const auto& s : segments_) t += s.duration;
    return t;
}

std::vector<double> LeaderProfile::phase_ends() const {
    std::vector<double> ends;
    double t = 0.0;
    for (const auto& s : segments_) {
        t += s.duration;
        ends.push_back(t);
    }
    return ends;
}

LeaderCommand LeaderProfile::at(double t) const {
    double start = 0.0;
    std::size_t i = 0;
    while (i + 1 < segments_.size() && t >= start + segments_[i].duration) {
        start += segments_[i].duration;
        ++i;
    }
    const LeaderSegment& cur = segments_[i];
    LeaderCommand c{cur.V, cur.gamma, cur.chi_dot, 0, 0, 0};
    const double into = t - start;
    if (i > 0 && into < ramp_) {
        const LeaderSegment& prev = segments_[i - 1];
        const double ph = kPi * std::max(0.0, into) / ramp_;
        const double w = 0.5 * (1.0 - std::cos(ph));
        const double wd = 0.5 * kPi / ramp_ * std::sin(ph);
        c.V = prev.V + w * (cur.V - prev.V);
        c.gamma = prev.gamma + w * (cur.gamma - prev.gamma);
        c.chi_dot = prev.chi_dot + w * (cur.chi_dot - prev.chi_dot);
        c.V_dot = wd * (cur.V - prev.V);
        c.gamma_dot = wd * (cur.gamma - prev.gamma);
        c.chi_ddot = wd * (cur.chi_dot - prev.chi_dot);
    }
    return c;
}

LeaderProfile LeaderProfile::scenario1(double V) {
    return LeaderProfile({{35.0, V, 0.0, 0.0}, {110.0, V, -1.5 * kDeg, 0.75 * kDeg}, {35.0, V, 0.0, 0.0}}, 2.0);
}

Vec3 LeaderState::velocity() const {
    return {V * std::cos(gamma) * std::cos(chi), V * std::cos(gamma) * std::sin(chi), -V * std::sin(gamma)};
}

double coordinated_bank(double V, double gamma, double chi_dot) {
    return std::atan(V * chi_dot * std::cos(gamma) / kG);
}

void FormationGeometry::validate(double span) const {
    if (!(r_x >= -10.0 * span && r_x <= -2.0 * span)) {
        throw ConfigError("FormationGeometry: r_x must lie in [-10b, -2b]");
    }
    if (!(std::abs(r_y) >= 0.5 * span && std::abs(r_y) <= 1.5 * span)) {
        throw ConfigError("FormationGeometry: |r_y| must lie in [0.5b, 1.5b]");
    }
}

Vec3 offset_inertial(const FormationGeometry& g, const EulerWind& leader) {
    return rotation_wind_to_inertial(leader) * Vec3(g.r_x, g.r_y, 0.0);
}

OffsetFilter::OffsetFilter(const OffsetFilterGains& g, const Vec3& l0) {
    for (int i = 0; i < 3; ++i) f_[i] = CommandFilter2(g.omega, g.zeta, l0[i]);
}

void OffsetFilter::step(const Vec3& l, double dt) {
    for (int i = 0; i < 3; ++i) f_[i].step(l[i], dt);
}

namespace {

double clamped_asin(double v, PlannerDiagnostics& diag) {
    if (v > 1.0 || v < -1.0) {
        ++diag.asin_clamps;
        v = std::clamp(v, -1.0, 1.0);
    }
    return std::asin(v);
}

}  // namespace

ReferenceState reference_state(const LeaderState& leader, const Vec3& l_c, const Vec3& l_c_dot,
                               PlannerDiagnostics& diag) {
    const Vec3 vr = leader.velocity() + l_c_dot;
    ReferenceState r;
    r.x_r = leader.x + l_c.x();
    r.y_r = leader.y + l_c.y();
    r.z_r = leader.z + l_c.z();
    r.V_r = vr.norm();
    if (!(r.V_r > 0.0)) throw SimulationAbort("reference speed is zero");
    r.gamma_r = clamped_asin(-vr.z() / r.V_r, diag);
    const double sc = std::sin(leader.chi), cc = std::cos(leader.chi);
    r.chi_r = leader.chi +
              clamped_asin((-l_c_dot.x() * sc + l_c_dot.y() * cc) / (r.V_r * std::cos(r.gamma_r)), diag);
    return r;
}

Planner::Planner(const FormationGeometry& g, const PlannerGains& gains) : geom_(g), gains_(gains) {}

ReferenceState Planner::update(const LeaderState& leader, double dt) {
    const Vec3 l = offset_inertial(geom_, leader.angles());
    if (!initialized_) {
        offsets_ = OffsetFilter({gains_.omega_l, gains_.zeta_l}, l);
    }
    ReferenceState r = reference_state(leader, offsets_.value(), offsets_.rate(), diag_);
    if (!initialized_) {
        chi_r_filter_ = CommandFilter2(gains_.omega_chi_r, gains_.zeta_chi_r, r.chi_r);
        initialized_ = true;
    }
    r.chi_r_dot_hat = chi_r_filter_.rate();
    offsets_.step(l, dt);
    chi_r_filter_.step(r.chi_r, dt);
    return r;
}

}  // namespace vortexform
