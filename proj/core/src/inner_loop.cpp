#include "vortexform/inner_loop.hpp"

#include <algorithm>
#include <cmath>

#include "vortexform/errors.hpp"

namespace vortexform {

void InnerGains::validate() const {
    const double pos[] = {K_mu, K_alpha, K_beta, K_p,  K_q,      K_r,         c_p,     c_q,     c_r,
                          T_mu, T_alpha, T_beta, T_p,  T_q,      T_r,         omega_mu, omega_alpha, omega_p,
                          omega_q, omega_r, zeta_mu, zeta_alpha, zeta_p, zeta_q, zeta_r};
    for (double v : pos) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("InnerGains: all gains must be positive");
    }
}

AttitudeMatrices attitude_matrices(double alpha, double beta, double mu, double gamma) {
    if (!(std::abs(beta) < kBetaLimit)) throw SimulationAbort("attitude singularity: |beta| >= 85 deg");
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta), tb = std::tan(beta), secb = 1.0 / cb;
    const double cm = std::cos(mu), sm = std::sin(mu);
    const double cg = std::cos(gamma), sg = std::sin(gamma);
    AttitudeMatrices m;
    m.G << ca * secb, 0, sa * secb,
        -ca * tb, 1, -sa * tb,
        sa, 0, -ca;
    m.H << cm * tb, sg + sm * cg * tb,
        -cm * secb, -sm * cg * secb,
        -sm, cm * cg;
    m.G_inv << ca * cb, 0, sa,
        sb, 1, 0,
        sa * cb, 0, -ca;
    return m;
}

Vec3 desired_rates(const Vec3& u_Theta_d, const AttitudeMatrices& m, const Vec2& psi_dot_hat) {
    return m.G_inv * (u_Theta_d - m.H * psi_dot_hat);
}

SurfaceCommand surface_allocate(const Vec3& u_tau_d, const Vec3& Omega, const Mat3& inertia, const Vec3& tau0,
                                const Mat3& M_tau, const SurfaceCommand& previous) {
    const double scale = M_tau.row(0).norm() * M_tau.row(1).norm() * M_tau.row(2).norm();
    if (!(scale > 0.0) || std::abs(M_tau.determinant()) < 1e-9 * scale) {
        SurfaceCommand held = previous;
        held.allocation_error = true;
        return held;
    }
    const Vec3 d = M_tau.partialPivLu().solve(inertia * u_tau_d + Omega.cross(inertia * Omega) - tau0);
    SurfaceCommand c;
    c.delta_a = std::clamp(d.x(), -kAileronLimit, kAileronLimit);
    c.delta_e = std::clamp(d.y(), -kElevatorLimit, kElevatorLimit);
    c.delta_r = std::clamp(d.z(), -kRudderLimit, kRudderLimit);
    c.saturated = c.delta_a != d.x() || c.delta_e != d.y() || c.delta_r != d.z();
    return c;
}

InnerLoop::InnerLoop(const InnerGains& g, const AircraftParams& P, const AeroCoeffs& C, bool observers)
    : g_(g), P_(P), C_(C), observers_(observers) {
    g_.validate();
    I_ = P.inertia();
    I_inv_ = I_.inverse();
    att_obs_ = LambdaObserver3(Vec3(g.T_mu, g.T_alpha, g.T_beta));
    rate_obs_ = LambdaObserver3(Vec3(g.T_p, g.T_q, g.T_r));
}

InnerOutput InnerLoop::step(const FollowerState& s, double mu_d, double alpha_d, const Vec2& psi_dot_hat, double dt) {
    InnerOutput o;
    if (!initialized_) {
        mu_f_ = CommandFilter2(g_.omega_mu, g_.zeta_mu, mu_d);
        alpha_f_ = CommandFilter2(g_.omega_alpha, g_.zeta_alpha, alpha_d);
    }
    const Vec3 Theta_c_dot(mu_f_.rate(), alpha_f_.rate(), 0.0);
    o.e_Theta = Vec3(wrap_pi(s.mu - mu_d), s.alpha - alpha_d, s.beta);

    const AttitudeMatrices m = attitude_matrices(s.alpha, s.beta, s.mu, s.gamma);
    if (!initialized_) {
        att_obs_.init(o.e_Theta);
    } else if (observers_) {
        o.d_hat_Theta = att_obs_.step(o.e_Theta, last_f_att_, dt);
    }
    o.u_Theta_d = -g_.K_Theta().cwiseProduct(o.e_Theta) + Theta_c_dot - o.d_hat_Theta;
    o.Omega_d = desired_rates(o.u_Theta_d, m, psi_dot_hat);

    const double w[3] = {g_.omega_p, g_.omega_q, g_.omega_r};
    const double z[3] = {g_.zeta_p, g_.zeta_q, g_.zeta_r};
    if (!initialized_) {
        for (int i = 0; i < 3; ++i) rate_f_[i] = CommandFilter2(w[i], z[i], o.Omega_d[i]);
    }
    Vec3 Omega_c_dot;
    for (int i = 0; i < 3; ++i) {
        o.Omega_c[i] = rate_f_[i].value();
        Omega_c_dot[i] = rate_f_[i].rate();
    }
    o.eps_Theta = o.e_Theta - xi_;
    const Vec3 Omega = s.rates();
    o.e_Omega = Omega - o.Omega_c;
    if (!initialized_) {
        rate_obs_.init(o.e_Omega);
    } else if (observers_) {
        o.d_hat_tau = rate_obs_.step(o.e_Omega, last_f_rate_, dt);
    }
    o.u_tau_d = -g_.K_Omega().cwiseProduct(o.e_Omega) - g_.C_Omega().cwiseProduct(m.G.transpose() * o.eps_Theta) -
                o.d_hat_tau + Omega_c_dot;

    const NominalMoments nm = nominal_moments(s, P_, C_);
    o.surfaces = surface_allocate(o.u_tau_d, Omega, I_, nm.tau0, nm.M_tau, last_cmd_);
    last_cmd_ = o.surfaces;

    // Known parts of the error dynamics over the coming interval.
    last_f_att_ = m.G * Omega + m.H * psi_dot_hat - Theta_c_dot;
    const Vec3 u_tau = I_inv_ * (nm.tau0 + nm.M_tau * o.surfaces.as_vector() - Omega.cross(I_ * Omega));
    last_f_rate_ = u_tau - Omega_c_dot;

    const Vec3 drive = m.G * (o.Omega_c - o.Omega_d);
    const Vec3 K = g_.K_Theta();
    auto rhs = [&](const Vec3& x) -> Vec3 { return -K.cwiseProduct(x) + drive; };
    const Vec3 k1 = rhs(xi_);
    const Vec3 k2 = rhs(xi_ + 0.5 * dt * k1);
    const Vec3 k3 = rhs(xi_ + 0.5 * dt * k2);
    const Vec3 k4 = rhs(xi_ + dt * k3);
    xi_ += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);

    mu_f_.step(mu_d, dt);
    alpha_f_.step(alpha_d, dt);
    for (int i = 0; i < 3; ++i) rate_f_[i].step(o.Omega_d[i], dt);
    initialized_ = true;
    return o;
}

}  // namespace vortexform

namespace vortexform {

std::vector<AuditItem> audit_inner_gains(const InnerGains& g, double dt) {
    std::vector<AuditItem> out;
    auto pos = [&](std::string name, double v) { out.push_back({std::move(name), v, 0.0, true, v > 0.0}); };
    pos("min K_Theta > 0", g.K_Theta().minCoeff());
    pos("min K_Omega > 0", g.K_Omega().minCoeff());
    pos("min C_Omega > 0", g.C_Omega().minCoeff());
    pos("min T_Theta > 0", std::min({g.T_mu, g.T_alpha, g.T_beta}));
    pos("min T_Omega > 0", std::min({g.T_p, g.T_q, g.T_r}));
    const double wmax = std::max({g.omega_mu, g.omega_alpha, g.omega_p, g.omega_q, g.omega_r});
    out.push_back({"dt * max omega < 0.5", dt * wmax, 0.5, false, dt * wmax < 0.5});
    const double tmin = std::min({g.T_mu, g.T_alpha, g.T_beta, g.T_p, g.T_q, g.T_r});
    out.push_back({"dt < min T", dt, tmin, false, dt < tmin});
    return out;
}

}  // namespace vortexform
