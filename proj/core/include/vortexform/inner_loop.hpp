#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vortexform/filters.hpp"
#include "vortexform/outer_loop.hpp"
#include "vortexform/vehicle.hpp"

namespace vortexform {

using Mat32 = Eigen::Matrix<double, 3, 2>;
using Vec2 = Eigen::Vector2d;

struct InnerGains {
    double K_mu = 5.0, K_alpha = 5.0, K_beta = 5.0;
    double K_p = 12.0, K_q = 7.5, K_r = 7.5;
    double c_p = 1e-5, c_q = 1e-5, c_r = 1e-5;
    double T_mu = 0.8, T_alpha = 0.8, T_beta = 0.8;
    double T_p = 0.02, T_q = 0.02, T_r = 0.02;
    double omega_mu = 8.0, omega_alpha = 8.0;
    double omega_p = 25.0, omega_q = 5.0, omega_r = 5.0;
    double zeta_mu = 1.0, zeta_alpha = 1.0, zeta_p = 1.0, zeta_q = 1.0, zeta_r = 1.0;

    Vec3 K_Theta() const { return {K_mu, K_alpha, K_beta}; }
    Vec3 K_Omega() const { return {K_p, K_q, K_r}; }
    Vec3 C_Omega() const { return {c_p, c_q, c_r}; }
    void validate() const;
};

struct AttitudeMatrices {
    Mat3 G;
    Mat32 H;
    Mat3 G_inv;
};

inline constexpr double kBetaLimit = 85.0 * kDeg;

AttitudeMatrices attitude_matrices(double alpha, double beta, double mu, double gamma);

// Omega_d = G^-1 (u_Theta_d - H psi_dot_hat)
Vec3 desired_rates(const Vec3& u_Theta_d, const AttitudeMatrices& m, const Vec2& psi_dot_hat);

struct SurfaceCommand {
    double delta_a = 0, delta_e = 0, delta_r = 0;
    bool saturated = false;
    bool allocation_error = false;
    Vec3 as_vector() const { return {delta_a, delta_e, delta_r}; }
};

inline constexpr double kAileronLimit = 21.5 * kDeg;
inline constexpr double kElevatorLimit = 25.0 * kDeg;
inline constexpr double kRudderLimit = 30.0 * kDeg;

SurfaceCommand surface_allocate(const Vec3& u_tau_d, const Vec3& Omega, const Mat3& inertia, const Vec3& tau0,
                                const Mat3& M_tau, const SurfaceCommand& previous);

struct InnerOutput {
    SurfaceCommand surfaces;
    Vec3 e_Theta = Vec3::Zero();
    Vec3 eps_Theta = Vec3::Zero();
    Vec3 e_Omega = Vec3::Zero();
    Vec3 Omega_d = Vec3::Zero();
    Vec3 Omega_c = Vec3::Zero();
    Vec3 d_hat_Theta = Vec3::Zero();
    Vec3 d_hat_tau = Vec3::Zero();
    Vec3 u_Theta_d = Vec3::Zero();
    Vec3 u_tau_d = Vec3::Zero();
};

class InnerLoop {
public:
    InnerLoop() = default;
    InnerLoop(const InnerGains& g, const AircraftParams& P, const AeroCoeffs& C, bool observers);

    // mu_d, alpha_d from the outer allocation; psi_dot_hat = (u_gamma + d_gamma_hat, u_chi + d_chi_hat).
    InnerOutput step(const FollowerState& s, double mu_d, double alpha_d, const Vec2& psi_dot_hat, double dt);

private:
    InnerGains g_;
    AircraftParams P_;
    AeroCoeffs C_;
    Mat3 I_ = Mat3::Identity();
    Mat3 I_inv_ = Mat3::Identity();
    bool observers_ = true;
    bool initialized_ = false;

    CommandFilter2 mu_f_, alpha_f_;
    CommandFilter2 rate_f_[3];
    LambdaObserver3 att_obs_, rate_obs_;
    Vec3 xi_ = Vec3::Zero();
    Vec3 last_f_att_ = Vec3::Zero();
    Vec3 last_f_rate_ = Vec3::Zero();
    SurfaceCommand last_cmd_;
};

}  // namespace vortexform

namespace vortexform {

// Positivity of every gain and time constant, and filter bandwidth against the tick.
std::vector<AuditItem> audit_inner_gains(const InnerGains& g, double dt);

}  // namespace vortexform
