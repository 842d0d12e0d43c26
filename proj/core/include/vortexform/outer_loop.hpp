#pragma once

#include <string>
#include <vector>

#include "vortexform/filters.hpp"
#include "vortexform/planner.hpp"
#include "vortexform/vehicle.hpp"

namespace vortexform {

// How the outer observer forms its known-input term.
//  commanded: u0 + command-rate feedforward - d_hat (the applied virtual input)
//  measured:  nominal u_V, u_gamma, u_chi evaluated on the measured state
enum class ObserverInput { commanded, measured };

struct OuterGains {
    double K_x = 0.3, K_z = 0.2;
    double K_V = 1.75, K_gamma = 0.75, K_chi = 1.75;
    double c_V = 1e-5, c_chi = 1e-4;
    double T_Wx = 0.8, T_Wy = 0.5, T_Wz = 0.4;
    double T_V = 0.25, T_gamma = 0.2, T_chi = 0.2;
    double omega_V = 8.0, omega_gamma = 8.0;
    double zeta_V = 1.0, zeta_gamma = 1.0;
    double omega_chi_f = 5.0, zeta_chi_f = 1.0;  // differencing filter for chi_hat_f
    ObserverInput observer_input = ObserverInput::measured;

    void validate() const;
};

struct AuditItem {
    std::string name;
    double value = 0.0;   // quantity that must stay below `bound` (or above, see `greater`)
    double bound = 0.0;
    bool greater = false;
    bool pass = false;
};

// Gain inequalities and the 2x2 Lyapunov-matrix determinants.
std::vector<AuditItem> audit_outer_gains(const OuterGains& g);

struct CorrectedAir {
    double V_hat = 0, gamma_hat = 0, chi_hat = 0;
    double dV = 0;
};

CorrectedAir corrected_air_state(double V, double gamma, double chi, const Vec3& W_hat);

struct GuidanceErrors {
    double x_e = 0, y_e = 0, z_e = 0;
    double e_x = 0, e_y = 0, e_z = 0;
    double eps_x = 0, eps_z = 0;
    double e_chi = 0;
};

GuidanceErrors guidance_errors(const Vec3& pos, const ReferenceState& ref, double chi_hat, double xi_x,
                               double xi_z);

struct SpeedFpa {
    double V_d = 0;
    double gamma_d = 0;
};

SpeedFpa desired_speed_fpa(const GuidanceErrors& e, const ReferenceState& ref, const CorrectedAir& air,
                           double V_f, double W_hat_z, const OuterGains& g, long& clamp_count);

// Nominal (u_V0, u_gamma0, u_chi0).
Vec3 outer_nominal_inputs(const GuidanceErrors& e, double e_V, double e_gamma, const ReferenceState& ref,
                          const CorrectedAir& air, const OuterGains& g);

struct AuxStates {
    double xi_x = 0;
    double xi_z = 0;
};

AuxStates auxiliary_update(const AuxStates& xi, double V_c, double V_d, double gamma_d, double gamma_f, double V_f,
                           double gamma_hat, const OuterGains& g, double dt);

struct OuterCommand {
    double T_c = 0;
    double alpha_d = 0;
    double mu_d = 0;
    bool thrust_saturated = false;
    bool attitude_saturated = false;
    bool allocation_error = false;
};

inline constexpr double kAlphaLimit = 25.0 * kDeg;
inline constexpr double kMuLimit = 60.0 * kDeg;

OuterCommand allocate(const Vec3& u_d, const FollowerState& s, const NominalForces& nf, const AircraftParams& P,
                      const OuterCommand& previous);

// Everything the outer loop exposes per tick.
struct OuterOutput {
    OuterCommand cmd;
    ReferenceState ref;
    CorrectedAir air;
    GuidanceErrors err;
    double chi_hat_dot = 0;
    double V_c = 0, gamma_c = 0, V_d = 0, gamma_d = 0;
    double e_V = 0, e_gamma = 0;
    Vec3 W_hat = Vec3::Zero();
    Vec3 d_hat = Vec3::Zero();
    Vec3 u_d = Vec3::Zero();
    AuxStates xi;
};

class OuterLoop {
public:
    OuterLoop() = default;
    OuterLoop(const OuterGains& g, const AircraftParams& P, const AeroCoeffs& C, bool observers);

    OuterOutput step(const FollowerState& s, const ReferenceState& ref, double dt);

    long clamp_count() const { return clamps_; }
    const OuterGains& gains() const { return g_; }

private:
    OuterGains g_;
    AircraftParams P_;
    AeroCoeffs C_;
    bool observers_ = true;
    bool initialized_ = false;

    LambdaObserver3 wake_obs_;
    LambdaObserver3 outer_obs_;
    CommandFilter2 V_filter_, gamma_filter_, chi_f_filter_;
    AuxStates xi_;
    Vec3 last_UP_ = Vec3::Zero();
    Vec3 last_f_ = Vec3::Zero();
    OuterCommand last_cmd_;
    long clamps_ = 0;
};

}  // namespace vortexform
