#include "vortexform/telemetry.hpp"

#include <cstdio>
#include <string>

namespace vortexform {

const std::array<const char*, kTelemetryColumns>& telemetry_header() {
    static const std::array<const char*, kTelemetryColumns> h = {
        "t",
        "x_l", "y_l", "z_l", "V_l", "gamma_l", "chi_l", "mu_l", "chi_dot_l", "gamma_dot_l",
        "x_f", "y_f", "z_f", "V_f", "gamma_f", "chi_f", "mu_f", "alpha_f", "beta_f", "p", "q", "r", "T",
        "x_r", "y_r", "z_r", "V_r", "gamma_r", "chi_r",
        "x_e", "y_e", "z_e", "V_e", "gamma_e", "chi_e",
        "W_hat_x", "W_hat_y", "W_hat_z", "d_hat_V", "d_hat_gamma", "d_hat_chi", "d_hat_p", "d_hat_q", "d_hat_r",
        "T_c", "delta_a", "delta_e", "delta_r",
        "thrust_sat", "attitude_sat", "surface_sat"};
    return h;
}

CsvTelemetryWriter::CsvTelemetryWriter(std::ostream& os) : os_(os) {
    const auto& h = telemetry_header();
    for (int i = 0; i < kTelemetryColumns; ++i) {
        if (i) os_ << ',';
        os_ << h[i];
    }
    os_ << '\n';
}

void CsvTelemetryWriter::write(const TelemetryRow& row) {
    std::string line;
    line.reserve(kTelemetryColumns * 16);
    char buf[32];
    for (int i = 0; i < kTelemetryColumns; ++i) {
        if (i) line.push_back(',');
        const int n = std::snprintf(buf, sizeof buf, "%.9g", row.v[i]);
        line.append(buf, n);
    }
    line.push_back('\n');
    os_ << line;
    ++rows_;
}

}  // namespace vortexform
