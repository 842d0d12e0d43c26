#pragma once

#include <string>
#include <vector>

namespace vortexform {

inline constexpr double kBand5 = 0.457;   // 5% of b
inline constexpr double kBand10 = 0.914;  // 10% of b

// Final 20 s of a flight phase.
struct PhaseWindow {
    double t0 = 0, t1 = 0;
    double max_abs_x_e = 0, max_abs_y_e = 0, max_abs_z_e = 0;
    double max_abs_e_x = 0, max_abs_e_y = 0, max_abs_e_z = 0;  // track frame
    double mean_thrust = 0;
    double mean_wake_error = 0;  // |W_hat - W|
    long samples = 0;
};

struct RunMetrics {
    std::string config_signature;
    bool observers = true;
    double duration = 0;
    long ticks = 0;
    double wall_time = 0;

    double max_abs_x_e = 0, max_abs_y_e = 0, max_abs_z_e = 0;
    double settle_time = 60;
    double settled_max_e_x = 0, settled_max_e_y = 0, settled_max_e_z = 0;
    std::vector<PhaseWindow> windows;

    // Fraction of window samples inside each band.
    double occupancy5_y = 0, occupancy5_z = 0, occupancy10_y = 0, occupancy10_z = 0;
    bool band10_violation = false;

    double mean_thrust_final = 0;
    double max_abs_beta = 0;
    double mean_wake_error = 0;

    long thrust_sat_ticks = 0, attitude_sat_ticks = 0, surface_sat_ticks = 0;
    long allocation_errors = 0, asin_clamps = 0, fpa_clamps = 0;
};

struct TickSample {
    double t = 0;
    double x_e = 0, y_e = 0, z_e = 0;
    double e_x = 0, e_y = 0, e_z = 0;
    double thrust = 0;
    double beta = 0;
    double wake_error = 0;
    bool thrust_sat = false, attitude_sat = false, surface_sat = false, allocation_error = false;
};

class MetricsAccumulator {
public:
    MetricsAccumulator(const std::vector<double>& phase_ends, double window, double settle_time);
    void add(const TickSample& s);
    RunMetrics finish() const;

private:
    RunMetrics m_;
    std::vector<double> wake_err_sum_;
    std::vector<double> thrust_sum_;
    long window_samples_ = 0;
    long in5_y_ = 0, in5_z_ = 0, in10_y_ = 0, in10_z_ = 0;
};

struct ComparisonReport {
    double thrust_with = 0, thrust_without = 0;
    double thrust_reduction_pct = 0;
    double d_occupancy5_y = 0, d_occupancy5_z = 0;
};

// Both runs must share a configuration apart from the observer flag.
ComparisonReport compare_runs(const RunMetrics& with_do, const RunMetrics& without_do);

std::string metrics_to_json(const RunMetrics& m);

}  // namespace vortexform
