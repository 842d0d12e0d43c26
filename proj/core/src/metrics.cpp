#include "vortexform/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "vortexform/errors.hpp"

namespace vortexform {

MetricsAccumulator::MetricsAccumulator(const std::vector<double>& phase_ends, double window, double settle_time) {
    m_.settle_time = settle_time;
    for (double e : phase_ends) {
        PhaseWindow w;
        w.t0 = std::max(0.0, e - window);
        w.t1 = e;
        m_.windows.push_back(w);
    }
    wake_err_sum_.assign(m_.windows.size(), 0.0);
    thrust_sum_.assign(m_.windows.size(), 0.0);
}

void MetricsAccumulator::add(const TickSample& s) {
    ++m_.ticks;
    m_.duration = s.t;
    m_.max_abs_x_e = std::max(m_.max_abs_x_e, std::abs(s.x_e));
    m_.max_abs_y_e = std::max(m_.max_abs_y_e, std::abs(s.y_e));
    m_.max_abs_z_e = std::max(m_.max_abs_z_e, std::abs(s.z_e));
    m_.max_abs_beta = std::max(m_.max_abs_beta, std::abs(s.beta));
    if (s.t >= m_.settle_time) {
        m_.settled_max_e_x = std::max(m_.settled_max_e_x, std::abs(s.e_x));
        m_.settled_max_e_y = std::max(m_.settled_max_e_y, std::abs(s.e_y));
        m_.settled_max_e_z = std::max(m_.settled_max_e_z, std::abs(s.e_z));
    }
    m_.thrust_sat_ticks += s.thrust_sat;
    m_.attitude_sat_ticks += s.attitude_sat;
    m_.surface_sat_ticks += s.surface_sat;
    m_.allocation_errors += s.allocation_error;

    for (std::size_t i = 0; i < m_.windows.size(); ++i) {
        PhaseWindow& w = m_.windows[i];
        if (s.t < w.t0 || s.t > w.t1) continue;
        w.max_abs_x_e = std::max(w.max_abs_x_e, std::abs(s.x_e));
        w.max_abs_y_e = std::max(w.max_abs_y_e, std::abs(s.y_e));
        w.max_abs_z_e = std::max(w.max_abs_z_e, std::abs(s.z_e));
        w.max_abs_e_x = std::max(w.max_abs_e_x, std::abs(s.e_x));
        w.max_abs_e_y = std::max(w.max_abs_e_y, std::abs(s.e_y));
        w.max_abs_e_z = std::max(w.max_abs_e_z, std::abs(s.e_z));
        thrust_sum_[i] += s.thrust;
        wake_err_sum_[i] += s.wake_error;
        ++w.samples;
        ++window_samples_;
        in5_y_ += std::abs(s.y_e) < kBand5;
        in5_z_ += std::abs(s.z_e) < kBand5;
        in10_y_ += std::abs(s.y_e) < kBand10;
        in10_z_ += std::abs(s.z_e) < kBand10;
    }
}

RunMetrics MetricsAccumulator::finish() const {
    RunMetrics m = m_;
    double wake_total = 0.0;
    for (std::size_t i = 0; i < m.windows.size(); ++i) {
        PhaseWindow& w = m.windows[i];
        if (w.samples == 0) continue;
        w.mean_thrust = thrust_sum_[i] / w.samples;
        w.mean_wake_error = wake_err_sum_[i] / w.samples;
        wake_total += wake_err_sum_[i];
        if (w.max_abs_y_e > kBand10 || w.max_abs_z_e > kBand10) m.band10_violation = true;
    }
    if (window_samples_ > 0) {
        const double n = static_cast<double>(window_samples_);
        m.occupancy5_y = in5_y_ / n;
        m.occupancy5_z = in5_z_ / n;
        m.occupancy10_y = in10_y_ / n;
        m.occupancy10_z = in10_z_ / n;
        m.mean_wake_error = wake_total / n;
    }
    if (!m.windows.empty()) m.mean_thrust_final = m.windows.back().mean_thrust;
    return m;
}

ComparisonReport compare_runs(const RunMetrics& with_do, const RunMetrics& without_do) {
    if (with_do.config_signature != without_do.config_signature) {
        throw InvalidArgument("compare_runs: configurations differ beyond the observer flag");
    }
    if (!(without_do.mean_thrust_final > 0.0)) throw InvalidArgument("compare_runs: baseline thrust not positive");
    ComparisonReport r;
    r.thrust_with = with_do.mean_thrust_final;
    r.thrust_without = without_do.mean_thrust_final;
    r.thrust_reduction_pct = 100.0 * (r.thrust_without - r.thrust_with) / r.thrust_without;
    r.d_occupancy5_y = with_do.occupancy5_y - without_do.occupancy5_y;
    r.d_occupancy5_z = with_do.occupancy5_z - without_do.occupancy5_z;
    return r;
}

std::string metrics_to_json(const RunMetrics& m) {
    nlohmann::ordered_json j;
    j["config_signature"] = m.config_signature;
    j["observers"] = m.observers;
    j["duration"] = m.duration;
    j["ticks"] = m.ticks;
    j["wall_time_s"] = m.wall_time;
    j["max_abs_x_e"] = m.max_abs_x_e;
    j["max_abs_y_e"] = m.max_abs_y_e;
    j["max_abs_z_e"] = m.max_abs_z_e;
    j["settle_time"] = m.settle_time;
    j["settled_max_e_x"] = m.settled_max_e_x;
    j["settled_max_e_y"] = m.settled_max_e_y;
    j["settled_max_e_z"] = m.settled_max_e_z;
    auto& ws = j["windows"] = nlohmann::ordered_json::array();
    for (const auto& w : m.windows) {
        ws.push_back({{"t0", w.t0},
                      {"t1", w.t1},
                      {"max_abs_x_e", w.max_abs_x_e},
                      {"max_abs_y_e", w.max_abs_y_e},
                      {"max_abs_z_e", w.max_abs_z_e},
                      {"max_abs_e_x", w.max_abs_e_x},
                      {"max_abs_e_y", w.max_abs_e_y},
                      {"max_abs_e_z", w.max_abs_e_z},
                      {"mean_thrust", w.mean_thrust},
                      {"mean_wake_error", w.mean_wake_error}});
    }
    j["occupancy5_y"] = m.occupancy5_y;
    j["occupancy5_z"] = m.occupancy5_z;
    j["occupancy10_y"] = m.occupancy10_y;
    j["occupancy10_z"] = m.occupancy10_z;
    j["band10_violation"] = m.band10_violation;
    j["mean_thrust_final"] = m.mean_thrust_final;
    j["max_abs_beta_deg"] = m.max_abs_beta * 180.0 / 3.14159265358979323846;
    j["mean_wake_error"] = m.mean_wake_error;
    j["thrust_sat_ticks"] = m.thrust_sat_ticks;
    j["attitude_sat_ticks"] = m.attitude_sat_ticks;
    j["surface_sat_ticks"] = m.surface_sat_ticks;
    j["allocation_errors"] = m.allocation_errors;
    j["asin_clamps"] = m.asin_clamps;
    j["fpa_clamps"] = m.fpa_clamps;
    return j.dump(2);
}

}  // namespace vortexform
