#include "vortexform/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace vortexform {

namespace {

namespace pt = boost::property_tree;

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
    return d;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected on/off, got '" + v + "'");
}

using Table = std::map<std::string, double*>;

Table vehicle_table(AircraftParams& P, AeroCoeffs& C) {
    return {{"S", &P.S}, {"b", &P.b}, {"c_bar", &P.c_bar}, {"m", &P.m}, {"I_x", &P.I_x}, {"I_y", &P.I_y},
            {"I_z", &P.I_z}, {"I_xz", &P.I_xz}, {"S_v", &P.S_v}, {"S_h", &P.S_h}, {"b_t", &P.b_t},
            {"c_r", &P.c_r}, {"c_t", &P.c_t}, {"h_t", &P.h_t}, {"Lambda_s", &P.Lambda_s},
            {"Lambda_d", &P.Lambda_d}, {"l_t", &P.l_t}, {"T_max", &P.T_max}, {"thrust_lag", &P.thrust_lag},
            {"C_D0", &C.C_D0}, {"e_o", &C.e_o}, {"C_l_alpha", &C.C_l_alpha}, {"C_L0", &C.C_L0},
            {"C_L_alpha", &C.C_L_alpha}, {"c_eta", &C.c_eta}, {"C_calL_beta", &C.C_calL_beta},
            {"C_calL_p", &C.C_calL_p}, {"C_calL_r", &C.C_calL_r}, {"C_calL_delta_a", &C.C_calL_delta_a},
            {"C_calL_delta_r", &C.C_calL_delta_r}, {"C_M0", &C.C_M0}, {"C_M_alpha", &C.C_M_alpha},
            {"C_M_q", &C.C_M_q}, {"C_M_delta_e", &C.C_M_delta_e}, {"C_N_beta", &C.C_N_beta},
            {"C_N_p", &C.C_N_p}, {"C_N_r", &C.C_N_r}, {"C_N_delta_a", &C.C_N_delta_a},
            {"C_N_delta_r", &C.C_N_delta_r}};
}

Table outer_table(OuterGains& g) {
    return {{"K_x", &g.K_x}, {"K_z", &g.K_z}, {"K_V", &g.K_V}, {"K_gamma", &g.K_gamma}, {"K_chi", &g.K_chi},
            {"c_V", &g.c_V}, {"c_chi", &g.c_chi}, {"T_Wx", &g.T_Wx}, {"T_Wy", &g.T_Wy}, {"T_Wz", &g.T_Wz},
            {"T_V", &g.T_V}, {"T_gamma", &g.T_gamma}, {"T_chi", &g.T_chi}, {"omega_V", &g.omega_V},
            {"omega_gamma", &g.omega_gamma}, {"zeta_V", &g.zeta_V}, {"zeta_gamma", &g.zeta_gamma},
            {"omega_chi_f", &g.omega_chi_f}, {"zeta_chi_f", &g.zeta_chi_f}};
}

Table inner_table(InnerGains& g) {
    return {{"K_mu", &g.K_mu}, {"K_alpha", &g.K_alpha}, {"K_beta", &g.K_beta}, {"K_p", &g.K_p},
            {"K_q", &g.K_q}, {"K_r", &g.K_r}, {"c_p", &g.c_p}, {"c_q", &g.c_q}, {"c_r", &g.c_r},
            {"T_mu", &g.T_mu}, {"T_alpha", &g.T_alpha}, {"T_beta", &g.T_beta}, {"T_p", &g.T_p},
            {"T_q", &g.T_q}, {"T_r", &g.T_r}, {"omega_mu", &g.omega_mu}, {"omega_alpha", &g.omega_alpha},
            {"omega_p", &g.omega_p}, {"omega_q", &g.omega_q}, {"omega_r", &g.omega_r},
            {"zeta_mu", &g.zeta_mu}, {"zeta_alpha", &g.zeta_alpha}, {"zeta_p", &g.zeta_p},
            {"zeta_q", &g.zeta_q}, {"zeta_r", &g.zeta_r}};
}

void apply(const pt::ptree& sec, const std::string& name, Table table,
           const std::map<std::string, std::function<void(const std::string&)>>& extra = {}) {
    for (const auto& [k, v] : sec) {
        const std::string full = name + "." + k;
        const std::string val = v.get_value<std::string>();
        if (auto it = table.find(k); it != table.end()) {
            *it->second = to_double(full, val);
        } else if (auto jt = extra.find(k); jt != extra.end()) {
            jt->second(val);
        } else {
            throw ConfigError("unknown key '" + full + "'");
        }
    }
}

ScenarioConfig from_tree(const pt::ptree& tree) {
    static const char* sections[] = {"vehicle", "wake", "planner", "outer_loop", "inner_loop", "sim"};
    for (const auto& [k, v] : tree) {
        if (v.empty() && !v.data().empty()) throw ConfigError("key '" + k + "' outside any section");
        if (std::find(std::begin(sections), std::end(sections), k) == std::end(sections)) {
            throw ConfigError("unknown section [" + k + "]");
        }
    }
    const pt::ptree empty;
    auto section = [&](const char* n) -> const pt::ptree& {
        auto it = tree.find(n);
        return it == tree.not_found() ? empty : it->second;
    };

    const pt::ptree& sim = section("sim");
    const std::string scenario = sim.get<std::string>("scenario", "s1");
    double speed = 200.0;
    if (auto v = sim.get_optional<std::string>("speed")) speed = to_double("sim.speed", *v);
    ScenarioConfig c = ScenarioConfig::by_name(scenario, speed);

    apply(section("vehicle"), "vehicle", vehicle_table(c.aircraft, c.aero));
    double strips = c.wake_strips;
    apply(section("wake"), "wake",
          {{"core_radius_ratio", &c.core_radius_ratio}, {"circulation_scale", &c.circulation_scale},
           {"strips", &strips}},
          {{"enabled", [&](const std::string& v) { c.wake = to_bool("wake.enabled", v); }}});
    c.wake_strips = static_cast<int>(strips);
    apply(section("planner"), "planner",
          {{"r_x", &c.formation.r_x}, {"r_y", &c.formation.r_y}, {"omega_l", &c.planner.omega_l},
           {"zeta_l", &c.planner.zeta_l}, {"omega_chi_r", &c.planner.omega_chi_r},
           {"zeta_chi_r", &c.planner.zeta_chi_r}});
    apply(section("outer_loop"), "outer_loop", outer_table(c.outer),
          {{"observers", [&](const std::string& v) { c.observers = to_bool("outer_loop.observers", v); }},
           {"observer_input", [&](const std::string& v) {
                if (v == "commanded") c.outer.observer_input = ObserverInput::commanded;
                else if (v == "measured") c.outer.observer_input = ObserverInput::measured;
                else throw ConfigError("outer_loop.observer_input: expected commanded or measured");
            }}});
    apply(section("inner_loop"), "inner_loop", inner_table(c.inner));

    UncertaintySpec& u = c.uncertainty;
    apply(sim, "sim",
          {{"dt", &c.dt}, {"duration", &c.duration}, {"window", &c.window}, {"settle_time", &c.settle_time},
           {"drag", &u.drag}, {"lift_slope", &u.lift_slope}, {"roll_moment", &u.roll_moment},
           {"pitch_moment", &u.pitch_moment}, {"yaw_moment", &u.yaw_moment}, {"C_Y_beta", &u.C_Y_beta},
           {"x_l0", &c.leader_position.x()}, {"y_l0", &c.leader_position.y()}, {"z_l0", &c.leader_position.z()},
           {"x_f0", &c.follower_position.x()}, {"y_f0", &c.follower_position.y()},
           {"z_f0", &c.follower_position.z()}},
          {{"scenario", [](const std::string&) {}},
           {"speed", [](const std::string&) {}},
           {"uncertainty", [&](const std::string& v) {
                if (!to_bool("sim.uncertainty", v)) u = UncertaintySpec::none();
            }}});
    c.validate();
    return c;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return from_tree(tree);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace vortexform
