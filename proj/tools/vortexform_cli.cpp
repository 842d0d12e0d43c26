#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "svg_plot.hpp"
#include "vortexform/config.hpp"
#include "vortexform/selftest.hpp"
#include "vortexform/sim.hpp"

namespace fs = std::filesystem;
using namespace vortexform;

namespace {

enum Exit { kOk = 0, kSelftestFail = 1, kBadConfig = 2, kAbort = 3 };

// Write to a sibling temp file, then rename over the target.
void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << content;
        if (!out) throw ConfigError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("output directory not usable: " + dir.string());
    const fs::path probe = dir / ".write_probe";
    std::ofstream p(probe);
    if (!p) throw ConfigError("output directory not writable: " + dir.string());
    p.close();
    fs::remove(probe);
}

bool on_off(const std::string& v) { return v == "on"; }

struct Overrides {
    std::string scenario = "s1";
    std::string config;
    std::string out = "out";
    double dt = 0.0;
    double speed = 0.0;
    std::string observers;
    std::string wake;
    std::string observer_input;
    std::string plots = "on";
};

ScenarioConfig build_config(const Overrides& o) {
    ScenarioConfig c = o.config.empty() ? ScenarioConfig::by_name(o.scenario, o.speed > 0 ? o.speed : 200.0)
                                        : load_config(o.config);
    if (o.speed > 0 && !o.config.empty()) {
        std::vector<LeaderSegment> segs = c.leader.segments();
        for (auto& s : segs) s.V = o.speed;
        c.leader = LeaderProfile(segs, c.leader.ramp());
        c.speed = o.speed;
    }
    if (o.dt != 0.0) c.dt = o.dt;
    if (!o.observers.empty()) c.observers = on_off(o.observers);
    if (!o.wake.empty()) c.wake = on_off(o.wake);
    if (o.observer_input == "measured") c.outer.observer_input = ObserverInput::measured;
    if (o.observer_input == "commanded") c.outer.observer_input = ObserverInput::commanded;
    c.validate();
    return c;
}

int report_abort(const SimulationAbort& e, const fs::path& out) {
    std::cerr << "simulation aborted at t=" << e.time() << " s: " << e.what() << "\n";
    try {
        ensure_dir(out);
        const fs::path snap = out / "abort_snapshot.json";
        write_atomic(snap, e.snapshot().empty() ? std::string("{}") : e.snapshot());
        std::cerr << "snapshot: " << snap.string() << "\n";
    } catch (const std::exception& w) {
        std::cerr << "could not write snapshot: " << w.what() << "\n";
    }
    return kAbort;
}

struct PlotData {
    std::vector<double> t, x_e, y_e, z_e;
    std::vector<double> T, T_c, beta;
};

void write_plots(const fs::path& dir, const PlotData& p) {
    using tools::Series;
    const std::vector<double> bands{kBand5, kBand10};
    write_atomic(dir / "err_x.svg",
                 tools::svg_line_plot("Longitudinal tracking error x_e", "x_e (m)", p.t, {{"x_e", "#1f4e9c", p.x_e}},
                                      {}));
    write_atomic(dir / "err_y.svg", tools::svg_line_plot("Lateral tracking error y_e", "y_e (m)", p.t,
                                                         {{"y_e", "#1f4e9c", p.y_e}}, bands));
    write_atomic(dir / "err_z.svg", tools::svg_line_plot("Vertical tracking error z_e", "z_e (m)", p.t,
                                                         {{"z_e", "#1f4e9c", p.z_e}}, bands));
    write_atomic(dir / "thrust.svg", tools::svg_line_plot("Thrust", "N", p.t,
                                                          {{"T", "#1f4e9c", p.T}, {"T_c", "#c0392b", p.T_c}}, {}));
    write_atomic(dir / "beta.svg",
                 tools::svg_line_plot("Sideslip", "beta (deg)", p.t, {{"beta", "#1f4e9c", p.beta}}, {0.5}));
}

int cmd_run(const Overrides& o) {
    ScenarioConfig cfg;
    try {
        cfg = build_config(o);
        ensure_dir(o.out);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kBadConfig;
    }
    const fs::path out = o.out;
    const fs::path csv_tmp = out / "telemetry.csv.tmp";
    PlotData plot;
    RunResult res;
    try {
        std::ofstream csv(csv_tmp, std::ios::binary);
        if (!csv) throw ConfigError("cannot write " + csv_tmp.string());
        CsvTelemetryWriter writer(csv);
        const long decim = std::max(1L, std::lround(0.05 / cfg.dt));
        long k = 0;
        res = run_scenario(cfg, [&](const TelemetryRow& r) {
            writer.write(r);
            if (k++ % decim == 0) {
                plot.t.push_back(r.v[0]);
                plot.x_e.push_back(r.v[29]);
                plot.y_e.push_back(r.v[30]);
                plot.z_e.push_back(r.v[31]);
                plot.T.push_back(r.v[22]);
                plot.T_c.push_back(r.v[44]);
                plot.beta.push_back(r.v[18] / kDeg);
            }
        });
        csv.close();
        fs::rename(csv_tmp, out / "telemetry.csv");
    } catch (const SimulationAbort& e) {
        std::error_code ec;
        fs::remove(csv_tmp, ec);
        return report_abort(e, out);
    } catch (const Error& e) {
        std::error_code ec;
        fs::remove(csv_tmp, ec);
        std::cerr << "config error: " << e.what() << "\n";
        return kBadConfig;
    }

    auto j = nlohmann::ordered_json::parse(metrics_to_json(res.metrics));
    j["scenario"] = cfg.name;
    j["trim"] = {{"alpha_deg", res.trim.alpha / kDeg}, {"T", res.trim.T}, {"delta_e_deg", res.trim.delta_e / kDeg}};
    j["wake"] = {{"enabled", cfg.wake}, {"circulation", res.wake.circulation}, {"vortex_span", res.wake.vortex_span},
                 {"core_radius", res.wake.core_radius}};
    write_atomic(out / "metrics.json", j.dump(2) + "\n");
    if (on_off(o.plots)) write_plots(out, plot);

    std::printf("scenario %s  observers %s  wake %s  dt %.4g s\n", cfg.name.c_str(), cfg.observers ? "on" : "off",
                cfg.wake ? "on" : "off", cfg.dt);
    for (const auto& w : res.metrics.windows) {
        std::printf("  window [%6.1f, %6.1f]  max|x_e| %8.4f  max|y_e| %8.4f  max|z_e| %8.4f  mean T %9.1f N\n",
                    w.t0, w.t1, w.max_abs_x_e, w.max_abs_y_e, w.max_abs_z_e, w.mean_thrust);
    }
    std::printf("  max|beta| %.4f deg  10%% band violation: %s  wall %.2f s\n", res.metrics.max_abs_beta / kDeg,
                res.metrics.band10_violation ? "yes" : "no", res.metrics.wall_time);
    std::printf("  outputs in %s\n", out.string().c_str());
    return kOk;
}

unsigned thread_cap() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("VORTEXFORM_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
        } catch (const std::exception&) {
            std::cerr << "ignoring VORTEXFORM_THREADS='" << env << "'\n";
        }
    }
    return n;
}

int cmd_sweep(Overrides o, const std::vector<double>& speeds) {
    if (speeds.size() < 2) {
        std::cerr << "config error: sweep needs at least two speeds\n";
        return kBadConfig;
    }
    ScenarioConfig base;
    try {
        if (o.scenario == "s1") o.scenario = "s2";
        base = build_config(o);
        ensure_dir(o.out);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kBadConfig;
    }
    std::vector<SpeedResult> rs;
    try {
        rs = lateral_speed_study(base, speeds, thread_cap());
    } catch (const SimulationAbort& e) {
        return report_abort(e, o.out);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kBadConfig;
    }
    const fs::path out = o.out;
    nlohmann::ordered_json summary = nlohmann::ordered_json::array();
    std::printf("%8s %14s %14s %14s\n", "V (m/s)", "steady |y_e|", "steady |e_y|", "max|beta| deg");
    for (const auto& r : rs) {
        char sub[32];
        std::snprintf(sub, sizeof sub, "V%g", r.V);
        ensure_dir(out / sub);
        write_atomic(out / sub / "metrics.json", metrics_to_json(r.metrics) + "\n");
        summary.push_back({{"V", r.V}, {"steady_abs_y_e", r.steady_y}, {"steady_abs_e_y", r.steady_e_y},
                           {"max_abs_beta_deg", r.metrics.max_abs_beta / kDeg}});
        std::printf("%8.1f %14.6g %14.6g %14.4f\n", r.V, r.steady_y, r.steady_e_y, r.metrics.max_abs_beta / kDeg);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < rs.size(); ++i) monotone = monotone && rs[i].steady_y < rs[i - 1].steady_y;
    nlohmann::ordered_json j;
    j["speeds"] = summary;
    j["monotone_decreasing"] = monotone;
    write_atomic(out / "summary.json", j.dump(2) + "\n");
    std::printf("steady |y_e| strictly decreasing: %s\n", monotone ? "yes" : "no");
    return kOk;
}

int cmd_selftest(const Overrides& o) {
    OuterGains og;
    InnerGains ig;
    double dt = 0.002;
    try {
        if (!o.config.empty()) {
            const ScenarioConfig c = load_config(o.config);
            og = c.outer;
            ig = c.inner;
            dt = c.dt;
        }
        if (o.dt != 0.0) dt = o.dt;
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kBadConfig;
    }
    SelftestReport r;
    try {
        r = run_selftest(og, ig, dt);
    } catch (const Error& e) {
        std::cerr << "selftest error: " << e.what() << "\n";
        return kSelftestFail;
    }
    r.print(std::cout);
    std::cout << (r.pass() ? "selftest: all checks passed\n" : "selftest: FAILED\n");
    return r.pass() ? kOk : kSelftestFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Close-formation flight controller simulation"};
    app.require_subcommand(1);
    Overrides o;
    std::vector<double> speeds;

    auto common = [&](CLI::App* sc) {
        sc->add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
        sc->add_option("--dt", o.dt, "integration step (s)");
        sc->add_option("--out", o.out, "output directory");
    };
    auto scenario_opts = [&](CLI::App* sc) {
        sc->add_option("--scenario", o.scenario, "s1, s2 or nominal")
            ->check(CLI::IsMember({"s1", "s2", "nominal"}));
        sc->add_option("--observers", o.observers, "on|off")->check(CLI::IsMember({"on", "off"}));
        sc->add_option("--wake", o.wake, "on|off")->check(CLI::IsMember({"on", "off"}));
        sc->add_option("--observer-input", o.observer_input, "commanded|measured")
            ->check(CLI::IsMember({"commanded", "measured"}));
    };

    CLI::App* run = app.add_subcommand("run", "run one scenario");
    common(run);
    scenario_opts(run);
    run->add_option("--speed", o.speed, "leader and follower speed (m/s)");
    run->add_option("--plots", o.plots, "on|off")->check(CLI::IsMember({"on", "off"}));

    CLI::App* sweep = app.add_subcommand("sweep", "scenario-2 speed sweep");
    common(sweep);
    scenario_opts(sweep);
    sweep->add_option("--speeds", speeds, "comma separated speeds (m/s)")->delimiter(',')->required();

    CLI::App* self = app.add_subcommand("selftest", "analytic oracle checks and gain audits");
    common(self);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kBadConfig;
    }
    if (*run) return cmd_run(o);
    if (*sweep) return cmd_sweep(o, speeds);
    return cmd_selftest(o);
}
