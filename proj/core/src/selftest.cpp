#include "vortexform/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "vortexform/filters.hpp"
#include "vortexform/sim.hpp"

namespace vortexform {

namespace {

std::string fmt(const char* f, double a, double b) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// First time |d_tilde| falls below e^-1 of its start, linear interpolation between ticks.
double efold_time(const Vec3& T, int ch, double d, double dt) {
    LambdaObserver3 obs(T);
    Vec3 x(1.0, -2.0, 0.5);
    const Vec3 f(0.4, -0.3, 0.2);
    const Vec3 dv = Vec3::Constant(d);
    obs.init(x);
    double prev = d, t = 0.0;
    const double target = d * std::exp(-1.0);
    for (int k = 0; k < 1000000; ++k) {
        x += dt * (f + dv);
        const double now = d - obs.step(x, f, dt)[ch];
        if (now <= target) return t + dt * (prev - target) / (prev - now);
        prev = now;
        t += dt;
    }
    return -1.0;
}

double ramp_lag(double omega, double dt) {
    CommandFilter2 f(omega, 1.0, 0.0);
    const double t_end = 40.0 / omega;
    double t = 0.0;
    while (t < t_end) {
        f.step(t, dt);
        t += dt;
    }
    return t - f.value();
}

using Vec6 = Eigen::Matrix<double, 6, 1>;

Vec6 attitude_rhs(const Vec6& s) {
    static const Mat3 I = AircraftParams{}.inertia();
    static const Mat3 I_inv = I.inverse();
    const double gamma = 0.05;
    const Vec2 psi_dot(0.02, 0.05);
    const AttitudeMatrices m = attitude_matrices(s[1], s[2], s[0], gamma);
    const Vec3 Th = s.head<3>();
    const Vec3 W = s.tail<3>();
    const Vec3 target(0.0, 0.05, 0.0);
    Vec6 d;
    d.head<3>() = m.G * W + m.H * psi_dot;
    d.tail<3>() = -2.0 * W - 4.0 * (Th - target) - I_inv * W.cross(I * W);
    return d;
}

Vec6 integrate_attitude(double dt, double t_end) {
    Vec6 s;
    s << 0.3, 0.1, 0.05, 0.2, -0.1, 0.1;
    const long n = std::lround(t_end / dt);
    auto f = [](const Vec6& x, double) { return attitude_rhs(x); };
    for (long k = 0; k < n; ++k) s = rk4_step(f, s, dt);
    return s;
}

}  // namespace

std::vector<CheckItem> disturbance_bound_suite() {
    std::vector<CheckItem> out;
    for (double T : {0.05, 0.1, 0.25}) {
        for (double A : {0.5, 1.0, 2.0}) {
            for (double w : {1.0, 4.0, 10.0}) {
                const double dt = T / 50.0;
                const double t_end = std::max(10.0 * T, 4.0 * 2.0 * kPi / w);
                FirstOrderDO obs(T, 0.0);
                obs.prime(0.0);
                double sup = 0.0;
                for (double t = dt; t <= t_end; t += dt) {
                    const double d = A * std::sin(w * t);
                    sup = std::max(sup, std::abs(d - obs.step(d, dt)));
                }
                const double bound = std::max(0.0, T * A * w);
                char name[64];
                std::snprintf(name, sizeof name, "T=%.2f A=%.1f w=%.0f", T, A, w);
                out.push_back({"dob_bound", name, sup, bound, sup <= bound});
            }
        }
    }
    return out;
}

std::vector<CheckItem> observer_efold_suite(const OuterGains& og, const InnerGains& ig) {
    struct Inst {
        const char* name;
        Vec3 T;
    };
    const Inst insts[] = {{"wake", {og.T_Wx, og.T_Wy, og.T_Wz}},
                          {"outer", {og.T_V, og.T_gamma, og.T_chi}},
                          {"attitude", {ig.T_mu, ig.T_alpha, ig.T_beta}},
                          {"rate", {ig.T_p, ig.T_q, ig.T_r}}};
    std::vector<CheckItem> out;
    for (const auto& in : insts) {
        const double dt = std::min(0.002, in.T.minCoeff() / 100.0);
        for (int ch = 0; ch < 3; ++ch) {
            const double te = efold_time(in.T, ch, 1.0, dt);
            const double rel = std::abs(te / in.T[ch] - 1.0);
            out.push_back({"observer", std::string(in.name) + fmt(" ch%.0f T=%.3g", static_cast<double>(ch), in.T[ch]), rel, 0.02,
                           te > 0.0 && rel <= 0.02});
        }
    }
    return out;
}

std::vector<CheckItem> filter_order_suite() {
    std::vector<CheckItem> out;
    const double dt = 1e-4;
    for (double w : {5.0, 8.0, 25.0}) {
        const double ratio = ramp_lag(w, dt) / ramp_lag(2.0 * w, dt);
        out.push_back({"filter", fmt("ramp lag ratio w=%.0f/%.0f", w, 2.0 * w), ratio, 2.0,
                       ratio >= 1.8 && ratio <= 2.2});
    }
    return out;
}

CheckItem rk4_order_check() {
    const double t_end = 2.0;
    const Vec6 ref = integrate_attitude(0.04 / 32.0, t_end);
    const double e1 = (integrate_attitude(0.04, t_end) - ref).norm();
    const double e2 = (integrate_attitude(0.02, t_end) - ref).norm();
    const double ratio = e1 / e2;
    return {"rk4", "global error ratio dt=0.04/0.02", ratio, 16.0, ratio >= 12.0 && ratio <= 20.0};
}

std::vector<CheckItem> matrix_checks() {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ang(-30.0 * kDeg, 30.0 * kDeg);
    double worst_inv = 0.0, worst_det = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double a = ang(rng), b = ang(rng), mu = ang(rng), g = ang(rng);
        const AttitudeMatrices m = attitude_matrices(a, b, mu, g);
        worst_inv = std::max(worst_inv, (m.G * m.G_inv - Mat3::Identity()).cwiseAbs().maxCoeff());
        worst_det = std::max(worst_det, std::abs(std::abs(m.G.determinant()) - 1.0 / std::cos(b)));
    }
    return {{"matrices", "max |G G^-1 - I|", worst_inv, 1e-12, worst_inv <= 1e-12},
            {"matrices", "max ||det G| - sec beta|", worst_det, 1e-12, worst_det <= 1e-12}};
}

std::vector<CheckItem> gain_audits(const OuterGains& og, const InnerGains& ig, double dt) {
    std::vector<CheckItem> out;
    for (const auto& a : audit_outer_gains(og)) out.push_back({"audit.outer", a.name, a.value, a.bound, a.pass});
    for (const auto& a : audit_inner_gains(ig, dt)) out.push_back({"audit.inner", a.name, a.value, a.bound, a.pass});
    return out;
}

bool SelftestReport::pass() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
}

void SelftestReport::print(std::ostream& os) const {
    char buf[256];
    for (const auto& c : items) {
        std::snprintf(buf, sizeof buf, "%-4s %-12s %-44s measured=%-12.6g bound=%.6g\n", c.pass ? "PASS" : "FAIL",
                      c.group.c_str(), c.name.c_str(), c.measured, c.bound);
        os << buf;
    }
}

SelftestReport run_selftest(const OuterGains& og, const InnerGains& ig, double dt) {
    SelftestReport r;
    auto add = [&](std::vector<CheckItem> v) { r.items.insert(r.items.end(), v.begin(), v.end()); };
    add(gain_audits(og, ig, dt));
    add(disturbance_bound_suite());
    add(observer_efold_suite(og, ig));
    add(filter_order_suite());
    r.items.push_back(rk4_order_check());
    add(matrix_checks());
    return r;
}

}  // namespace vortexform
