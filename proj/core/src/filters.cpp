#include "vortexform/filters.hpp"

#include <cmath>

namespace vortexform {

CommandFilter2::CommandFilter2(double omega, double zeta, double s0) : omega_(omega), zeta_(zeta) {
    if (!(omega > 0.0) || !(zeta > 0.0)) {
        throw InvalidArgument("CommandFilter2: omega and zeta must be positive");
    }
    reset(s0);
}

void CommandFilter2::reset(double s0) {
    s_c_ = s0;
    s_c_dot_ = 0.0;
}

void CommandFilter2::step(double input, double dt) {
    if (!(dt > 0.0) || dt * omega_ >= 0.5) {
        throw ConfigError("CommandFilter2: dt*omega must be in (0, 0.5)");
    }
    const double w2 = omega_ * omega_;
    const double c = 2.0 * zeta_ * omega_;
    auto acc = [&](double s, double sd) { return -w2 * (s - input) - c * sd; };

    const double s = s_c_, v = s_c_dot_;
    const double k1s = v, k1v = acc(s, v);
    const double k2s = v + 0.5 * dt * k1v, k2v = acc(s + 0.5 * dt * k1s, v + 0.5 * dt * k1v);
    const double k3s = v + 0.5 * dt * k2v, k3v = acc(s + 0.5 * dt * k2s, v + 0.5 * dt * k2v);
    const double k4s = v + dt * k3v, k4v = acc(s + dt * k3s, v + dt * k3v);
    s_c_ = s + dt / 6.0 * (k1s + 2 * k2s + 2 * k3s + k4s);
    s_c_dot_ = v + dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (!std::isfinite(s_c_) || !std::isfinite(s_c_dot_)) {
        throw SimulationAbort("CommandFilter2: non-finite state");
    }
}

CommandFilter2 cf2_init(double omega, double zeta, double s0) {
    return CommandFilter2(omega, zeta, s0);
}

FilterOutput cf2_step(CommandFilter2& f, double input, double dt) {
    f.step(input, dt);
    return {f.value(), f.rate()};
}

FirstOrderDO::FirstOrderDO(double time_const, double d_hat0) : time_const_(time_const), d_hat_(d_hat0) {
    if (!(time_const > 0.0)) throw InvalidArgument("FirstOrderDO: time constant must be positive");
}

void FirstOrderDO::prime(double d0) {
    last_d_ = d0;
    primed_ = true;
}

double FirstOrderDO::step(double d_measured, double dt) {
    if (!(dt > 0.0) || dt >= time_const_) {
        throw ConfigError("FirstOrderDO: dt must be positive and below the time constant");
    }
    const double d0 = primed_ ? last_d_ : d_measured;
    const double dd = d_measured - d0;
    auto rhs = [&](double dh, double frac) { return (-dh + d0 + frac * dd) / time_const_; };
    const double k1 = rhs(d_hat_, 0.0);
    const double k2 = rhs(d_hat_ + 0.5 * dt * k1, 0.5);
    const double k3 = rhs(d_hat_ + 0.5 * dt * k2, 0.5);
    const double k4 = rhs(d_hat_ + dt * k3, 1.0);
    d_hat_ += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    last_d_ = d_measured;
    primed_ = true;
    return d_hat_;
}

double fo_do_step(FirstOrderDO& f, double d_measured, double dt) {
    return f.step(d_measured, dt);
}

}  // namespace vortexform
