#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <string>

#include "vortexform/errors.hpp"

namespace vortexform {

// s_c'' = -w^2 (s_c - input) - 2 z w s_c'. Input is held over a step.
class CommandFilter2 {
public:
    CommandFilter2() = default;
    CommandFilter2(double omega, double zeta, double s0);

    void reset(double s0);
    void step(double input, double dt);

    double value() const { return s_c_; }
    double rate() const { return s_c_dot_; }
    double omega() const { return omega_; }
    double zeta() const { return zeta_; }

private:
    double omega_ = 1.0;
    double zeta_ = 1.0;
    double s_c_ = 0.0;
    double s_c_dot_ = 0.0;
};

struct FilterOutput {
    double s_c;
    double s_c_dot;
};

CommandFilter2 cf2_init(double omega, double zeta, double s0);
FilterOutput cf2_step(CommandFilter2& f, double input, double dt);

// T dhat' = -dhat + d. The measured signal is linearly interpolated between
// the previous sample and the current one across the step.
class FirstOrderDO {
public:
    FirstOrderDO() = default;
    explicit FirstOrderDO(double time_const, double d_hat0 = 0.0);

    void prime(double d0);
    double step(double d_measured, double dt);

    double d_hat() const { return d_hat_; }
    double time_const() const { return time_const_; }

private:
    double time_const_ = 1.0;
    double d_hat_ = 0.0;
    double last_d_ = 0.0;
    bool primed_ = false;
};

double fo_do_step(FirstOrderDO& f, double d_measured, double dt);

// d_hat = lam + T^-1 x,  lam' = -T^-1 (lam + T^-1 x + f_known).
// x is linearly interpolated between the previous and current samples across the
// step and f_known is held, so a plant x' = f_known + d gives d_tilde' = -d_tilde/T.
template <int N>
class LambdaObserver {
public:
    using Vec = Eigen::Matrix<double, N, 1>;

    LambdaObserver() = default;
    explicit LambdaObserver(const Vec& time_consts) { set_time_consts(time_consts); }

    void set_time_consts(const Vec& tc) {
        for (Eigen::Index i = 0; i < tc.size(); ++i) {
            if (!(tc[i] > 0.0)) throw InvalidArgument("LambdaObserver: time constants must be positive");
        }
        inv_ = tc.cwiseInverse();
        tc_ = tc;
        lam_ = Vec::Zero(tc.size());
        x_prev_ = Vec::Zero(tc.size());
        d_hat_ = Vec::Zero(tc.size());
    }

    void init(const Vec& x0) {
        check_dim(x0, "init");
        lam_ = -inv_.cwiseProduct(x0);
        x_prev_ = x0;
        d_hat_ = Vec::Zero(x0.size());
    }

    const Vec& step(const Vec& x, const Vec& f_known, double dt) {
        check_dim(x, "step");
        check_dim(f_known, "step");
        if (!(dt > 0.0) || dt >= tc_.minCoeff()) {
            throw ConfigError("LambdaObserver: dt must be positive and below the smallest time constant");
        }
        const Vec dx = x - x_prev_;
        auto rhs = [&](const Vec& lam, double frac) -> Vec {
            const Vec xi = x_prev_ + frac * dx;
            return -inv_.cwiseProduct(lam + inv_.cwiseProduct(xi) + f_known);
        };
        const Vec k1 = rhs(lam_, 0.0);
        const Vec k2 = rhs(lam_ + 0.5 * dt * k1, 0.5);
        const Vec k3 = rhs(lam_ + 0.5 * dt * k2, 0.5);
        const Vec k4 = rhs(lam_ + dt * k3, 1.0);
        lam_ += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x_prev_ = x;
        d_hat_ = lam_ + inv_.cwiseProduct(x);
        return d_hat_;
    }

    const Vec& d_hat() const { return d_hat_; }
    const Vec& lam() const { return lam_; }
    const Vec& time_consts() const { return tc_; }

private:
    void check_dim(const Vec& v, const char* where) const {
        if (v.size() != tc_.size()) {
            throw InvalidArgument(std::string("LambdaObserver::") + where + ": dimension mismatch");
        }
    }

    Vec tc_;
    Vec inv_;
    Vec lam_;
    Vec x_prev_;
    Vec d_hat_;
};

using LambdaObserver3 = LambdaObserver<3>;
using LambdaObserverX = LambdaObserver<Eigen::Dynamic>;

template <int N>
void lambda_do_init(LambdaObserver<N>& obs, const typename LambdaObserver<N>::Vec& x0) {
    obs.init(x0);
}

template <int N>
typename LambdaObserver<N>::Vec lambda_do_step(LambdaObserver<N>& obs,
                                               const typename LambdaObserver<N>::Vec& x,
                                               const typename LambdaObserver<N>::Vec& f_known, double dt) {
    return obs.step(x, f_known, dt);
}

}  // namespace vortexform
