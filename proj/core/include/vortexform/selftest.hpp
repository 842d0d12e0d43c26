#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "vortexform/inner_loop.hpp"
#include "vortexform/outer_loop.hpp"

namespace vortexform {

struct CheckItem {
    std::string group;
    std::string name;
    double measured = 0;
    double bound = 0;
    bool pass = false;
};

// First-order DO against d = A sin(w t): sup|d_tilde| <= max(|d(0)|, T A w).
std::vector<CheckItem> disturbance_bound_suite();

// Constant disturbance: d_tilde e-fold time against T for the wake, outer, attitude and rate observers.
std::vector<CheckItem> observer_efold_suite(const OuterGains& og, const InnerGains& ig);

// Ramp-following lag of the second-order command filter: ratio e(w)/e(2w) for w in {5, 8, 25}.
std::vector<CheckItem> filter_order_suite();

// Global error ratio under dt halving on the attitude kinematics plus rigid-body rates.
CheckItem rk4_order_check();

// G G^-1 = I and |det G| = sec(beta) on seeded random angles.
std::vector<CheckItem> matrix_checks();

std::vector<CheckItem> gain_audits(const OuterGains& og, const InnerGains& ig, double dt);

struct SelftestReport {
    std::vector<CheckItem> items;
    bool pass() const;
    void print(std::ostream& os) const;
};

SelftestReport run_selftest(const OuterGains& og = {}, const InnerGains& ig = {}, double dt = 0.002);

}  // namespace vortexform
