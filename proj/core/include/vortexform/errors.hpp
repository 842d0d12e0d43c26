#pragma once

#include <stdexcept>
#include <string>

namespace vortexform {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Bad parameter/gain/step-size combination detected before or during a run.
class ConfigError : public Error {
public:
    using Error::Error;
};

class TrimError : public Error {
public:
    using Error::Error;
};

// Carries the simulation time and a JSON snapshot of the state at the abort.
class SimulationAbort : public Error {
public:
    SimulationAbort(const std::string& what, double t = 0.0, std::string snapshot = {})
        : Error(what), time_(t), snapshot_(std::move(snapshot)) {}
    double time() const { return time_; }
    const std::string& snapshot() const { return snapshot_; }
    void set_context(double t, std::string snap) {
        time_ = t;
        snapshot_ = std::move(snap);
    }

private:
    double time_;
    std::string snapshot_;
};

}  // namespace vortexform
