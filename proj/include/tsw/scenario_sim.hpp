// Discrete-time scenario runner.
//
// Effective angles are integrated with explicit Euler; every step re-solves
// the (algebraic) displacement model, so integration error only shapes the
// commanded trajectory and never the consistency of a sample.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsw/actuator_core.hpp"
#include "tsw/force_model.hpp"
#include "tsw/gear_train.hpp"
#include "tsw/velocity_control.hpp"

namespace tsw {

struct Phase {
    enum class Kind { Rates, Velocity, Hold };

    Kind kind = Kind::Hold;
    double duration = 0.0;     // [s]
    EffectiveRates rates;      // Kind::Rates
    double x_dot_des = 0.0;    // Kind::Velocity [m/s]

    static Phase hold(double duration) { return {Kind::Hold, duration, {}, 0.0}; }
    static Phase with_rates(double duration, double phi_dot, double theta_dot) {
        return {Kind::Rates, duration, {phi_dot, theta_dot}, 0.0};
    }
    static Phase with_velocity(double duration, double x_dot) { return {Kind::Velocity, duration, {}, x_dot}; }

    bool operator==(const Phase &) const = default;
};

const char *to_string(Phase::Kind kind);

/// Displacement: free end pulling a load. FixedEnd: end clamped, report force.
enum class ScenarioMode { Displacement, FixedEnd };

struct Scenario {
    StringParams params;
    WinchGeometry winch;
    GearTrain train;
    LoadCondition load;
    AllocationPolicy policy;
    TwistCommandOptions twist;
    SolverOptions solver;
    std::vector<Phase> phases;
    double dt = 1e-3;  // [s]
    double initial_theta = 0.0;
    double initial_phi = 0.0;
    ScenarioMode mode = ScenarioMode::Displacement;
    WinchTorque winch_torque;  // FixedEnd only
    bool record_ratios = true;

    void validate() const;
    bool operator==(const Scenario &) const = default;
};

struct TransmissionRatio {
    double twist = 0.0;          // dX_total/dtheta_eff [m/rad]
    double winch = 0.0;          // dX_total/dphi_eff with twist held at zero [m/rad]
    double winch_coupled = 0.0;  // dX_total/dphi_eff at the actual twist [m/rad]
};

struct TraceSample {
    double t = 0.0;
    double theta_eff = 0.0;
    double phi_eff = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double total_contraction = 0.0;  // [m]
    double x_dot = 0.0;              // [m/s]
    std::optional<double> f_total;   // FixedEnd only
    std::optional<TransmissionRatio> ratio;
    bool saturated = false;
};

struct RunFailure {
    ErrorKind kind = ErrorKind::Domain;
    std::string message;
    double t = 0.0;
};

struct RunResult {
    std::vector<TraceSample> samples;
    std::optional<RunFailure> failure;

    bool ok() const noexcept { return !failure.has_value(); }
};

/// Finite-difference transmission ratios (step 1e-4 rad, central where the
/// domain allows, one-sided at its edges).
TransmissionRatio transmission_ratio(const StringParams &params, const WinchGeometry &winch,
                                     const LoadCondition &load, const ActuatorState &state,
                                     const SolverOptions &opts = {});

/// Runs the timeline. Model failures (overtwist, non-convergence, singular
/// twist command) stop the run and are reported alongside the partial trace.
/// Throws ValidationError for an invalid scenario.
RunResult run(const Scenario &scenario);

enum class SweepChannel { Twist, Winch };

const char *to_string(SweepChannel channel);

struct SweepPoint {
    SweepChannel channel = SweepChannel::Twist;
    double rate = 0.0;   // commanded effective rate [rad/s]
    double x_dot = 0.0;  // model string velocity [m/s]
    std::optional<RunFailure> failure;
};

/// One constant-rate probe on one channel, starting from the base
/// scenario's initial angles; velocity is the trace displacement over the
/// probe duration.
SweepPoint velocity_probe(const Scenario &base, SweepChannel channel, double rate, double duration);

} // namespace tsw
