// Velocity command generation: split a desired string velocity between the
// twist and winch channels, then convert each share into an effective
// angular rate.
#pragma once

#include <optional>

#include "tsw/actuator_core.hpp"

namespace tsw {

struct VelocityAllocation {
    double x_dot_theta = 0.0;  // twist share [m/s]
    double x_dot_phi = 0.0;    // winch share [m/s]
};

struct AllocationPolicy {
    enum class Mode { WinchOnly, TwistOnly, WinchThenTwist, Proportional };

    Mode mode = Mode::WinchThenTwist;
    double switch_contraction = 0.05;  // [m], WinchThenTwist
    double twist_fraction = 0.5;       // Proportional

    static AllocationPolicy winch_only() { return {Mode::WinchOnly}; }
    static AllocationPolicy twist_only() { return {Mode::TwistOnly}; }
    static AllocationPolicy winch_then_twist(double switch_at) { return {Mode::WinchThenTwist, switch_at}; }
    static AllocationPolicy proportional(double fraction) { return {Mode::Proportional, 0.05, fraction}; }

    void validate() const;
    bool operator==(const AllocationPolicy &) const = default;
};

const char *to_string(AllocationPolicy::Mode mode);

enum class SingularityMode { Error, Saturate };

struct TwistCommandOptions {
    double theta_min = 1.0;        // [rad] below this the twist law is not evaluated
    double theta_dot_max = 100.0;  // [rad/s]
    SingularityMode on_singularity = SingularityMode::Error;

    void validate() const;
    bool operator==(const TwistCommandOptions &) const = default;
};

struct TwistCommand {
    double theta_dot_eff = 0.0;
    bool saturated = false;
};

struct VelocityCommand {
    double theta_dot_eff = 0.0;
    double phi_dot_eff = 0.0;
    bool saturated = false;
};

/// Shares always sum to x_dot_des exactly.
VelocityAllocation allocate(double x_dot_des, const AllocationPolicy &policy, const ActuatorState &state);

/// Twist rate producing contraction rate x_dot_theta at the given state.
///
/// r_dot is the rate of change of the variable radius. Commands beyond
/// theta_dot_max are clamped and flagged; at theta_eff <= theta_min the law
/// divides by a vanishing twist and either throws SingularityError or returns
/// a saturated command, depending on opts.on_singularity.
TwistCommand twist_velocity_command(double x_dot_theta, const ActuatorState &state, double r_dot,
                                    const TwistCommandOptions &opts = {});

/// phi_dot = x_dot_phi / r_w
double winch_velocity_command(double x_dot_phi, double winch_radius);

/// Backward difference of the variable radius; zero without a previous state.
double r_var_rate(const std::optional<ActuatorState> &prev, const ActuatorState &curr, double dt);

/// Allocation followed by both channel laws. An idle twist share yields a
/// zero twist rate; WinchThenTwist falls back to the winch while the twist is
/// still below theta_min.
VelocityCommand command_velocity(double x_dot_des, const AllocationPolicy &policy, const ActuatorState &state,
                                 double r_dot, double winch_radius, const TwistCommandOptions &opts = {});

} // namespace tsw
