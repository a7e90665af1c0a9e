#include "tsw/velocity_control.hpp"

#include <cmath>
#include <string>

namespace tsw {

void AllocationPolicy::validate() const {
    if (!std::isfinite(switch_contraction) || switch_contraction < 0.0)
        throw ValidationError("switch_contraction must be >= 0");
    if (!std::isfinite(twist_fraction) || twist_fraction < 0.0 || twist_fraction > 1.0)
        throw ValidationError("twist_fraction out of range [0, 1]");
}

const char *to_string(AllocationPolicy::Mode mode) {
    switch (mode) {
    case AllocationPolicy::Mode::WinchOnly: return "winch_only";
    case AllocationPolicy::Mode::TwistOnly: return "twist_only";
    case AllocationPolicy::Mode::WinchThenTwist: return "winch_then_twist";
    case AllocationPolicy::Mode::Proportional: return "proportional";
    }
    return "unknown";
}

void TwistCommandOptions::validate() const {
    if (!std::isfinite(theta_min) || theta_min <= 0.0) throw ValidationError("theta_min must be > 0");
    if (!std::isfinite(theta_dot_max) || theta_dot_max <= 0.0) throw ValidationError("theta_dot_max must be > 0");
}

VelocityAllocation allocate(double x_dot_des, const AllocationPolicy &policy, const ActuatorState &state) {
    using Mode = AllocationPolicy::Mode;
    switch (policy.mode) {
    case Mode::WinchOnly: return {0.0, x_dot_des};
    case Mode::TwistOnly: return {x_dot_des, 0.0};
    case Mode::WinchThenTwist:
        if (state.total_contraction < policy.switch_contraction) return {0.0, x_dot_des};
        return {x_dot_des, 0.0};
    case Mode::Proportional: {
        // Form the larger share by multiplication; the other is then an exact
        // (Sterbenz) difference and the two add back to x_dot_des bit for bit.
        const double f = policy.twist_fraction;
        if (f >= 0.5) {
            const double twist = f * x_dot_des;
            return {twist, x_dot_des - twist};
        }
        const double winch = (1.0 - f) * x_dot_des;
        return {x_dot_des - winch, winch};
    }
    }
    return {0.0, x_dot_des};
}

TwistCommand twist_velocity_command(double x_dot_theta, const ActuatorState &state, double r_dot,
                                    const TwistCommandOptions &opts) {
    const double theta = state.theta_eff;
    const double r = state.variable_radius;
    const double lc = state.contracted_length;
    if (!std::isfinite(x_dot_theta) || !std::isfinite(r_dot)) throw DomainError("non-finite velocity input");
    if (!(lc > 0.0) || !(r > 0.0) || !std::isfinite(theta))
        throw DomainError("invalid actuator state for twist command");

    if (!(theta > opts.theta_min)) {
        if (opts.on_singularity == SingularityMode::Error)
            throw SingularityError("twist law singular: theta_eff = " + std::to_string(theta) +
                                   " rad <= theta_min = " + std::to_string(opts.theta_min) + " rad");
        const double cmd = x_dot_theta == 0.0 ? 0.0 : std::copysign(opts.theta_dot_max, x_dot_theta);
        return {cmd, true};
    }
    const double arg = lc * lc - theta * theta * r * r;
    if (!(arg > 0.0)) throw DomainError("overtwist: theta_eff * r_var >= L_c");

    double cmd = x_dot_theta * std::sqrt(arg) / (theta * r * r) - theta * r_dot / r;
    if (std::abs(cmd) > opts.theta_dot_max) return {std::copysign(opts.theta_dot_max, cmd), true};
    return {cmd, false};
}

double winch_velocity_command(double x_dot_phi, double winch_radius) {
    if (!std::isfinite(winch_radius) || winch_radius <= 0.0) throw ValidationError("winch_radius must be > 0");
    return x_dot_phi / winch_radius;
}

double r_var_rate(const std::optional<ActuatorState> &prev, const ActuatorState &curr, double dt) {
    if (!std::isfinite(dt) || dt <= 0.0) throw ValidationError("dt must be > 0");
    if (!prev) return 0.0;
    return (curr.variable_radius - prev->variable_radius) / dt;
}

VelocityCommand command_velocity(double x_dot_des, const AllocationPolicy &policy, const ActuatorState &state,
                                 double r_dot, double winch_radius, const TwistCommandOptions &opts) {
    VelocityAllocation share = allocate(x_dot_des, policy, state);
    if (policy.mode == AllocationPolicy::Mode::WinchThenTwist && share.x_dot_theta != 0.0 &&
        !(state.theta_eff > opts.theta_min))
        share = {0.0, x_dot_des};

    VelocityCommand out;
    out.phi_dot_eff = winch_velocity_command(share.x_dot_phi, winch_radius);
    if (share.x_dot_theta != 0.0) {
        const TwistCommand twist = twist_velocity_command(share.x_dot_theta, state, r_dot, opts);
        out.theta_dot_eff = twist.theta_dot_eff;
        out.saturated = twist.saturated;
    }
    return out;
}

} // namespace tsw
