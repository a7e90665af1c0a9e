#include "tsw/scenario_sim.hpp"

#include <algorithm>
#include <cmath>

namespace tsw {
namespace {

constexpr double kRatioStep = 1e-4;  // [rad]

template <typename F>
double finite_difference(F &&f, double x, double h) {
    const std::optional<double> fp = f(x + h);
    const std::optional<double> fm = f(x - h);
    if (fp && fm) return (*fp - *fm) / (2.0 * h);
    const std::optional<double> f0 = f(x);
    if (f0 && fp) return (*fp - *f0) / h;
    if (f0 && fm) return (*f0 - *fm) / h;
    throw DomainError("no valid finite-difference stencil at " + std::to_string(x) + " rad");
}

bool is_model_failure(ErrorKind kind) {
    return kind == ErrorKind::Domain || kind == ErrorKind::Convergence || kind == ErrorKind::Singularity;
}

long long step_count(double duration, double dt) { return std::max(1LL, std::llround(duration / dt)); }

} // namespace

const char *to_string(Phase::Kind kind) {
    switch (kind) {
    case Phase::Kind::Rates: return "rates";
    case Phase::Kind::Velocity: return "velocity";
    case Phase::Kind::Hold: return "hold";
    }
    return "unknown";
}

const char *to_string(SweepChannel channel) { return channel == SweepChannel::Twist ? "twist" : "winch"; }

void Scenario::validate() const {
    params.validate();
    winch.validate();
    train.validate();
    load.validate();
    policy.validate();
    twist.validate();
    if (!std::isfinite(dt) || dt <= 0.0) throw ValidationError("dt must be > 0");
    if (phases.empty()) throw ValidationError("scenario needs at least one phase");
    for (const Phase &p : phases) {
        if (!std::isfinite(p.duration) || p.duration <= 0.0) throw ValidationError("phase duration must be > 0");
        if (!std::isfinite(p.rates.phi_dot_eff) || !std::isfinite(p.rates.theta_dot_eff) ||
            !std::isfinite(p.x_dot_des))
            throw ValidationError("phase rates must be finite");
        if (mode == ScenarioMode::FixedEnd && p.kind == Phase::Kind::Velocity)
            throw ValidationError("velocity phases need a free string end");
    }
    if (!std::isfinite(initial_theta) || !std::isfinite(initial_phi))
        throw ValidationError("initial angles must be finite");
    if (!std::isfinite(winch_torque.tau_w) || winch_torque.tau_w < 0.0)
        throw ValidationError("winch_torque must be >= 0");
}

TransmissionRatio transmission_ratio(const StringParams &params, const WinchGeometry &winch,
                                     const LoadCondition &load, const ActuatorState &state,
                                     const SolverOptions &opts) {
    auto contraction = [&](double theta, double phi) -> std::optional<double> {
        try {
            return solve_total_contraction(params, winch, load, theta, phi, opts).total_contraction;
        } catch (const DomainError &) {
            return std::nullopt;
        }
    };
    TransmissionRatio out;
    out.twist = finite_difference([&](double th) { return contraction(th, state.phi_eff); }, state.theta_eff,
                                  kRatioStep);
    out.winch = finite_difference([&](double ph) { return contraction(0.0, ph); }, state.phi_eff, kRatioStep);
    out.winch_coupled = finite_difference([&](double ph) { return contraction(state.theta_eff, ph); },
                                          state.phi_eff, kRatioStep);
    return out;
}

RunResult run(const Scenario &sc) {
    sc.validate();

    RunResult result;
    double theta = sc.initial_theta;
    double phi = sc.initial_phi;
    long long step = 0;
    std::optional<ActuatorState> prev;
    ActuatorState state;
    double last_dx = 0.0;

    auto sample_at = [&](bool saturated) {
        TraceSample s;
        s.t = static_cast<double>(step) * sc.dt;
        s.theta_eff = theta;
        s.phi_eff = phi;
        const MotorAngles motors = motor_angles({phi, theta}, sc.train);
        s.theta1 = motors.theta1;
        s.theta2 = motors.theta2;
        s.saturated = saturated;
        if (sc.mode == ScenarioMode::Displacement) {
            state = solve_total_contraction(sc.params, sc.winch, sc.load, theta, phi, sc.solver);
            s.total_contraction = state.total_contraction;
            if (sc.record_ratios) s.ratio = transmission_ratio(sc.params, sc.winch, sc.load, state, sc.solver);
        } else {
            const double held = loaded_length(sc.params, sc.load, phi, sc.winch.winch_radius);
            s.f_total = total_force(twist_force(sc.params, held, theta), winch_force(sc.winch_torque, sc.winch));
        }
        s.x_dot = step == 0 ? 0.0 : (s.total_contraction - last_dx) / sc.dt;
        last_dx = s.total_contraction;
        result.samples.push_back(s);
    };

    try {
        sample_at(false);
        for (const Phase &phase : sc.phases) {
            const long long n = step_count(phase.duration, sc.dt);
            for (long long i = 0; i < n; ++i) {
                EffectiveRates rates;
                bool saturated = false;
                switch (phase.kind) {
                case Phase::Kind::Hold: break;
                case Phase::Kind::Rates: rates = phase.rates; break;
                case Phase::Kind::Velocity: {
                    const double r_dot = r_var_rate(prev, state, sc.dt);
                    const VelocityCommand cmd =
                        command_velocity(phase.x_dot_des, sc.policy, state, r_dot, sc.winch.winch_radius, sc.twist);
                    rates = {cmd.phi_dot_eff, cmd.theta_dot_eff};
                    saturated = cmd.saturated;
                    break;
                }
                }
                theta += rates.theta_dot_eff * sc.dt;
                phi += rates.phi_dot_eff * sc.dt;
                ++step;
                prev = state;
                sample_at(saturated);
            }
        }
    } catch (const Error &e) {
        if (!is_model_failure(e.kind())) throw;
        result.failure = RunFailure{e.kind(), e.what(), static_cast<double>(step) * sc.dt};
    }
    return result;
}

SweepPoint velocity_probe(const Scenario &base, SweepChannel channel, double rate, double duration) {
    Scenario sc = base;
    sc.mode = ScenarioMode::Displacement;
    sc.record_ratios = false;
    sc.phases = {channel == SweepChannel::Twist ? Phase::with_rates(duration, 0.0, rate)
                                                : Phase::with_rates(duration, rate, 0.0)};
    SweepPoint out{channel, rate, 0.0, std::nullopt};
    const RunResult r = run(sc);
    if (!r.ok()) {
        out.failure = r.failure;
        return out;
    }
    const TraceSample &first = r.samples.front();
    const TraceSample &last = r.samples.back();
    out.x_dot = (last.total_contraction - first.total_contraction) / (last.t - first.t);
    return out;
}

} // namespace tsw
