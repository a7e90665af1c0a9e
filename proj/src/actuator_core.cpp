#include "tsw/actuator_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace tsw {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Upper-branch residual of the radius coupling, multiplied through by X.
double cubic_residual(double x, double lc, double c) { return x * x * x - lc * lc * x + c; }

// A few Newton steps on the cubic, kept only while they shrink its residual.
// The fixed point stops at the requested tolerance; this brings the root down
// to rounding level for almost no cost.
double polish(double lc, double c, double x) {
    for (int k = 0; k < 4; ++k) {
        const double slope = 3.0 * x * x - lc * lc;
        if (!(slope > 0.0)) break;
        const double next = x - cubic_residual(x, lc, c) / slope;
        if (!(std::abs(cubic_residual(next, lc, c)) < std::abs(cubic_residual(x, lc, c)))) break;
        x = next;
    }
    return x;
}

TwistedLength bisect_twisted_length(double lc, double r0, double c, int spent) {
    // g(Lc/sqrt3) <= 0 whenever a root exists, g(Lc) = c > 0.
    double lo = lc / std::sqrt(3.0);
    double hi = lc;
    int it = 0;
    for (; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (cubic_residual(mid, lc, c) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    TwistedLength out;
    out.length = 0.5 * (lo + hi);
    out.variable_radius = r0 * std::sqrt(lc / out.length);
    out.method = SolveMethod::Bisection;
    out.iterations = spent + it;
    out.residual = std::abs(out.length - std::sqrt(std::max(0.0, lc * lc - c / out.length)));
    return out;
}

} // namespace

double Stiffness::value() const {
    if (!value_) throw DomainError("stiffness is rigid (infinite)");
    return *value_;
}

void StringParams::validate() const {
    if (!positive_finite(unloaded_length)) throw ValidationError("unloaded_length must be > 0");
    if (!positive_finite(initial_radius)) throw ValidationError("initial_radius must be > 0");
    if (!stiffness.is_rigid() && !positive_finite(stiffness.value()))
        throw ValidationError("stiffness must be > 0 or rigid");
}

void WinchGeometry::validate() const {
    if (!positive_finite(winch_radius)) throw ValidationError("winch_radius must be > 0");
    if (!positive_finite(bushing_distance)) throw ValidationError("bushing_distance must be > 0");
    if (!std::isfinite(friction_coeff) || friction_coeff < 0.0 || friction_coeff >= 1.0)
        throw ValidationError("friction_coeff out of range [0, 1)");
}

void LoadCondition::validate() const {
    if (!std::isfinite(axial_force) || axial_force < 0.0) throw ValidationError("axial_force must be >= 0");
    if (!std::isfinite(twist_moment) || twist_moment < 0.0) throw ValidationError("twist_moment must be >= 0");
}

double contracted_length(double loaded_length, double radius, double theta) {
    if (!positive_finite(loaded_length)) throw DomainError("loaded length must be > 0");
    if (!positive_finite(radius)) throw DomainError("string radius must be > 0");
    if (!std::isfinite(theta)) throw DomainError("twist angle must be finite");
    theta = std::abs(theta);
    if (theta * radius >= loaded_length)
        throw DomainError("overtwist: theta*r0 = " + num(theta * radius) + " m >= L_c = " + num(loaded_length) + " m");
    return std::sqrt(loaded_length * loaded_length - theta * theta * radius * radius);
}

double fold_twist(double loaded_length, double initial_radius) {
    // c_max = 2 Lc^3 / (3 sqrt 3) with c = theta^2 r0^2 Lc.
    return loaded_length * std::sqrt(2.0 / (3.0 * std::sqrt(3.0))) / initial_radius;
}

double max_twist(double loaded_length, double initial_radius, const SolverOptions &opts) {
    return (1.0 - opts.overtwist_margin) * fold_twist(loaded_length, initial_radius);
}

TwistedLength solve_twisted_length(double lc, double r0, double theta, const SolverOptions &opts) {
    if (!positive_finite(lc)) throw DomainError("loaded length must be > 0, got " + num(lc) + " m");
    if (!positive_finite(r0)) throw DomainError("string radius must be > 0");
    if (!std::isfinite(theta)) throw DomainError("twist angle must be finite");
    theta = std::abs(theta);  // the helix geometry does not depend on the twist direction

    TwistedLength out;
    if (theta == 0.0) {
        out.length = lc;
        out.variable_radius = r0;
        return out;
    }
    const double limit = max_twist(lc, r0, opts);
    if (!(theta < limit))
        throw DomainError("overtwist: theta_eff = " + num(theta) + " rad exceeds limit " + num(limit) +
                          " rad for L_c = " + num(lc) + " m");

    const double c = theta * theta * r0 * r0 * lc;
    double x = lc;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const double arg = lc * lc - c / x;
        if (!(arg > 0.0)) return bisect_twisted_length(lc, r0, c, it);
        const double fx = std::sqrt(arg);
        const double slope = c / (2.0 * x * x * fx);  // F'(X), < 1 on the physical branch
        const double step = fx - x;
        if (slope < 1.0 && std::abs(step) <= opts.tolerance * (1.0 - slope)) {
            const double xs = polish(lc, c, fx);
            out.length = xs;
            out.variable_radius = r0 * std::sqrt(lc / xs);
            out.method = SolveMethod::FixedPoint;
            out.iterations = it;
            out.residual = std::abs(xs - std::sqrt(std::max(0.0, lc * lc - c / xs)));
            return out;
        }
        x += opts.damping * step;
    }
    out = bisect_twisted_length(lc, r0, c, opts.max_iterations);
    if (!(out.residual < opts.tolerance))
        throw ConvergenceError("twisted length did not converge", out.residual, out.iterations);
    return out;
}

double twist_contraction(double loaded_length, double initial_radius, double theta, const SolverOptions &opts) {
    return loaded_length - solve_twisted_length(loaded_length, initial_radius, theta, opts).length;
}

double loaded_length(const StringParams &params, const LoadCondition &load, double phi_eff, double winch_radius) {
    if (!std::isfinite(phi_eff)) throw DomainError("winch angle must be finite");
    double lc = params.unloaded_length - winch_radius * phi_eff;
    if (!params.stiffness.is_rigid()) {
        const double f_tau = load.twist_moment / params.initial_radius;
        const double f_fiber = std::hypot(f_tau, load.axial_force);
        lc += f_fiber / params.stiffness.value();
    }
    if (!(lc > 0.0))
        throw DomainError("string fully wound: L_c = " + num(lc) + " m at phi_eff = " + num(phi_eff) + " rad");
    return lc;
}

ActuatorState solve_total_contraction(const StringParams &params, const WinchGeometry &winch,
                                      const LoadCondition &load, double theta_eff, double phi_eff,
                                      const SolverOptions &opts) {
    params.validate();
    winch.validate();
    load.validate();

    ActuatorState s;
    s.theta_eff = theta_eff;
    s.phi_eff = phi_eff;
    s.contracted_length = loaded_length(params, load, phi_eff, winch.winch_radius);

    const TwistedLength tl = solve_twisted_length(s.contracted_length, params.initial_radius, theta_eff, opts);
    s.total_length = tl.length;
    s.variable_radius = tl.variable_radius;
    s.method = tl.method;
    s.iterations = tl.iterations;
    s.residual = tl.residual;
    s.total_contraction = s.contracted_length - s.total_length + winch.winch_radius * phi_eff;
    return s;
}

} // namespace tsw
