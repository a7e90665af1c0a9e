#include "tsw/force_model.hpp"

#include <cmath>
#include <string>

namespace tsw {

double helix_angle(double length, double theta, double radius) {
    if (!std::isfinite(length) || length <= 0.0) throw DomainError("string length must be > 0");
    if (!std::isfinite(theta)) throw DomainError("twist angle must be finite");
    // atan2 keeps |alpha| < pi/2 and avoids asin rounding above 1; the sign
    // follows the twist direction.
    return std::atan2(theta * radius, length);
}

double twist_force(const StringParams &params, double length, double theta) {
    if (params.stiffness.is_rigid())
        throw DomainError("twist force needs a finite stiffness; a rigid fixed string cannot stretch");
    params.validate();
    if (!std::isfinite(length) || length <= 0.0) throw DomainError("string length must be > 0");
    if (!std::isfinite(theta)) throw DomainError("twist angle must be finite");
    const double wrap = std::abs(theta) * params.initial_radius;
    const double fibre = std::hypot(length, wrap);
    // fibre - length without cancellation: wrap^2 / (fibre + length)
    const double stretch = wrap * wrap / (fibre + length);
    return params.stiffness.value() * stretch * (wrap / fibre);
}

double exit_angle(const WinchGeometry &winch) {
    winch.validate();
    return std::atan2(winch.winch_radius, winch.bushing_distance);
}

double winch_force(WinchTorque tau, const WinchGeometry &winch) {
    if (!std::isfinite(tau.tau_w) || tau.tau_w < 0.0) throw ValidationError("winch torque must be >= 0");
    const double gamma = exit_angle(winch);
    return tau.tau_w / winch.winch_radius * (1.0 - std::sin(gamma) * winch.friction_coeff);
}

double total_force(double f_twist, double f_winch) { return f_twist + f_winch; }

ForceBreakdown force_breakdown(const StringParams &params, const WinchGeometry &winch, double length,
                               double theta, WinchTorque tau) {
    ForceBreakdown out;
    out.f_twist = twist_force(params, length, theta);
    out.f_winch = winch_force(tau, winch);
    out.f_total = total_force(out.f_twist, out.f_winch);
    out.helix_angle = helix_angle(length, theta, params.initial_radius);
    out.exit_angle = exit_angle(winch);
    return out;
}

double twist_dominance_angle(const StringParams &params, const WinchGeometry &winch, double length,
                             WinchTorque tau, double max_theta) {
    const double target = winch_force(tau, winch);
    if (!(twist_force(params, length, max_theta) > target))
        throw DomainError("twist force stays below winch force up to theta = " + std::to_string(max_theta) + " rad");
    double lo = 0.0;
    double hi = max_theta;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (twist_force(params, length, mid) > target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace tsw
