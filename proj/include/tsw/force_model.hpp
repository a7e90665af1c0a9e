// Quasi-static output force with the string end held fixed.
#pragma once

#include "tsw/actuator_core.hpp"

namespace tsw {

struct WinchTorque {
    double tau_w = 0.0;  // [N m]

    bool operator==(const WinchTorque &) const = default;
};

struct ForceBreakdown {
    double f_twist = 0.0;      // [N]
    double f_winch = 0.0;      // [N]
    double f_total = 0.0;      // [N]
    double helix_angle = 0.0;  // alpha [rad]
    double exit_angle = 0.0;   // gamma [rad]
};

/// Helix angle of the outer fibre: sin(alpha) = theta r0 / sqrt(X^2 + theta^2 r0^2).
double helix_angle(double length, double theta, double radius);

/// Force from stretching a fixed-length string by twisting it.
///
/// The end does not move, so the radius stays at r0 and the fibre path
/// lengthens from X to sqrt(X^2 + theta^2 r0^2). Requires a finite stiffness.
double twist_force(const StringParams &params, double length, double theta);

/// tan(gamma) = r_w / d_winch
double exit_angle(const WinchGeometry &winch);

/// Winch torque over radius, reduced by sliding friction at the exit bushing.
double winch_force(WinchTorque tau, const WinchGeometry &winch);

double total_force(double f_twist, double f_winch);

ForceBreakdown force_breakdown(const StringParams &params, const WinchGeometry &winch, double length,
                               double theta, WinchTorque tau);

/// Smallest twist at which twist_force exceeds winch_force for the same
/// motor torque. Throws DomainError if the twist never catches up before
/// max_theta.
double twist_dominance_angle(const StringParams &params, const WinchGeometry &winch, double length,
                             WinchTorque tau, double max_theta);

} // namespace tsw
