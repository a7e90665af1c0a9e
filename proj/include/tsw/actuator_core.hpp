// Twisted-string + winch displacement model.
//
// Geometry follows the classic helix picture of a twisted string: an
// extended (loaded, winch-adjusted) length L_c twisted by theta contracts
// to X = sqrt(L_c^2 - theta^2 r^2), where the bundle radius grows as
// r = r0 sqrt(L_c / X). The winch removes r_w * phi of string from the
// twisting zone and adds it directly to the output stroke.
#pragma once

#include <optional>

#include "tsw/error.hpp"

namespace tsw {

/// String stiffness, either a finite spring constant [N/m] or rigid (infinite).
class Stiffness {
public:
    static Stiffness rigid() { return Stiffness{}; }
    static Stiffness finite(double newton_per_meter) { return Stiffness{newton_per_meter}; }

    bool is_rigid() const noexcept { return !value_.has_value(); }
    /// Throws DomainError in rigid mode.
    double value() const;

    bool operator==(const Stiffness &) const = default;

private:
    Stiffness() = default;
    explicit Stiffness(double k) : value_(k) {}
    std::optional<double> value_;
};

struct StringParams {
    double unloaded_length = 0.5;  // L [m]
    double initial_radius = 1e-3;  // r0 [m]
    Stiffness stiffness = Stiffness::finite(60e3);

    void validate() const;
    bool operator==(const StringParams &) const = default;
};

struct WinchGeometry {
    double winch_radius = 5e-3;       // r_w [m]
    double bushing_distance = 50e-3;  // d_winch [m]
    double friction_coeff = 0.2;      // mu, bushing sliding friction

    void validate() const;
    bool operator==(const WinchGeometry &) const = default;
};

struct LoadCondition {
    double axial_force = 0.0;   // F_x [N]
    double twist_moment = 0.0;  // tau_L [N m]

    void validate() const;
    bool operator==(const LoadCondition &) const = default;
};

enum class SolveMethod { Trivial, FixedPoint, Bisection };

struct ActuatorState {
    double theta_eff = 0.0;           // [rad]
    double phi_eff = 0.0;             // [rad]
    double contracted_length = 0.0;   // L_c [m]
    double total_length = 0.0;        // X_total [m]
    double variable_radius = 0.0;     // r_var,eff [m]
    double total_contraction = 0.0;   // dX_total [m]

    SolveMethod method = SolveMethod::Trivial;
    int iterations = 0;
    double residual = 0.0;  // |X - sqrt(L_c^2 - theta^2 r_var^2)| [m]
};

struct SolverOptions {
    double damping = 0.5;
    double tolerance = 1e-9;  // [m]
    int max_iterations = 200;
    /// Fraction of the fold twist beyond which inputs are rejected as overtwisted.
    double overtwist_margin = 0.01;

    bool operator==(const SolverOptions &) const = default;
};

/// Twisted length for a fixed radius: sqrt(L_c^2 - theta^2 r0^2).
double contracted_length(double loaded_length, double radius, double theta);

/// Largest twist for which the variable-radius relation still has a solution.
///
/// Beyond it the cubic X^3 - L_c^2 X + theta^2 r0^2 L_c = 0 has no root on the
/// physical branch, which is where the model stops describing the string.
double fold_twist(double loaded_length, double initial_radius);

/// fold_twist scaled by (1 - margin); twists at or above this are rejected.
double max_twist(double loaded_length, double initial_radius, const SolverOptions &opts = {});

struct TwistedLength {
    double length = 0.0;  // X [m]
    double variable_radius = 0.0;
    SolveMethod method = SolveMethod::Trivial;
    int iterations = 0;
    double residual = 0.0;
};

/// Solves X = sqrt(L_c^2 - theta^2 r_var^2), r_var = r0 sqrt(L_c / X), on the
/// branch continuous with X = L_c at zero twist.
TwistedLength solve_twisted_length(double loaded_length, double initial_radius, double theta,
                                   const SolverOptions &opts = {});

/// Contraction from twisting alone at a given loaded length.
double twist_contraction(double loaded_length, double initial_radius, double theta,
                         const SolverOptions &opts = {});

/// Loaded, winch-adjusted length L + F_i/K - r_w phi, with the stiffness term dropped for rigid strings.
double loaded_length(const StringParams &params, const LoadCondition &load, double phi_eff,
                     double winch_radius);

/// dX_total = L_c - X + r_w phi, with the implicit radius coupling resolved.
ActuatorState solve_total_contraction(const StringParams &params, const WinchGeometry &winch,
                                      const LoadCondition &load, double theta_eff, double phi_eff,
                                      const SolverOptions &opts = {});

} // namespace tsw
