#include "tsw/gear_train.hpp"

#include <cmath>

#include "tsw/error.hpp"

namespace tsw {

void GearTrain::validate() const {
    if (bevel_gear_count < 1) throw ValidationError("bevel_gear_count must be >= 1");
    if (turret_gear_count < 1) throw ValidationError("turret_gear_count must be >= 1");
    if (!std::isfinite(bevel_ratio) || bevel_ratio <= 0.0) throw ValidationError("bevel_ratio must be > 0");
    if (!std::isfinite(turret_ratio) || turret_ratio <= 0.0) throw ValidationError("turret_ratio must be > 0");
}

EffectiveAngles effective_angles(const MotorAngles &m, const GearTrain &g) {
    EffectiveAngles e;
    e.theta_eff = m.theta2 / g.turret_ratio * g.turret_sign();
    e.phi_eff = (m.theta1 * g.bevel_sign() + e.theta_eff) / g.bevel_ratio;
    return e;
}

MotorAngles motor_angles(const EffectiveAngles &e, const GearTrain &g) {
    // Division by +-1 is multiplication by the same sign.
    MotorAngles m;
    m.theta1 = (g.bevel_ratio * e.phi_eff - e.theta_eff) * g.bevel_sign();
    m.theta2 = g.turret_ratio * e.theta_eff * g.turret_sign();
    return m;
}

MotorRates motor_velocities(const EffectiveRates &r, const GearTrain &g) {
    MotorRates m;
    m.theta1_dot = (g.bevel_ratio * r.phi_dot_eff - r.theta_dot_eff) * g.bevel_sign();
    m.theta2_dot = g.turret_ratio * r.theta_dot_eff * g.turret_sign();
    return m;
}

EffectiveRates effective_rates(const MotorRates &m, const GearTrain &g) {
    EffectiveRates r;
    r.theta_dot_eff = m.theta2_dot / g.turret_ratio * g.turret_sign();
    r.phi_dot_eff = (m.theta1_dot * g.bevel_sign() + r.theta_dot_eff) / g.bevel_ratio;
    return r;
}

} // namespace tsw
