// Motor <-> effective angle algebra for the turret/bevel gear train.
//
// Motor 2 drives the turret through b gears at ratio N_theta; motor 1 drives
// the winch through a bevel stage of a gears at ratio N_phi mounted on the
// turret, so turret rotation alone also turns the winch.
#pragma once

#include "tsw/error.hpp"

namespace tsw {

struct GearTrain {
    int bevel_gear_count = 2;     // a
    double bevel_ratio = 2.0;     // N_phi
    int turret_gear_count = 2;    // b
    double turret_ratio = 2.0;    // N_theta

    void validate() const;
    /// (-1)^(a+1)
    double bevel_sign() const noexcept { return bevel_gear_count % 2 != 0 ? 1.0 : -1.0; }
    /// (-1)^(b+1)
    double turret_sign() const noexcept { return turret_gear_count % 2 != 0 ? 1.0 : -1.0; }

    bool operator==(const GearTrain &) const = default;
};

struct MotorAngles {
    double theta1 = 0.0;  // winch drive motor [rad]
    double theta2 = 0.0;  // turret motor [rad]
};

struct EffectiveAngles {
    double phi_eff = 0.0;
    double theta_eff = 0.0;
};

struct MotorRates {
    double theta1_dot = 0.0;
    double theta2_dot = 0.0;
};

struct EffectiveRates {
    double phi_dot_eff = 0.0;
    double theta_dot_eff = 0.0;

    bool operator==(const EffectiveRates &) const = default;
};

EffectiveAngles effective_angles(const MotorAngles &motors, const GearTrain &train);
MotorAngles motor_angles(const EffectiveAngles &eff, const GearTrain &train);

MotorRates motor_velocities(const EffectiveRates &rates, const GearTrain &train);
EffectiveRates effective_rates(const MotorRates &motors, const GearTrain &train);

} // namespace tsw
