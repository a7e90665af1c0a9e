#include "tsw/velocity_control.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace tsw;

namespace {

const StringParams kRigid{0.5, 1e-3, Stiffness::rigid()};
const WinchGeometry kWinch{5e-3, 50e-3, 0.2};

ActuatorState state_with(double theta, double lc, double r) {
    ActuatorState s;
    s.theta_eff = theta;
    s.contracted_length = lc;
    s.variable_radius = r;
    s.total_length = std::sqrt(lc * lc - theta * theta * r * r);
    return s;
}

ActuatorState solved(double theta, double phi = 0.0) { return solve_total_contraction(kRigid, kWinch, {}, theta, phi); }

} // namespace

TEST(Allocate, Examples) {
    const ActuatorState s = solved(0.0);
    VelocityAllocation a = allocate(5e-3, AllocationPolicy::winch_only(), s);
    EXPECT_EQ(a.x_dot_theta, 0.0);
    EXPECT_EQ(a.x_dot_phi, 5e-3);

    a = allocate(5e-3, AllocationPolicy::proportional(0.4), s);
    EXPECT_NEAR(a.x_dot_theta, 2e-3, 1e-18);
    EXPECT_NEAR(a.x_dot_phi, 3e-3, 1e-18);

    ActuatorState past = s;
    past.total_contraction = 60e-3;
    a = allocate(5e-3, AllocationPolicy::winch_then_twist(50e-3), past);
    EXPECT_EQ(a.x_dot_theta, 5e-3);
    EXPECT_EQ(a.x_dot_phi, 0.0);

    ActuatorState before = s;
    before.total_contraction = 40e-3;
    a = allocate(5e-3, AllocationPolicy::winch_then_twist(50e-3), before);
    EXPECT_EQ(a.x_dot_theta, 0.0);
    EXPECT_EQ(a.x_dot_phi, 5e-3);

    a = allocate(-2e-3, AllocationPolicy::twist_only(), s);
    EXPECT_EQ(a.x_dot_theta, -2e-3);
    EXPECT_EQ(a.x_dot_phi, 0.0);
}

TEST(Allocate, ConservationIsExact) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> v(-1.0, 1.0), f(0.0, 1.0);
    const ActuatorState s = solved(50.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = v(rng) * std::pow(10.0, -6.0 * f(rng));
        for (const AllocationPolicy &p :
             {AllocationPolicy::proportional(f(rng)), AllocationPolicy::winch_only(), AllocationPolicy::twist_only(),
              AllocationPolicy::winch_then_twist(0.1 * f(rng))}) {
            const VelocityAllocation a = allocate(x, p, s);
            EXPECT_EQ(a.x_dot_theta + a.x_dot_phi, x);
        }
    }
}

TEST(Allocate, PolicyValidation) {
    EXPECT_THROW(AllocationPolicy::proportional(1.5).validate(), ValidationError);
    EXPECT_THROW(AllocationPolicy::winch_then_twist(-1.0).validate(), ValidationError);
    EXPECT_NO_THROW(AllocationPolicy::proportional(1.0).validate());
}

TEST(TwistCommand, DirectEvaluation) {
    const TwistCommand c = twist_velocity_command(1e-3, state_with(300.0, 0.5, 1e-3), 0.0);
    EXPECT_NEAR(c.theta_dot_eff, 0.001 * 0.4 / (300.0 * 1e-6), 1e-12);
    EXPECT_NEAR(c.theta_dot_eff, 4.0 / 3.0, 1e-12);
    EXPECT_FALSE(c.saturated);
}

TEST(TwistCommand, ZeroRequestZeroRadiusRate) {
    EXPECT_EQ(twist_velocity_command(0.0, state_with(300.0, 0.5, 1e-3), 0.0).theta_dot_eff, 0.0);
    EXPECT_EQ(twist_velocity_command(0.0, solved(120.0), 0.0).theta_dot_eff, 0.0);
}

TEST(TwistCommand, RadiusRateTerm) {
    // -theta * r_dot / r
    const TwistCommand c = twist_velocity_command(0.0, state_with(100.0, 0.5, 1e-3), 1e-6);
    EXPECT_NEAR(c.theta_dot_eff, -100.0 * 1e-6 / 1e-3, 1e-12);
}

TEST(TwistCommand, SingularityHandling) {
    const ActuatorState s = solved(0.5);
    EXPECT_THROW(twist_velocity_command(1e-3, s, 0.0), SingularityError);
    EXPECT_THROW(twist_velocity_command(1e-3, solved(0.0), 0.0), SingularityError);

    TwistCommandOptions sat;
    sat.on_singularity = SingularityMode::Saturate;
    sat.theta_dot_max = 20.0;
    TwistCommand c = twist_velocity_command(1e-3, s, 0.0, sat);
    EXPECT_TRUE(c.saturated);
    EXPECT_EQ(c.theta_dot_eff, 20.0);
    c = twist_velocity_command(-1e-3, s, 0.0, sat);
    EXPECT_EQ(c.theta_dot_eff, -20.0);
}

TEST(TwistCommand, ClampsAboveRateLimit) {
    TwistCommandOptions opts;
    opts.theta_dot_max = 1.0;
    const TwistCommand c = twist_velocity_command(1e-3, state_with(300.0, 0.5, 1e-3), 0.0, opts);
    EXPECT_TRUE(c.saturated);
    EXPECT_EQ(c.theta_dot_eff, 1.0);
}

TEST(TwistCommand, OvertwistedStateIsDomainError) {
    EXPECT_THROW(twist_velocity_command(1e-3, state_with(600.0, 0.5, 1e-3), 0.0), DomainError);
}

TEST(TwistCommand, NeverNonFinite) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TwistCommandOptions sat;
    sat.on_singularity = SingularityMode::Saturate;
    for (int i = 0; i < 10000; ++i) {
        ActuatorState s = state_with(0.0, 0.5, 1e-3);
        s.theta_eff = 2.0 * u(rng);
        s.variable_radius = 1e-3 * (1.0 + u(rng));
        try {
            const TwistCommand c = twist_velocity_command(u(rng) * 1e-2, s, u(rng) * 1e-5, sat);
            EXPECT_TRUE(std::isfinite(c.theta_dot_eff));
        } catch (const Error &) {
        }
    }
}

TEST(WinchCommand, Definition) {
    EXPECT_EQ(winch_velocity_command(0.0, 5e-3), 0.0);
    EXPECT_DOUBLE_EQ(winch_velocity_command(10e-3, 5e-3), 2.0);
    EXPECT_THROW(winch_velocity_command(1e-3, 0.0), ValidationError);
}

TEST(WinchCommand, ReproducesRequestedVelocityThroughModel) {
    const double dt = 1e-4;
    for (double v : {1e-3, 5e-3, 20e-3, -3e-3}) {
        const double phi_dot = winch_velocity_command(v, kWinch.winch_radius);
        const double x0 = solved(0.0, 10.0).total_contraction;
        const double x1 = solved(0.0, 10.0 + phi_dot * dt).total_contraction;
        EXPECT_NEAR((x1 - x0) / dt, v, 1e-9);
        EXPECT_NEAR(kWinch.winch_radius * phi_dot, v, 1e-18);
    }
}

TEST(RVarRate, BackwardDifference) {
    const ActuatorState s = state_with(100.0, 0.5, 1e-3);
    EXPECT_EQ(r_var_rate(s, s, 1e-3), 0.0);
    EXPECT_EQ(r_var_rate(std::nullopt, s, 1e-3), 0.0);
    const ActuatorState t = state_with(100.0, 0.5, 1.001e-3);
    EXPECT_NEAR(r_var_rate(s, t, 0.1), 0.01e-3, 1e-15);
    EXPECT_THROW(r_var_rate(s, t, 0.0), ValidationError);
}

// Backward difference against the chain-rule derivative of r0 sqrt(Lc/X) with
// dX/dtheta from implicit differentiation of X^3 - Lc^2 X + theta^2 r0^2 Lc.
TEST(RVarRate, FirstOrderConvergenceToChainRule) {
    const double omega = 3.0, theta = 150.0, lc = 0.5, r0 = 1e-3;
    const ActuatorState now = solved(theta);
    const double x = now.total_length;
    const double dx_dtheta = -2.0 * theta * r0 * r0 * lc / (3.0 * x * x - lc * lc);
    const double analytic = -now.variable_radius / (2.0 * x) * dx_dtheta * omega;

    double prev_err = 0.0;
    for (double dt : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
        const double est = r_var_rate(solved(theta - omega * dt), now, dt);
        const double err = std::abs(est - analytic);
        if (prev_err > 0.0) {
            EXPECT_GT(prev_err / err, 1.8);
            EXPECT_LT(prev_err / err, 2.2);
        }
        prev_err = err;
    }
    EXPECT_LT(prev_err / std::abs(analytic), 1e-3);
}

TEST(TwistCommand, IntegratedCommandRecoversDisplacementRate) {
    const double dt = 1e-4;
    const double x_dot = 2e-3;
    for (double theta0 : {20.0, 100.0, 200.0}) {
        std::optional<ActuatorState> prev;
        ActuatorState s = solved(theta0, 5.0);
        double rate = 0.0;
        for (int k = 0; k < 10; ++k) {
            const double cmd = twist_velocity_command(x_dot, s, r_var_rate(prev, s, dt)).theta_dot_eff;
            const ActuatorState next = solved(s.theta_eff + cmd * dt, 5.0);
            rate = (next.total_contraction - s.total_contraction) / dt;
            prev = s;
            s = next;
        }
        EXPECT_NEAR(rate, x_dot, 1e-3 * x_dot) << "theta0 " << theta0;
    }
}

TEST(CommandVelocity, WinchThenTwistFallsBackToWinchNearZeroTwist) {
    ActuatorState s = solved(0.0, 12.0);
    s.total_contraction = 0.1;
    const VelocityCommand c = command_velocity(5e-3, AllocationPolicy::winch_then_twist(0.05), s, 0.0, 5e-3);
    EXPECT_EQ(c.theta_dot_eff, 0.0);
    EXPECT_DOUBLE_EQ(c.phi_dot_eff, 1.0);
    EXPECT_THROW(command_velocity(5e-3, AllocationPolicy::twist_only(), s, 0.0, 5e-3), SingularityError);
}

TEST(CommandVelocity, BothChannels) {
    const ActuatorState s = solved(100.0, 2.0);
    const VelocityCommand c = command_velocity(4e-3, AllocationPolicy::proportional(0.5), s, 0.0, 5e-3);
    EXPECT_DOUBLE_EQ(c.phi_dot_eff, 2e-3 / 5e-3);
    EXPECT_NEAR(c.theta_dot_eff, twist_velocity_command(2e-3, s, 0.0).theta_dot_eff, 1e-15);
}
