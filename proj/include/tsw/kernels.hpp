// Batch and grid evaluations over independent points.
//
// Each kernel runs either as a plain loop (Exec::Serial, the reference) or
// as an OpenMP loop (Exec::Parallel). Points never share state, so both
// produce bit-identical results; the serial path exists to check that.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tsw/actuator_core.hpp"
#include "tsw/force_model.hpp"
#include "tsw/scenario_sim.hpp"

namespace tsw {

enum class Exec { Serial, Parallel };

/// Evenly spaced values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int points);

struct SolveQuery {
    double theta_eff = 0.0;
    double phi_eff = 0.0;
};

struct SolveOutcome {
    ActuatorState state;
    std::optional<ErrorKind> error;
};

std::vector<SolveOutcome> solve_batch(const StringParams &params, const WinchGeometry &winch,
                                      const LoadCondition &load, std::span<const SolveQuery> queries, Exec exec,
                                      const SolverOptions &opts = {});

struct RatioCell {
    double theta_eff = 0.0;
    double phi_eff = 0.0;
    double total_contraction = 0.0;
    TransmissionRatio ratio;
    std::optional<ErrorKind> error;
};

/// theta-major grid of transmission ratios.
std::vector<RatioCell> ratio_map(const StringParams &params, const WinchGeometry &winch, const LoadCondition &load,
                                 std::span<const double> thetas, std::span<const double> phis, Exec exec,
                                 const SolverOptions &opts = {});

struct ForceCell {
    double theta_eff = 0.0;
    double tau_w = 0.0;
    ForceBreakdown force;
    std::optional<ErrorKind> error;
};

/// theta-major grid of fixed-end forces at string length `length`.
std::vector<ForceCell> force_grid(const StringParams &params, const WinchGeometry &winch, double length,
                                  std::span<const double> thetas, std::span<const double> torques, Exec exec);

std::vector<SweepPoint> velocity_sweep(const Scenario &base, SweepChannel channel, std::span<const double> rates,
                                       double duration, Exec exec);

} // namespace tsw
