#include "tsw/kernels.hpp"

#include <cstddef>

namespace tsw {
namespace {

template <typename F>
void for_each_index(std::size_t n, Exec exec, F &&body) {
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

// Exceptions must not cross the OpenMP region boundary.
template <typename F>
std::optional<ErrorKind> capture(F &&f) {
    try {
        f();
        return std::nullopt;
    } catch (const Error &e) {
        return e.kind();
    }
}

} // namespace

std::vector<double> linspace(double start, double stop, int points) {
    if (points < 1) throw ValidationError("grid needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / (points - 1);
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
    out.back() = stop;
    return out;
}

std::vector<SolveOutcome> solve_batch(const StringParams &params, const WinchGeometry &winch,
                                      const LoadCondition &load, std::span<const SolveQuery> queries, Exec exec,
                                      const SolverOptions &opts) {
    std::vector<SolveOutcome> out(queries.size());
    for_each_index(queries.size(), exec, [&](std::size_t i) {
        out[i].error = capture([&] {
            out[i].state = solve_total_contraction(params, winch, load, queries[i].theta_eff, queries[i].phi_eff, opts);
        });
    });
    return out;
}

std::vector<RatioCell> ratio_map(const StringParams &params, const WinchGeometry &winch, const LoadCondition &load,
                                 std::span<const double> thetas, std::span<const double> phis, Exec exec,
                                 const SolverOptions &opts) {
    std::vector<RatioCell> out(thetas.size() * phis.size());
    for_each_index(out.size(), exec, [&](std::size_t k) {
        RatioCell &cell = out[k];
        cell.theta_eff = thetas[k / phis.size()];
        cell.phi_eff = phis[k % phis.size()];
        cell.error = capture([&] {
            const ActuatorState s = solve_total_contraction(params, winch, load, cell.theta_eff, cell.phi_eff, opts);
            cell.total_contraction = s.total_contraction;
            cell.ratio = transmission_ratio(params, winch, load, s, opts);
        });
    });
    return out;
}

std::vector<ForceCell> force_grid(const StringParams &params, const WinchGeometry &winch, double length,
                                  std::span<const double> thetas, std::span<const double> torques, Exec exec) {
    std::vector<ForceCell> out(thetas.size() * torques.size());
    for_each_index(out.size(), exec, [&](std::size_t k) {
        ForceCell &cell = out[k];
        cell.theta_eff = thetas[k / torques.size()];
        cell.tau_w = torques[k % torques.size()];
        cell.error = capture(
            [&] { cell.force = force_breakdown(params, winch, length, cell.theta_eff, WinchTorque{cell.tau_w}); });
    });
    return out;
}

std::vector<SweepPoint> velocity_sweep(const Scenario &base, SweepChannel channel, std::span<const double> rates,
                                       double duration, Exec exec) {
    base.validate();
    std::vector<SweepPoint> out(rates.size());
    for_each_index(rates.size(), exec, [&](std::size_t i) {
        const auto err = capture([&] { out[i] = velocity_probe(base, channel, rates[i], duration); });
        if (err) out[i] = SweepPoint{channel, rates[i], 0.0, RunFailure{*err, "probe failed", 0.0}};
    });
    return out;
}

} // namespace tsw
