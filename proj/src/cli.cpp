#include "tsw/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "tsw/config.hpp"
#include "tsw/kernels.hpp"
#include "tsw/output.hpp"

namespace tsw {
namespace {

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Parse: return kExitParse;
    case ErrorKind::Validation: return kExitValidation;
    case ErrorKind::Domain:
    case ErrorKind::Singularity: return kExitDomain;
    case ErrorKind::Convergence: return kExitConvergence;
    case ErrorKind::Io: return kExitIo;
    }
    return kExitUsage;
}

std::string num(double v) { return format_number(v); }

struct Outputs {
    std::string table_path;
    std::string summary_path;
};

// The table goes to its file, or to `out` when no path is set; the summary
// then goes to its own file, or to whichever stream the table did not use.
void deliver(const Outputs &o, const std::string &table, const std::string &summary, std::ostream &out,
             std::ostream &err) {
    if (o.table_path.empty())
        out << table;
    else
        write_text(o.table_path, table);
    if (!o.summary_path.empty())
        write_text(o.summary_path, summary);
    else
        (o.table_path.empty() ? err : out) << summary;
}

int cmd_simulate(const RunConfig &cfg, const Outputs &o, std::ostream &out, std::ostream &err) {
    const Scenario &sc = cfg.scenario;
    const RunResult result = run(sc);
    std::ostringstream s;
    if (result.samples.empty()) {
        err << "tsw: " << to_string(result.failure->kind) << " error: " << result.failure->message << "\n";
        return exit_code(result.failure->kind);
    }
    const TraceSample &last = result.samples.back();
    s << "samples: " << result.samples.size() << " (t = 0 .. " << num(last.t) << " s)\n";
    s << "final twist: " << num(last.theta_eff) << " rad (" << num(last.theta_eff / (2.0 * std::numbers::pi))
      << " turns), final winch: " << num(last.phi_eff) << " rad\n";
    s << "motor angles: theta1 = " << num(last.theta1) << " rad, theta2 = " << num(last.theta2) << " rad\n";
    if (sc.mode == ScenarioMode::Displacement) {
        const double winch_part = sc.winch.winch_radius * last.phi_eff;
        s << "final dX_total: " << num(last.total_contraction * 1e3) << " mm (winch " << num(winch_part * 1e3)
          << " mm, twist " << num((last.total_contraction - winch_part) * 1e3) << " mm)\n";
        double peak = 0.0;
        for (const TraceSample &t : result.samples)
            if (t.ratio) peak = std::max(peak, t.ratio->twist);
        s << "peak twist transmission ratio: " << num(peak * 1e3) << " mm/rad, winch ratio: "
          << num(sc.winch.winch_radius * 1e3) << " mm/rad\n";
    } else if (last.f_total) {
        s << "final f_total: " << num(*last.f_total) << " N\n";
    }
    const auto saturated = std::count_if(result.samples.begin(), result.samples.end(),
                                         [](const TraceSample &t) { return t.saturated; });
    s << "saturated commands: " << saturated << "\n";
    if (result.failure)
        s << "status: aborted at t = " << num(result.failure->t) << " s: " << result.failure->message << "\n";
    else
        s << "status: ok\n";

    deliver(o, format_trace(result.samples, cfg.format), s.str(), out, err);
    if (result.failure) {
        err << "tsw: " << to_string(result.failure->kind) << " error: " << result.failure->message << "\n";
        return exit_code(result.failure->kind);
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig &cfg, const Outputs &o, std::ostream &out, std::ostream &err) {
    const SweepSpec &w = cfg.sweep;
    const bool twist = w.channels != SweepSpec::Channels::Winch;
    const bool winch = w.channels != SweepSpec::Channels::Twist;
    std::ostringstream s;
    std::string table;

    if (w.kind == SweepSpec::Kind::Velocity) {
        Scenario base = cfg.scenario;
        if (base.phases.empty()) base.phases.push_back(Phase::hold(w.duration));
        std::vector<SweepPoint> points;
        auto add = [&](SweepChannel ch, double lo, double hi) {
            const std::vector<double> rates = linspace(lo, hi, w.points);
            const std::vector<SweepPoint> part = velocity_sweep(base, ch, rates, w.duration, Exec::Parallel);
            int failed = 0;
            double gain_lo = INFINITY, gain_hi = -INFINITY;
            for (const SweepPoint &p : part) {
                if (p.failure) {
                    ++failed;
                    continue;
                }
                if (p.rate != 0.0) {
                    gain_lo = std::min(gain_lo, p.x_dot / p.rate);
                    gain_hi = std::max(gain_hi, p.x_dot / p.rate);
                }
            }
            s << to_string(ch) << " sweep " << num(lo) << " .. " << num(hi) << " rad/s, " << part.size() << " points";
            if (gain_lo <= gain_hi) s << ", velocity/rate " << num(gain_lo * 1e3) << " .. " << num(gain_hi * 1e3) << " mm/rad";
            s << ", failed " << failed << "\n";
            points.insert(points.end(), part.begin(), part.end());
        };
        if (twist) add(SweepChannel::Twist, w.twist_rate_min, w.twist_rate_max);
        if (winch) add(SweepChannel::Winch, w.winch_rate_min, w.winch_rate_max);
        table = format_velocity_sweep(points, cfg.format);
    } else {
        const Scenario &sc = cfg.scenario;
        const double held = loaded_length(sc.params, sc.load, sc.initial_phi, sc.winch.winch_radius);
        const char sep = cfg.format == OutputFormat::Csv ? ',' : '\t';
        std::string t = std::string("channel") + sep + "theta_eff_rad" + sep + "tau_w_Nm" + sep + "force_N\n";
        if (twist) {
            for (double th : linspace(0.0, w.theta_max, w.points))
                t += std::string("twist") + sep + num(th) + sep + "0" + sep + num(twist_force(sc.params, held, th)) + "\n";
        }
        if (winch) {
            for (double tau : linspace(0.0, w.torque_max, w.points))
                t += std::string("winch") + sep + "0" + sep + num(tau) + sep + num(winch_force({tau}, sc.winch)) + "\n";
        }
        s << "force sweep at held length " << num(held * 1e3) << " mm, " << w.points << " points per channel\n";
        if (twist && winch && w.torque_max > 0.0) {
            try {
                const double cross = twist_dominance_angle(sc.params, sc.winch, held, {w.torque_max}, w.theta_max);
                s << "twist overtakes winch at " << num(w.torque_max) << " N*m after " << num(cross) << " rad ("
                  << num(cross / (2.0 * std::numbers::pi)) << " turns)\n";
            } catch (const DomainError &) {
                s << "twist does not overtake winch at " << num(w.torque_max) << " N*m below " << num(w.theta_max)
                  << " rad\n";
            }
        }
        table = std::move(t);
    }
    deliver(o, table, s.str(), out, err);
    return kExitOk;
}

int cmd_force(const RunConfig &cfg, const Outputs &o, std::ostream &out, std::ostream &err) {
    const Scenario &sc = cfg.scenario;
    if (sc.params.stiffness.is_rigid())
        throw DomainError("force model needs a finite string stiffness (string is rigid)");
    const GridSpec &g = cfg.grid;
    const double held = loaded_length(sc.params, sc.load, sc.initial_phi, sc.winch.winch_radius);
    const std::vector<double> thetas = linspace(g.theta_min, g.theta_max, g.theta_points);
    const std::vector<double> torques = linspace(g.torque_min, g.torque_max, g.torque_points);
    const std::vector<ForceCell> cells = force_grid(sc.params, sc.winch, held, thetas, torques, Exec::Parallel);

    std::ostringstream s;
    s << "fixed-end force grid at held length " << num(held * 1e3) << " mm: " << thetas.size() << " twists x "
      << torques.size() << " torques\n";
    s << "exit angle gamma: " << num(exit_angle(sc.winch)) << " rad\n";
    for (double tau : torques) {
        if (tau <= 0.0) continue;
        try {
            const double cross = twist_dominance_angle(sc.params, sc.winch, held, {tau}, g.theta_max);
            s << "tau_w = " << num(tau) << " N*m: twist force exceeds winch force (" << num(winch_force({tau}, sc.winch))
              << " N) beyond " << num(cross) << " rad (" << num(cross / (2.0 * std::numbers::pi)) << " turns)\n";
        } catch (const DomainError &) {
            s << "tau_w = " << num(tau) << " N*m: twist force stays below winch force up to " << num(g.theta_max)
              << " rad\n";
        }
    }
    deliver(o, format_force_grid(cells, cfg.format), s.str(), out, err);
    return kExitOk;
}

int cmd_ratio(const RunConfig &cfg, const Outputs &o, std::ostream &out, std::ostream &err) {
    const Scenario &sc = cfg.scenario;
    const GridSpec &g = cfg.grid;
    const std::vector<double> thetas = linspace(g.theta_min, g.theta_max, g.theta_points);
    const std::vector<double> phis = linspace(g.phi_min, g.phi_max, g.phi_points);
    const std::vector<RatioCell> cells =
        ratio_map(sc.params, sc.winch, sc.load, thetas, phis, Exec::Parallel, sc.solver);

    double lo = INFINITY, hi = -INFINITY;
    std::size_t failed = 0;
    for (const RatioCell &c : cells) {
        if (c.error) {
            ++failed;
            continue;
        }
        lo = std::min(lo, c.ratio.twist);
        hi = std::max(hi, c.ratio.twist);
    }
    std::ostringstream s;
    s << "transmission ratio map: " << thetas.size() << " twists x " << phis.size() << " winch angles, " << failed
      << " cells outside the model domain\n";
    if (lo <= hi) s << "twist ratio: " << num(lo * 1e3) << " .. " << num(hi * 1e3) << " mm/rad\n";
    s << "winch ratio: " << num(sc.winch.winch_radius * 1e3) << " mm/rad\n";
    deliver(o, format_ratio_map(cells, cfg.format), s.str(), out, err);
    return kExitOk;
}

} // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Twisted-string + winch actuator model toolkit", "tsw"};
    app.require_subcommand(1);

    std::string config_path;
    Outputs outputs;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("config", config_path, "Run configuration file")->required();
        sub->add_option("-o,--output", outputs.table_path, "Table output path (default: [output] trace, else stdout)");
        sub->add_option("--summary", outputs.summary_path, "Summary output path");
    };
    CLI::App *simulate = app.add_subcommand("simulate", "Run the scenario timeline and emit a trace");
    CLI::App *sweep = app.add_subcommand("sweep", "Velocity or force sweep tables");
    CLI::App *force = app.add_subcommand("force", "Fixed-end force over a twist x winch-torque grid");
    CLI::App *ratio = app.add_subcommand("ratio", "Transmission ratios over a twist x winch-angle grid");
    for (CLI::App *sub : {simulate, sweep, force, ratio}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "tsw: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        const RunConfig cfg = load_config(config_path);
        if (outputs.table_path.empty()) outputs.table_path = cfg.trace_path;
        if (outputs.summary_path.empty()) outputs.summary_path = cfg.summary_path;
        if (*simulate) return cmd_simulate(cfg, outputs, out, err);
        if (*sweep) return cmd_sweep(cfg, outputs, out, err);
        if (*force) return cmd_force(cfg, outputs, out, err);
        return cmd_ratio(cfg, outputs, out, err);
    } catch (const Error &e) {
        err << "tsw: " << to_string(e.kind()) << " error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
}

} // namespace tsw
