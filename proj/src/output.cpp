#include "tsw/output.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>

namespace tsw {
namespace {

class Table {
public:
    explicit Table(OutputFormat format) : sep_(format == OutputFormat::Csv ? ',' : '\t') {}

    void row(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const std::string &c : cells) {
            if (!first) text_ += sep_;
            text_ += c;
            first = false;
        }
        text_ += '\n';
    }
    std::string take() { return std::move(text_); }

private:
    char sep_;
    std::string text_;
};

std::string mm(double meters) { return format_number(meters * 1e3); }

std::string status(const std::optional<ErrorKind> &err) { return err ? to_string(*err) : "ok"; }

} // namespace

const char *const kTraceHeader =
    "t_s,theta_eff_rad,phi_eff_rad,theta1_rad,theta2_rad,dX_total_mm,x_dot_mm_s,f_total_N,"
    "tr_twist_mm_per_rad,tr_winch_mm_per_rad";

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string format_trace(std::span<const TraceSample> samples, OutputFormat format) {
    if (samples.empty()) throw ValidationError("trace has no samples");
    Table t(format);
    t.row({"t_s", "theta_eff_rad", "phi_eff_rad", "theta1_rad", "theta2_rad", "dX_total_mm", "x_dot_mm_s", "f_total_N",
           "tr_twist_mm_per_rad", "tr_winch_mm_per_rad"});
    for (const TraceSample &s : samples) {
        t.row({format_number(s.t), format_number(s.theta_eff), format_number(s.phi_eff), format_number(s.theta1),
               format_number(s.theta2), mm(s.total_contraction), mm(s.x_dot),
               s.f_total ? format_number(*s.f_total) : std::string(), s.ratio ? mm(s.ratio->twist) : std::string(),
               s.ratio ? mm(s.ratio->winch) : std::string()});
    }
    return t.take();
}

std::string format_velocity_sweep(std::span<const SweepPoint> points, OutputFormat format) {
    Table t(format);
    t.row({"channel", "rate_rad_s", "x_dot_mm_s", "status"});
    for (const SweepPoint &p : points) {
        t.row({to_string(p.channel), format_number(p.rate), p.failure ? std::string() : mm(p.x_dot),
               p.failure ? to_string(p.failure->kind) : "ok"});
    }
    return t.take();
}

std::string format_ratio_map(std::span<const RatioCell> cells, OutputFormat format) {
    Table t(format);
    t.row({"theta_eff_rad", "phi_eff_rad", "status", "dX_total_mm", "tr_twist_mm_per_rad", "tr_winch_mm_per_rad",
           "tr_winch_coupled_mm_per_rad"});
    for (const RatioCell &c : cells) {
        if (c.error) {
            t.row({format_number(c.theta_eff), format_number(c.phi_eff), status(c.error), "", "", "", ""});
            continue;
        }
        t.row({format_number(c.theta_eff), format_number(c.phi_eff), "ok", mm(c.total_contraction), mm(c.ratio.twist),
               mm(c.ratio.winch), mm(c.ratio.winch_coupled)});
    }
    return t.take();
}

std::string format_force_grid(std::span<const ForceCell> cells, OutputFormat format) {
    Table t(format);
    t.row({"theta_eff_rad", "tau_w_Nm", "status", "f_twist_N", "f_winch_N", "f_total_N", "alpha_rad", "gamma_rad"});
    for (const ForceCell &c : cells) {
        if (c.error) {
            t.row({format_number(c.theta_eff), format_number(c.tau_w), status(c.error), "", "", "", "", ""});
            continue;
        }
        t.row({format_number(c.theta_eff), format_number(c.tau_w), "ok", format_number(c.force.f_twist),
               format_number(c.force.f_winch), format_number(c.force.f_total), format_number(c.force.helix_angle),
               format_number(c.force.exit_angle)});
    }
    return t.take();
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing", path);
    out << text;
    out.flush();
    if (!out) throw IoError("write failed", path);
}

void emit_trace(std::span<const TraceSample> samples, OutputFormat format, const std::string &path) {
    write_text(path, format_trace(samples, format));
}

} // namespace tsw
