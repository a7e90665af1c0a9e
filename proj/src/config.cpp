#include "tsw/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace tsw {
namespace {

enum class Quantity { Length, Angle, AngularRate, LinearVelocity, Time, Force, Torque, Stiffness };

using UnitTable = std::vector<std::pair<std::string_view, double>>;

const UnitTable &units_for(Quantity q) {
    static const UnitTable length{{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}};
    static const UnitTable angle{{"rad", 1.0}, {"deg", std::numbers::pi / 180.0}};
    static const UnitTable angular_rate{{"rad/s", 1.0}, {"deg/s", std::numbers::pi / 180.0}};
    static const UnitTable velocity{{"m/s", 1.0}, {"mm/s", 1e-3}};
    static const UnitTable time{{"s", 1.0}, {"ms", 1e-3}};
    static const UnitTable force{{"N", 1.0}};
    static const UnitTable torque{{"N*m", 1.0}, {"N.m", 1.0}, {"Nm", 1.0}, {"N\xC2\xB7m", 1.0}};
    static const UnitTable stiffness{{"N/m", 1.0}, {"N/mm", 1e3}};
    switch (q) {
    case Quantity::Length: return length;
    case Quantity::Angle: return angle;
    case Quantity::AngularRate: return angular_rate;
    case Quantity::LinearVelocity: return velocity;
    case Quantity::Time: return time;
    case Quantity::Force: return force;
    case Quantity::Torque: return torque;
    case Quantity::Stiffness: return stiffness;
    }
    return length;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Field {
    std::string_view value;
    int line;
    std::string name;  // section.key
};

// Leading number and the (trimmed) remainder.
std::pair<double, std::string_view> split_number(const Field &f) {
    double v = 0.0;
    const char *begin = f.value.data();
    const char *end = begin + f.value.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr == begin) throw ParseError("expected a number, got '" + std::string(f.value) + "'", f.line, f.name);
    if (!std::isfinite(v)) throw ParseError("value must be finite", f.line, f.name);
    return {v, trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)))};
}

double quantity(const Field &f, Quantity q) {
    const auto [v, unit] = split_number(f);
    if (unit.empty()) throw ParseError("missing unit on '" + std::string(f.value) + "'", f.line, f.name);
    for (const auto &[name, scale] : units_for(q))
        if (unit == name) return v * scale;
    std::string allowed;
    for (const auto &[name, scale] : units_for(q)) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
    throw ParseError("unit '" + std::string(unit) + "' not allowed here (expected " + allowed + ")", f.line, f.name);
}

double bare(const Field &f) {
    const auto [v, unit] = split_number(f);
    if (!unit.empty()) throw ParseError("dimensionless value takes no unit", f.line, f.name);
    return v;
}

int integer(const Field &f) {
    int v = 0;
    const char *begin = f.value.data();
    const char *end = begin + f.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) throw ParseError("expected an integer", f.line, f.name);
    return v;
}

template <typename T>
T choice(const Field &f, std::initializer_list<std::pair<std::string_view, T>> options) {
    std::string allowed;
    for (const auto &[name, value] : options) {
        if (f.value == name) return value;
        allowed += (allowed.empty() ? "" : ", ") + std::string(name);
    }
    throw ParseError("expected one of " + allowed, f.line, f.name);
}

using Setter = std::function<void(RunConfig &, Phase &, const Field &)>;
using SectionTable = std::map<std::string, Setter, std::less<>>;

const std::map<std::string, SectionTable, std::less<>> &sections() {
    using P = AllocationPolicy::Mode;
    static const std::map<std::string, SectionTable, std::less<>> table{
        {"string",
         {{"length", [](RunConfig &c, Phase &, const Field &f) { c.scenario.params.unloaded_length = quantity(f, Quantity::Length); }},
          {"radius", [](RunConfig &c, Phase &, const Field &f) { c.scenario.params.initial_radius = quantity(f, Quantity::Length); }},
          {"stiffness", [](RunConfig &c, Phase &, const Field &f) {
               c.scenario.params.stiffness = f.value == "rigid" ? Stiffness::rigid()
                                                                 : Stiffness::finite(quantity(f, Quantity::Stiffness));
           }}}},
        {"winch",
         {{"radius", [](RunConfig &c, Phase &, const Field &f) { c.scenario.winch.winch_radius = quantity(f, Quantity::Length); }},
          {"bushing_distance", [](RunConfig &c, Phase &, const Field &f) { c.scenario.winch.bushing_distance = quantity(f, Quantity::Length); }},
          {"friction", [](RunConfig &c, Phase &, const Field &f) { c.scenario.winch.friction_coeff = bare(f); }}}},
        {"gears",
         {{"bevel_count", [](RunConfig &c, Phase &, const Field &f) { c.scenario.train.bevel_gear_count = integer(f); }},
          {"bevel_ratio", [](RunConfig &c, Phase &, const Field &f) { c.scenario.train.bevel_ratio = bare(f); }},
          {"turret_count", [](RunConfig &c, Phase &, const Field &f) { c.scenario.train.turret_gear_count = integer(f); }},
          {"turret_ratio", [](RunConfig &c, Phase &, const Field &f) { c.scenario.train.turret_ratio = bare(f); }}}},
        {"load",
         {{"axial_force", [](RunConfig &c, Phase &, const Field &f) { c.scenario.load.axial_force = quantity(f, Quantity::Force); }},
          {"twist_moment", [](RunConfig &c, Phase &, const Field &f) { c.scenario.load.twist_moment = quantity(f, Quantity::Torque); }}}},
        {"control",
         {{"policy", [](RunConfig &c, Phase &, const Field &f) {
               c.scenario.policy.mode = choice<P>(f, {{"winch_only", P::WinchOnly},
                                                      {"twist_only", P::TwistOnly},
                                                      {"winch_then_twist", P::WinchThenTwist},
                                                      {"proportional", P::Proportional}});
           }},
          {"switch_contraction", [](RunConfig &c, Phase &, const Field &f) { c.scenario.policy.switch_contraction = quantity(f, Quantity::Length); }},
          {"twist_fraction", [](RunConfig &c, Phase &, const Field &f) { c.scenario.policy.twist_fraction = bare(f); }},
          {"theta_min", [](RunConfig &c, Phase &, const Field &f) { c.scenario.twist.theta_min = quantity(f, Quantity::Angle); }},
          {"theta_dot_max", [](RunConfig &c, Phase &, const Field &f) { c.scenario.twist.theta_dot_max = quantity(f, Quantity::AngularRate); }},
          {"on_singularity", [](RunConfig &c, Phase &, const Field &f) {
               c.scenario.twist.on_singularity =
                   choice<SingularityMode>(f, {{"error", SingularityMode::Error}, {"saturate", SingularityMode::Saturate}});
           }}}},
        {"solver",
         {{"damping", [](RunConfig &c, Phase &, const Field &f) { c.scenario.solver.damping = bare(f); }},
          {"tolerance", [](RunConfig &c, Phase &, const Field &f) { c.scenario.solver.tolerance = quantity(f, Quantity::Length); }},
          {"max_iterations", [](RunConfig &c, Phase &, const Field &f) { c.scenario.solver.max_iterations = integer(f); }},
          {"overtwist_margin", [](RunConfig &c, Phase &, const Field &f) { c.scenario.solver.overtwist_margin = bare(f); }}}},
        {"sim",
         {{"dt", [](RunConfig &c, Phase &, const Field &f) { c.scenario.dt = quantity(f, Quantity::Time); }},
          {"initial_twist", [](RunConfig &c, Phase &, const Field &f) { c.scenario.initial_theta = quantity(f, Quantity::Angle); }},
          {"initial_winch", [](RunConfig &c, Phase &, const Field &f) { c.scenario.initial_phi = quantity(f, Quantity::Angle); }},
          {"mode", [](RunConfig &c, Phase &, const Field &f) {
               c.scenario.mode = choice<ScenarioMode>(
                   f, {{"displacement", ScenarioMode::Displacement}, {"fixed_end", ScenarioMode::FixedEnd}});
           }},
          {"winch_torque", [](RunConfig &c, Phase &, const Field &f) { c.scenario.winch_torque.tau_w = quantity(f, Quantity::Torque); }}}},
        {"phase",
         {{"kind", [](RunConfig &, Phase &p, const Field &f) {
               p.kind = choice<Phase::Kind>(
                   f, {{"rates", Phase::Kind::Rates}, {"velocity", Phase::Kind::Velocity}, {"hold", Phase::Kind::Hold}});
           }},
          {"duration", [](RunConfig &, Phase &p, const Field &f) { p.duration = quantity(f, Quantity::Time); }},
          {"twist_rate", [](RunConfig &, Phase &p, const Field &f) { p.rates.theta_dot_eff = quantity(f, Quantity::AngularRate); }},
          {"winch_rate", [](RunConfig &, Phase &p, const Field &f) { p.rates.phi_dot_eff = quantity(f, Quantity::AngularRate); }},
          {"velocity", [](RunConfig &, Phase &p, const Field &f) { p.x_dot_des = quantity(f, Quantity::LinearVelocity); }}}},
        {"sweep",
         {{"kind", [](RunConfig &c, Phase &, const Field &f) {
               c.sweep.kind = choice<SweepSpec::Kind>(f, {{"velocity", SweepSpec::Kind::Velocity}, {"force", SweepSpec::Kind::Force}});
           }},
          {"channel", [](RunConfig &c, Phase &, const Field &f) {
               c.sweep.channels = choice<SweepSpec::Channels>(
                   f, {{"twist", SweepSpec::Channels::Twist}, {"winch", SweepSpec::Channels::Winch}, {"both", SweepSpec::Channels::Both}});
           }},
          {"twist_rate_min", [](RunConfig &c, Phase &, const Field &f) { c.sweep.twist_rate_min = quantity(f, Quantity::AngularRate); }},
          {"twist_rate_max", [](RunConfig &c, Phase &, const Field &f) { c.sweep.twist_rate_max = quantity(f, Quantity::AngularRate); }},
          {"winch_rate_min", [](RunConfig &c, Phase &, const Field &f) { c.sweep.winch_rate_min = quantity(f, Quantity::AngularRate); }},
          {"winch_rate_max", [](RunConfig &c, Phase &, const Field &f) { c.sweep.winch_rate_max = quantity(f, Quantity::AngularRate); }},
          {"points", [](RunConfig &c, Phase &, const Field &f) { c.sweep.points = integer(f); }},
          {"duration", [](RunConfig &c, Phase &, const Field &f) { c.sweep.duration = quantity(f, Quantity::Time); }},
          {"theta_max", [](RunConfig &c, Phase &, const Field &f) { c.sweep.theta_max = quantity(f, Quantity::Angle); }},
          {"torque_max", [](RunConfig &c, Phase &, const Field &f) { c.sweep.torque_max = quantity(f, Quantity::Torque); }}}},
        {"grid",
         {{"theta_min", [](RunConfig &c, Phase &, const Field &f) { c.grid.theta_min = quantity(f, Quantity::Angle); }},
          {"theta_max", [](RunConfig &c, Phase &, const Field &f) { c.grid.theta_max = quantity(f, Quantity::Angle); }},
          {"theta_points", [](RunConfig &c, Phase &, const Field &f) { c.grid.theta_points = integer(f); }},
          {"phi_min", [](RunConfig &c, Phase &, const Field &f) { c.grid.phi_min = quantity(f, Quantity::Angle); }},
          {"phi_max", [](RunConfig &c, Phase &, const Field &f) { c.grid.phi_max = quantity(f, Quantity::Angle); }},
          {"phi_points", [](RunConfig &c, Phase &, const Field &f) { c.grid.phi_points = integer(f); }},
          {"torque_min", [](RunConfig &c, Phase &, const Field &f) { c.grid.torque_min = quantity(f, Quantity::Torque); }},
          {"torque_max", [](RunConfig &c, Phase &, const Field &f) { c.grid.torque_max = quantity(f, Quantity::Torque); }},
          {"torque_points", [](RunConfig &c, Phase &, const Field &f) { c.grid.torque_points = integer(f); }}}},
        {"output",
         {{"trace", [](RunConfig &c, Phase &, const Field &f) { c.trace_path = std::string(f.value); }},
          {"summary", [](RunConfig &c, Phase &, const Field &f) { c.summary_path = std::string(f.value); }},
          {"format", [](RunConfig &c, Phase &, const Field &f) {
               c.format = choice<OutputFormat>(f, {{"csv", OutputFormat::Csv}, {"tsv", OutputFormat::Tsv}});
           }}}},
    };
    return table;
}

std::string real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void SweepSpec::validate() const {
    if (points < 1) throw ValidationError("sweep points must be >= 1");
    if (!(duration > 0.0)) throw ValidationError("sweep duration must be > 0");
    if (twist_rate_min > twist_rate_max) throw ValidationError("twist_rate_min must be <= twist_rate_max");
    if (winch_rate_min > winch_rate_max) throw ValidationError("winch_rate_min must be <= winch_rate_max");
    if (!(theta_max >= 0.0)) throw ValidationError("sweep theta_max must be >= 0");
    if (!(torque_max >= 0.0)) throw ValidationError("sweep torque_max must be >= 0");
}

void GridSpec::validate() const {
    if (theta_points < 1 || phi_points < 1 || torque_points < 1) throw ValidationError("grid point counts must be >= 1");
    if (theta_min > theta_max) throw ValidationError("grid theta_min must be <= theta_max");
    if (phi_min > phi_max) throw ValidationError("grid phi_min must be <= phi_max");
    if (torque_min > torque_max) throw ValidationError("grid torque_min must be <= torque_max");
    if (theta_min < 0.0) throw ValidationError("grid theta_min must be >= 0");
    if (torque_min < 0.0) throw ValidationError("grid torque_min must be >= 0");
}

void RunConfig::validate() const {
    Scenario probe = scenario;
    if (probe.phases.empty()) probe.phases.push_back(Phase::hold(1.0));
    probe.validate();
    const SolverOptions &s = scenario.solver;
    if (!(s.damping > 0.0 && s.damping <= 1.0)) throw ValidationError("solver damping out of range (0, 1]");
    if (!(s.tolerance > 0.0)) throw ValidationError("solver tolerance must be > 0");
    if (s.max_iterations < 1) throw ValidationError("solver max_iterations must be >= 1");
    if (!(s.overtwist_margin >= 0.0 && s.overtwist_margin < 1.0))
        throw ValidationError("overtwist_margin out of range [0, 1)");
    sweep.validate();
    grid.validate();
}

RunConfig parse_config(std::string_view text) {
    RunConfig config;
    const SectionTable *section = nullptr;
    std::string section_name;
    std::set<std::string, std::less<>> seen;
    Phase *phase = nullptr;
    Phase scratch;
    std::set<std::string> sections_seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", line_no);
            section_name = std::string(trim(line.substr(1, line.size() - 2)));
            const auto it = sections().find(section_name);
            if (it == sections().end()) throw ParseError("unknown section [" + section_name + "]", line_no);
            section = &it->second;
            seen.clear();
            if (section_name == "phase") {
                config.scenario.phases.emplace_back();
                phase = &config.scenario.phases.back();
            } else {
                if (!sections_seen.insert(section_name).second)
                    throw ParseError("section [" + section_name + "] repeated", line_no);
                phase = &scratch;
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!section) throw ParseError("key outside of any section", line_no, key);
        const std::string field = section_name + "." + key;
        const auto setter = section->find(key);
        if (setter == section->end()) throw ParseError("unknown key", line_no, field);
        if (!seen.insert(key).second) throw ParseError("duplicate key", line_no, field);
        if (value.empty()) throw ParseError("missing value", line_no, field);
        setter->second(config, *phase, Field{value, line_no, field});
    }
    config.validate();
    return config;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed", path);
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig &c) {
    const Scenario &s = c.scenario;
    std::ostringstream o;
    o << "[string]\n"
      << "length = " << real(s.params.unloaded_length) << " m\n"
      << "radius = " << real(s.params.initial_radius) << " m\n"
      << "stiffness = " << (s.params.stiffness.is_rigid() ? "rigid" : real(s.params.stiffness.value()) + " N/m") << "\n\n";
    o << "[winch]\n"
      << "radius = " << real(s.winch.winch_radius) << " m\n"
      << "bushing_distance = " << real(s.winch.bushing_distance) << " m\n"
      << "friction = " << real(s.winch.friction_coeff) << "\n\n";
    o << "[gears]\n"
      << "bevel_count = " << s.train.bevel_gear_count << "\n"
      << "bevel_ratio = " << real(s.train.bevel_ratio) << "\n"
      << "turret_count = " << s.train.turret_gear_count << "\n"
      << "turret_ratio = " << real(s.train.turret_ratio) << "\n\n";
    o << "[load]\n"
      << "axial_force = " << real(s.load.axial_force) << " N\n"
      << "twist_moment = " << real(s.load.twist_moment) << " N*m\n\n";
    o << "[control]\n"
      << "policy = " << to_string(s.policy.mode) << "\n"
      << "switch_contraction = " << real(s.policy.switch_contraction) << " m\n"
      << "twist_fraction = " << real(s.policy.twist_fraction) << "\n"
      << "theta_min = " << real(s.twist.theta_min) << " rad\n"
      << "theta_dot_max = " << real(s.twist.theta_dot_max) << " rad/s\n"
      << "on_singularity = " << (s.twist.on_singularity == SingularityMode::Error ? "error" : "saturate") << "\n\n";
    o << "[solver]\n"
      << "damping = " << real(s.solver.damping) << "\n"
      << "tolerance = " << real(s.solver.tolerance) << " m\n"
      << "max_iterations = " << s.solver.max_iterations << "\n"
      << "overtwist_margin = " << real(s.solver.overtwist_margin) << "\n\n";
    o << "[sim]\n"
      << "dt = " << real(s.dt) << " s\n"
      << "initial_twist = " << real(s.initial_theta) << " rad\n"
      << "initial_winch = " << real(s.initial_phi) << " rad\n"
      << "mode = " << (s.mode == ScenarioMode::Displacement ? "displacement" : "fixed_end") << "\n"
      << "winch_torque = " << real(s.winch_torque.tau_w) << " N*m\n\n";
    for (const Phase &p : s.phases) {
        o << "[phase]\n"
          << "kind = " << to_string(p.kind) << "\n"
          << "duration = " << real(p.duration) << " s\n"
          << "twist_rate = " << real(p.rates.theta_dot_eff) << " rad/s\n"
          << "winch_rate = " << real(p.rates.phi_dot_eff) << " rad/s\n"
          << "velocity = " << real(p.x_dot_des) << " m/s\n\n";
    }
    const SweepSpec &w = c.sweep;
    o << "[sweep]\n"
      << "kind = " << (w.kind == SweepSpec::Kind::Velocity ? "velocity" : "force") << "\n"
      << "channel = "
      << (w.channels == SweepSpec::Channels::Twist ? "twist" : w.channels == SweepSpec::Channels::Winch ? "winch" : "both")
      << "\n"
      << "twist_rate_min = " << real(w.twist_rate_min) << " rad/s\n"
      << "twist_rate_max = " << real(w.twist_rate_max) << " rad/s\n"
      << "winch_rate_min = " << real(w.winch_rate_min) << " rad/s\n"
      << "winch_rate_max = " << real(w.winch_rate_max) << " rad/s\n"
      << "points = " << w.points << "\n"
      << "duration = " << real(w.duration) << " s\n"
      << "theta_max = " << real(w.theta_max) << " rad\n"
      << "torque_max = " << real(w.torque_max) << " N*m\n\n";
    const GridSpec &g = c.grid;
    o << "[grid]\n"
      << "theta_min = " << real(g.theta_min) << " rad\n"
      << "theta_max = " << real(g.theta_max) << " rad\n"
      << "theta_points = " << g.theta_points << "\n"
      << "phi_min = " << real(g.phi_min) << " rad\n"
      << "phi_max = " << real(g.phi_max) << " rad\n"
      << "phi_points = " << g.phi_points << "\n"
      << "torque_min = " << real(g.torque_min) << " N*m\n"
      << "torque_max = " << real(g.torque_max) << " N*m\n"
      << "torque_points = " << g.torque_points << "\n\n";
    o << "[output]\n";
    if (!c.trace_path.empty()) o << "trace = " << c.trace_path << "\n";
    if (!c.summary_path.empty()) o << "summary = " << c.summary_path << "\n";
    o << "format = " << (c.format == OutputFormat::Csv ? "csv" : "tsv") << "\n";
    return o.str();
}

} // namespace tsw
