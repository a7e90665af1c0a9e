// Run configuration: an INI-style text format with unit-suffixed scalars.
//
//   [string]
//   length = 500 mm
//   stiffness = rigid
//
//   [phase]
//   kind = rates
//   duration = 2 s
//   winch_rate = 3 rad/s
//
// Physical values must carry a unit; dimensionless values (ratios, counts,
// friction coefficient, fractions) must not. [phase] may repeat and the
// phases run in file order. Everything is converted to SI on parse.
#pragma once

#include <string>
#include <string_view>

#include "tsw/scenario_sim.hpp"

namespace tsw {

enum class OutputFormat { Csv, Tsv };

struct SweepSpec {
    enum class Kind { Velocity, Force };
    enum class Channels { Twist, Winch, Both };

    Kind kind = Kind::Velocity;
    Channels channels = Channels::Both;
    double twist_rate_min = 0.40;  // [rad/s]
    double twist_rate_max = 4.02;
    double winch_rate_min = 0.20;
    double winch_rate_max = 2.01;
    int points = 10;
    double duration = 0.05;   // probe length [s]
    double theta_max = 300.0; // force sweep [rad]
    double torque_max = 0.16; // force sweep [N m]

    void validate() const;
    bool operator==(const SweepSpec &) const = default;
};

struct GridSpec {
    double theta_min = 0.0;
    double theta_max = 200.0;  // [rad]
    int theta_points = 21;
    double phi_min = 0.0;
    double phi_max = 40.0;  // [rad]
    int phi_points = 9;
    double torque_min = 0.0;
    double torque_max = 0.16;  // [N m]
    int torque_points = 5;

    void validate() const;
    bool operator==(const GridSpec &) const = default;
};

struct RunConfig {
    Scenario scenario;
    SweepSpec sweep;
    GridSpec grid;
    std::string trace_path;  // empty: standard output
    std::string summary_path;
    OutputFormat format = OutputFormat::Csv;

    /// Everything except the presence of phases, which only `simulate` needs.
    void validate() const;
    bool operator==(const RunConfig &) const = default;
};

/// Throws ParseError (with line and section.key) or ValidationError.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string &path);

/// Canonical SI text that parses back to an equal config.
std::string serialize_config(const RunConfig &config);

} // namespace tsw
