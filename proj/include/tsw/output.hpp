// Plot-ready tables. Numbers use 9 significant digits, lengths are in mm,
// and identical inputs give byte-identical text.
#pragma once

#include <span>
#include <string>

#include "tsw/config.hpp"
#include "tsw/kernels.hpp"

namespace tsw {

/// Header of the trace table, comma-joined.
extern const char *const kTraceHeader;

/// Throws ValidationError for an empty trace.
std::string format_trace(std::span<const TraceSample> samples, OutputFormat format = OutputFormat::Csv);
std::string format_velocity_sweep(std::span<const SweepPoint> points, OutputFormat format = OutputFormat::Csv);
std::string format_ratio_map(std::span<const RatioCell> cells, OutputFormat format = OutputFormat::Csv);
std::string format_force_grid(std::span<const ForceCell> cells, OutputFormat format = OutputFormat::Csv);

/// Writes the table to `path`; IoError names the path on failure.
void write_text(const std::string &path, const std::string &text);

void emit_trace(std::span<const TraceSample> samples, OutputFormat format, const std::string &path);

/// %.9g, with negative zero printed as 0.
std::string format_number(double v);

} // namespace tsw
