#pragma once

#include <string>
#include <vector>

#include "oscide/noise.hpp"
#include "oscide/transient.hpp"
#include "oscide/tuning.hpp"

namespace oscide::io {

/// "25.00 GHz", "65.14 fF", "591.1 Ohm": 4 significant digits, engineering
/// suffix. Unit may be empty for dimensionless values.
std::string format_eng(double value, const std::string& unit);

/// Plain %.9g with '.' decimal separator regardless of locale.
std::string format_number(double value);

std::string tuning_csv(const tuning::TuningCurve& curve, const tuning::TuningSummary& summary);
std::string noise_csv(const noise::NoiseSpectrum& spectrum);
std::string trace_csv(const transient::TransientTrace& trace);

/// Minimal static line plot: axes, ticks, one polyline per series.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<double>& xs,
                          const std::vector<double>& ys);

void write_file(const std::string& path, const std::string& content);

} // namespace oscide::io
