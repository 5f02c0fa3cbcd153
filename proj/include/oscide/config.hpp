#pragma once

#include <optional>
#include <string>

#include "oscide/device.hpp"
#include "oscide/transient.hpp"

namespace oscide::config {

struct NoiseSection {
    double v_max = 0.0;       // V, no default: must be explicit
    double temperature = 0.0; // K
};

struct SweepSection {
    double v_lo = 0.0;
    double v_hi = 1.0;
    int n = 101;
};

struct RunConfig {
    Topology topology = Topology::Cascode;
    DeviceParams device;
    TankParams tank;
    VaractorModel varactor;
    std::optional<NoiseSection> noise; // required by noise/compare commands
    std::optional<transient::SimConfig> sim; // required by transient command
    SweepSection sweep;

    double v_mid_sweep() const { return 0.5 * (sweep.v_lo + sweep.v_hi); }
};

/// Parses "10.667m", "40f", "25G", "1.5" ... Exactly one optional suffix from
/// f p n u m k M G T. Throws ParseError.
double parse_engineering(const std::string& text);

/// INI/TOML-style config: `[section]` headers, `key = value` pairs, `#`
/// comments. Values are bare numbers (SI units), quoted strings with
/// engineering suffixes, or quoted enum names. Unknown sections/keys are
/// errors; every invariant is re-checked with file:line anchored messages.
RunConfig parse_config(const std::string& path);

/// Same, from an in-memory string; `origin` names the source in messages.
RunConfig parse_config_text(const std::string& text, const std::string& origin);

} // namespace oscide::config
