#pragma once

#include <string>

namespace oscide {

enum class Region { Saturation, Triode, Cutoff };

enum class Topology { Conventional, Cascode };

const char* to_string(Region r);
const char* to_string(Topology t);

/// Small-signal plus square-law large-signal description of one MOSFET class.
/// All values in SI units. `gm_triode` is the channel conductance used for the
/// triode-biased pair of the cascode stack (defaults to gm when unspecified).
struct DeviceParams {
    double gm = 0.0;        // transconductance, S
    double gm_triode = 0.0; // triode channel conductance, S
    double ro = 0.0;        // output resistance, Ohm
    double cgs = 0.0;       // gate-source capacitance, F
    double beta = 0.0;      // square-law gain factor, A/V^2
    double vt = 0.0;        // threshold voltage, V
    Region region = Region::Saturation;

    // Throws ValidationError naming the offending field. `context` prefixes
    // the message (e.g. "file.toml:12: device.gm ...").
    void validate(const std::string& context = "device") const;
};

/// Resonator-side parameters, per side: inductance `l`, fixed parasitic `cp`
/// and load `cl` capacitances. `rp` is the differential parallel loss.
struct TankParams {
    double l = 0.0;  // H
    double rp = 0.0; // Ohm
    double cp = 0.0; // F
    double cl = 0.0; // F

    void validate(const std::string& context = "tank") const;
};

/// Smooth two-endpoint MOS varactor law, monotone non-increasing in v_tune:
///   C(v) = c_min + (c_max - c_min)/2 * (1 - tanh(alpha * (v - v_mid)))
struct VaractorModel {
    double c_min = 0.0; // F
    double c_max = 0.0; // F
    double v_mid = 0.0; // V
    double alpha = 0.0; // 1/V

    void validate(const std::string& context = "varactor") const;
};

double c_var(const VaractorModel& model, double v_tune);

/// Cutoff if vgs <= vt; Saturation if vds >= vgs - vt; Triode otherwise.
Region check_region(double vgs, double vds, double vt);

/// Square-law drain current, continuous across region boundaries.
double drain_current(const DeviceParams& dev, double vgs, double vds);

} // namespace oscide
