#pragma once

#include "oscide/device.hpp"

namespace oscide::design {

struct StartupReport {
    double r_neg_magnitude; // Ohm
    double r_loss;          // Ohm, composite tank-side loss
    double margin;          // r_loss / r_neg_magnitude
    bool oscillates;        // margin > 1
};

/// r1*r2/(r1+r2); an infinite argument acts as an open circuit.
double parallel(double r1, double r2);

/// Cascode: r_neg = 4/gm against parallel(2*ro, rp).
/// Conventional: r_neg = 2/gm against parallel(ro, rp).
StartupReport startup_margin(const DeviceParams& dev, const TankParams& tank, Topology topology);

/// Differential cgs multiplier of the pair: 0.875 for the cascode topology
/// (closed form); for the conventional topology the value comes from the
/// nodal-admittance oracle, not from an assumed constant.
double cap_coefficient(const DeviceParams& dev, Topology topology);

/// Total differential tank capacitance: coeff*cgs + (cp + cl + c_var)/2.
double c_total(const DeviceParams& dev, const TankParams& tank, double c_var, Topology topology);

/// Oscillation frequency 1/(2*pi*sqrt(2*l*c_total)); for the cascode this
/// equals 1/(2*pi*sqrt(l*(1.75*cgs + cp + cl + c_var))).
double osc_freq(const DeviceParams& dev, const TankParams& tank, double c_var, Topology topology);

} // namespace oscide::design
