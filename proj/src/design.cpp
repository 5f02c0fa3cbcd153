#include "oscide/design.hpp"

#include <cmath>
#include <numbers>

#include "oscide/errors.hpp"
#include "oscide/mna.hpp"

namespace oscide::design {

double parallel(double r1, double r2) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw DomainError("parallel: resistances must be > 0");
    if (std::isinf(r1)) return r2;
    if (std::isinf(r2)) return r1;
    return r1 * r2 / (r1 + r2);
}

StartupReport startup_margin(const DeviceParams& dev, const TankParams& tank, Topology topology) {
    StartupReport rep{};
    if (topology == Topology::Cascode) {
        rep.r_neg_magnitude = 4.0 / dev.gm;
        rep.r_loss = parallel(2.0 * dev.ro, tank.rp);
    } else {
        rep.r_neg_magnitude = 2.0 / dev.gm;
        rep.r_loss = parallel(dev.ro, tank.rp);
    }
    rep.margin = rep.r_loss / rep.r_neg_magnitude;
    rep.oscillates = rep.margin > 1.0;
    return rep;
}

double cap_coefficient(const DeviceParams& dev, Topology topology) {
    if (topology == Topology::Cascode) return 0.875;
    if (dev.cgs == 0.0) return 0.0; // no gate capacitance, coefficient moot
    return mna::extract_capacitance_coefficient(dev, Topology::Conventional);
}

double c_total(const DeviceParams& dev, const TankParams& tank, double c_var, Topology topology) {
    const double coeff = dev.cgs > 0.0 ? cap_coefficient(dev, topology) : 0.0;
    return coeff * dev.cgs + 0.5 * (tank.cp + tank.cl + c_var);
}

double osc_freq(const DeviceParams& dev, const TankParams& tank, double c_var, Topology topology) {
    const double ct = c_total(dev, tank, c_var, topology);
    if (!(ct > 0.0)) throw DomainError("osc_freq: total tank capacitance must be > 0");
    // differential tank: 2*l against the differential c_total
    return 1.0 / (2.0 * std::numbers::pi * std::sqrt(2.0 * tank.l * ct));
}

} // namespace oscide::design
