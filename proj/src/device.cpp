#include "oscide/device.hpp"

#include <cmath>

#include "oscide/errors.hpp"

namespace oscide {

const char* to_string(Region r) {
    switch (r) {
    case Region::Saturation: return "saturation";
    case Region::Triode: return "triode";
    case Region::Cutoff: return "cutoff";
    }
    return "?";
}

const char* to_string(Topology t) {
    return t == Topology::Cascode ? "cascode" : "conventional";
}

namespace {

void require(bool ok, const std::string& context, const std::string& what) {
    if (!ok) throw ValidationError(context + ": " + what);
}

} // namespace

void DeviceParams::validate(const std::string& context) const {
    require(std::isfinite(gm) && gm > 0.0, context, "gm must be > 0");
    require(std::isfinite(gm_triode) && gm_triode > 0.0, context, "gm_triode must be > 0");
    require(ro > 0.0, context, "ro must be > 0");
    require(std::isfinite(cgs) && cgs >= 0.0, context, "cgs must be >= 0");
    require(std::isfinite(beta) && beta > 0.0, context, "beta must be > 0");
    require(std::isfinite(vt) && vt >= 0.0, context, "vt must be >= 0");
}

void TankParams::validate(const std::string& context) const {
    require(std::isfinite(l) && l > 0.0, context, "l must be > 0");
    require(rp > 0.0, context, "rp must be > 0");
    require(std::isfinite(cp) && cp >= 0.0, context, "cp must be >= 0");
    require(std::isfinite(cl) && cl >= 0.0, context, "cl must be >= 0");
}

void VaractorModel::validate(const std::string& context) const {
    require(std::isfinite(c_min) && c_min > 0.0, context, "c_min must be > 0");
    require(std::isfinite(c_max) && c_max >= c_min, context, "c_max must be >= c_min");
    require(std::isfinite(alpha) && alpha > 0.0, context, "alpha must be > 0");
    require(std::isfinite(v_mid), context, "v_mid must be finite");
}

double c_var(const VaractorModel& model, double v_tune) {
    return model.c_min + 0.5 * (model.c_max - model.c_min) * (1.0 - std::tanh(model.alpha * (v_tune - model.v_mid)));
}

Region check_region(double vgs, double vds, double vt) {
    if (vgs <= vt) return Region::Cutoff;
    if (vds >= vgs - vt) return Region::Saturation;
    return Region::Triode;
}

double drain_current(const DeviceParams& dev, double vgs, double vds) {
    const double vov = vgs - dev.vt;
    if (vov <= 0.0) return 0.0;
    if (vds >= vov) return 0.5 * dev.beta * vov * vov;
    return dev.beta * (vov * vds - 0.5 * vds * vds);
}

} // namespace oscide
