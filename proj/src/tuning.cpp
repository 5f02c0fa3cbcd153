#include "oscide/tuning.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oscide/errors.hpp"
#include "oscide/parallel.hpp"

namespace oscide::tuning {

TuningCurve sweep(const DeviceParams& dev, const TankParams& tank, const VaractorModel& var, Topology topology,
                  double v_lo, double v_hi, int n) {
    if (n < 3) throw DomainError("sweep: need at least 3 points");
    if (!(v_lo < v_hi)) throw DomainError("sweep: v_lo must be below v_hi");
    TuningCurve curve;
    curve.topology = topology;
    curve.points.resize(n);
    const double step = (v_hi - v_lo) / double(n - 1);
    util::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const double v = i + 1 == static_cast<std::size_t>(n) ? v_hi : v_lo + double(i) * step;
        const double cv = c_var(var, v);
        try {
            curve.points[i] = {v, cv, design::osc_freq(dev, tank, cv, topology)};
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " (v_tune = " + std::to_string(v) + " V)");
        }
    });
    return curve;
}

double kvco(const TuningCurve& curve, double v) {
    const auto& pts = curve.points;
    if (pts.size() < 3) throw OutOfRange("kvco: curve too short");
    if (!(v > pts.front().v_tune) || !(v < pts.back().v_tune))
        throw OutOfRange("kvco: v must be strictly inside the swept range");
    // nearest grid index; central difference over the bracketing neighbours
    const double step = (pts.back().v_tune - pts.front().v_tune) / double(pts.size() - 1);
    std::size_t i = static_cast<std::size_t>(std::llround((v - pts.front().v_tune) / step));
    i = std::min(std::max<std::size_t>(i, 1), pts.size() - 2);
    return (pts[i + 1].f - pts[i - 1].f) / (pts[i + 1].v_tune - pts[i - 1].v_tune);
}

TuningSummary summarize(const TuningCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 3) throw DomainError("summarize: curve too short");
    TuningSummary s{};
    s.f_min = pts.front().f;
    s.f_max = pts.back().f;
    s.absolute_range = s.f_max - s.f_min;
    s.fractional_range = 2.0 * (s.f_max - s.f_min) / (s.f_max + s.f_min);
    s.kvco_mid = kvco(curve, 0.5 * (pts.front().v_tune + pts.back().v_tune));
    return s;
}

namespace {

// Inverts f = 1/(2*pi*sqrt(2*l*(K_half + cvar/2))) for the varactor value at
// a target frequency. K_half is the differential capacitance with cvar = 0.
double cvar_budget(const DeviceParams& dev, const TankParams& tank, Topology topology, double f_target) {
    const double k_half = design::c_total(dev, tank, 0.0, topology);
    const double w = 2.0 * std::numbers::pi * f_target;
    const double c_diff = 1.0 / (2.0 * tank.l * w * w); // required differential c_total
    return 2.0 * (c_diff - k_half);                     // per-side varactor capacitance
}

struct EndpointFit {
    double c_min;
    double c_max;
};

// Exact 2x2 solve for the model endpoints given alpha:
//   cvar(v) = c_min*(1+t)/2 + c_max*(1-t)/2,  t = tanh(alpha*(v - v_mid))
EndpointFit fit_endpoints(double b_lo, double b_hi, double v_lo, double v_hi, double v_mid, double alpha) {
    const double t_lo = std::tanh(alpha * (v_lo - v_mid));
    const double t_hi = std::tanh(alpha * (v_hi - v_mid));
    const double a11 = 0.5 * (1.0 + t_lo), a12 = 0.5 * (1.0 - t_lo);
    const double a21 = 0.5 * (1.0 + t_hi), a22 = 0.5 * (1.0 - t_hi);
    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0) throw NoRoot("calibrate: degenerate endpoint system (alpha too small)");
    return {(b_lo * a22 - a12 * b_hi) / det, (a11 * b_hi - b_lo * a21) / det};
}

} // namespace

CalibrationResult calibrate(const DeviceParams& dev, const TankParams& tank, Topology topology,
                            const CalibrationTarget& target) {
    if (!(target.f_min_target > 0.0) || !(target.f_min_target < target.f_max_target))
        throw DomainError("calibrate: need 0 < f_min_target < f_max_target");
    if (!(target.v_lo < target.v_hi)) throw DomainError("calibrate: need v_lo < v_hi");
    const double v_mid = 0.5 * (target.v_lo + target.v_hi);
    // frequency rises with v_tune, so the low endpoint carries the large capacitance
    const double b_lo = cvar_budget(dev, tank, topology, target.f_min_target);
    const double b_hi = cvar_budget(dev, tank, topology, target.f_max_target);
    if (b_hi <= 0.0)
        throw Infeasible("calibrate: f_max_target exceeds the zero-varactor ceiling; the fixed capacitances "
                         "(pair + cp + cl) already use the whole budget");

    // During the alpha search the raw fit may extrapolate to c_min <= 0
    // outside the sweep window; the swept curve itself stays within the
    // endpoint budgets, so feasibility is judged on the final model only.
    auto model_for = [&](double alpha) {
        const auto fit = fit_endpoints(b_lo, b_hi, target.v_lo, target.v_hi, v_mid, alpha);
        return VaractorModel{fit.c_min, fit.c_max, v_mid, alpha};
    };
    auto kvco_mid_of = [&](const VaractorModel& m) {
        const auto curve = sweep(dev, tank, m, topology, target.v_lo, target.v_hi, 101);
        return kvco(curve, v_mid);
    };

    double alpha = 6.0; // saturates tanh within 1% over the default [0,1] V window
    if (target.kvco_mid_target) {
        const double want = *target.kvco_mid_target;
        double lo = 0.1, hi = 50.0;
        double g_lo = kvco_mid_of(model_for(lo)) - want;
        double g_hi = kvco_mid_of(model_for(hi)) - want;
        if (g_lo * g_hi > 0.0)
            throw NoRoot("calibrate: kvco target not bracketed by alpha in [0.1, 50] 1/V");
        for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double g_mid = kvco_mid_of(model_for(mid)) - want;
            if ((g_lo <= 0.0) == (g_mid <= 0.0)) {
                lo = mid;
                g_lo = g_mid;
            } else {
                hi = mid;
            }
        }
        alpha = 0.5 * (lo + hi);
    }

    CalibrationResult result{};
    result.model = model_for(alpha);
    if (!(result.model.c_min > 0.0))
        throw Infeasible("calibrate: fitted c_min <= 0; the fixed capacitances (pair + cp + cl) exceed the "
                         "budget implied by f_max_target at the fitted slope");
    if (!(result.model.c_min <= result.model.c_max))
        throw Infeasible("calibrate: fitted c_min > c_max; targets are inconsistent with a decreasing "
                         "varactor law");
    const double f_lo = design::osc_freq(dev, tank, c_var(result.model, target.v_lo), topology);
    const double f_hi = design::osc_freq(dev, tank, c_var(result.model, target.v_hi), topology);
    result.residual_f_min = std::abs(f_lo - target.f_min_target) / target.f_min_target;
    result.residual_f_max = std::abs(f_hi - target.f_max_target) / target.f_max_target;
    if (target.kvco_mid_target)
        result.residual_kvco = std::abs(kvco_mid_of(result.model) - *target.kvco_mid_target) / *target.kvco_mid_target;
    return result;
}

namespace {

ComparisonSide build_side(const TopologyConfig& cfg, const NoiseInputs& noise_inputs) {
    ComparisonSide side{};
    const Topology topology = cfg.topology;
    const auto curve = sweep(cfg.dev, cfg.tank, cfg.var, topology, cfg.v_lo, cfg.v_hi, cfg.n);
    side.tuning = summarize(curve);
    side.startup = design::startup_margin(cfg.dev, cfg.tank, topology);
    const double v_mid = 0.5 * (cfg.v_lo + cfg.v_hi);
    const double cv_mid = c_var(cfg.var, v_mid);
    side.c_total_mid = design::c_total(cfg.dev, cfg.tank, cv_mid, topology);
    side.f0_mid = design::osc_freq(cfg.dev, cfg.tank, cv_mid, topology);
    const noise::NoiseParams np{noise_inputs.v_max, cfg.tank.rp, side.c_total_mid, side.f0_mid,
                                noise_inputs.temperature};
    side.spectrum = noise::noise_spectrum(np, noise_inputs.offsets_hz);
    return side;
}

} // namespace

ComparisonReport compare_topologies(const TopologyConfig& cascode, const TopologyConfig& conventional,
                                    const NoiseInputs& noise_inputs) {
    if (noise_inputs.offsets_hz.empty()) throw DomainError("compare_topologies: need at least one noise offset");
    ComparisonReport rep{};
    rep.cascode = build_side(cascode, noise_inputs);
    rep.conventional = build_side(conventional, noise_inputs);
    rep.higher_tuning_range = rep.cascode.tuning.absolute_range > rep.conventional.tuning.absolute_range;
    rep.higher_vco_gain = rep.cascode.tuning.kvco_mid > rep.conventional.tuning.kvco_mid;
    rep.lower_phase_noise = true;
    for (std::size_t i = 0; i < rep.cascode.spectrum.points.size(); ++i)
        if (!(rep.cascode.spectrum.points[i].l_dbc_hz < rep.conventional.spectrum.points[i].l_dbc_hz))
            rep.lower_phase_noise = false;
    rep.noise_delta_at_max_offset =
        rep.cascode.spectrum.points.back().l_dbc_hz - rep.conventional.spectrum.points.back().l_dbc_hz;
    return rep;
}

} // namespace oscide::tuning
