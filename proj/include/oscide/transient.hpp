#pragma once

#include <vector>

#include "oscide/device.hpp"

namespace oscide::transient {

struct SimConfig {
    enum class Method { RK4Fixed };

    double dt = 0.0;         // s
    double t_end = 0.0;      // s
    double v_perturb = 1e-3; // initial differential imbalance, V
    Method method = Method::RK4Fixed;
    int record_stride = 1; // integration steps per stored sample
};

struct TraceSample {
    double t;       // s
    double v_plus;  // V, tank node A
    double v_minus; // V, tank node B
    double i_l;     // A, side-A tank inductor current
};

struct TransientTrace {
    std::vector<TraceSample> samples;
    // run metadata
    SimConfig config;
    DeviceParams dev;
    TankParams tank;
    double c_var = 0.0;
    Topology topology = Topology::Conventional;
    double vdd = 0.0; // derived supply/bias, V
};

struct SteadyStateReport {
    double frequency;      // Hz, 0 when not started
    double amplitude;      // V, peak differential over the last 20%
    bool started;          // grew to >= 10x v_perturb with >= 20 crossings
    double envelope_slope; // 1/s, log-amplitude slope over the first 10%
};

struct ClosedFormCheck {
    double f_transient;    // Hz
    double f_formula;      // Hz, closed-form prediction
    double relative_error; // |f_transient - f_formula| / f_formula
    bool pass;             // relative_error <= 0.02
};

/// Fixed-step RK4 integration of the differential oscillator from its DC
/// operating point with a +-v_perturb/2 imbalance on the tank nodes.
/// The DC bias is derived from the device itself: overdrive = gm/beta, so the
/// large-signal operating point reproduces the small-signal gm exactly.
/// Throws StepTooLarge if dt exceeds 1/(200*f_estimate), DomainError if t_end
/// covers fewer than 200 estimated periods, NonFinite if a state diverges.
TransientTrace simulate(const DeviceParams& dev, const TankParams& tank, double c_var,
                        Topology topology, const SimConfig& cfg);

/// As simulate(), with the cascode tail inductance set to tail_ratio * tank.l
/// instead of the default 10x. Exists to measure sensitivity to that choice.
TransientTrace simulate_with_tail_ratio(const DeviceParams& dev, const TankParams& tank, double c_var,
                                        Topology topology, const SimConfig& cfg, double tail_ratio);

/// Mean period of rising zero crossings of v_plus - v_minus over the final
/// 50% of the trace (hysteresis against noise, linear interpolation).
/// No startedness gating; throws NotOscillating only if fewer than two
/// crossings exist. Used directly for passive ring-down checks.
double zero_crossing_frequency(const TransientTrace& trace);

/// Gated production estimate: requires >= 20 crossings in the final 50% and
/// end amplitude >= 10x the configured v_perturb, then cross-validates the
/// zero-crossing estimate against the peak bin of a Hann-windowed DFT
/// (must agree within 1%). Throws NotOscillating otherwise.
double extract_frequency(const TransientTrace& trace);

SteadyStateReport steady_state(const TransientTrace& trace);

/// Runs simulate + extract_frequency and compares against osc_freq.
/// Requires start-up margin > 1. A large deviation yields pass = false,
/// not an exception.
ClosedFormCheck verify_against_closed_form(const DeviceParams& dev, const TankParams& tank,
                                           double c_var, Topology topology, const SimConfig& cfg);

} // namespace oscide::transient
