#pragma once

#include <optional>
#include <vector>

#include "oscide/design.hpp"
#include "oscide/device.hpp"
#include "oscide/noise.hpp"

namespace oscide::tuning {

struct TuningPoint {
    double v_tune; // V
    double c_var;  // F
    double f;      // Hz
};

struct TuningCurve {
    std::vector<TuningPoint> points; // v_tune strictly increasing
    Topology topology = Topology::Cascode;
};

struct TuningSummary {
    double f_min;            // Hz
    double f_max;            // Hz
    double absolute_range;   // Hz
    double fractional_range; // 2*(f_max-f_min)/(f_max+f_min)
    double kvco_mid;         // Hz/V at the sweep midpoint
};

struct CalibrationTarget {
    double f_min_target; // Hz
    double f_max_target; // Hz
    std::optional<double> kvco_mid_target; // Hz/V
    double v_lo = 0.0;
    double v_hi = 1.0;
};

struct CalibrationResult {
    VaractorModel model;
    double residual_f_min; // relative
    double residual_f_max; // relative
    std::optional<double> residual_kvco; // relative
};

/// Uniform v_tune grid, each point through c_var then osc_freq.
TuningCurve sweep(const DeviceParams& dev, const TankParams& tank, const VaractorModel& var,
                  Topology topology, double v_lo, double v_hi, int n);

/// df/dv by central difference on the grid points bracketing v (exact
/// central difference when v is a grid point). v must be strictly interior.
double kvco(const TuningCurve& curve, double v);

TuningSummary summarize(const TuningCurve& curve);

/// Fits the varactor to the target endpoints by inverting the frequency
/// formula at v_lo/v_hi (exact 2x2 linear solve in c_min, c_max for the
/// current alpha). With a kvco target, alpha is found by bisection over
/// [0.1, 50] 1/V against the swept-curve midpoint slope.
CalibrationResult calibrate(const DeviceParams& dev, const TankParams& tank, Topology topology,
                            const CalibrationTarget& target);

struct NoiseInputs {
    double v_max;       // V, shared swing for both sides
    double temperature; // K
    std::vector<double> offsets_hz;
};

struct ComparisonSide {
    TuningSummary tuning;
    design::StartupReport startup;
    noise::NoiseSpectrum spectrum;
    double f0_mid;      // Hz at the sweep midpoint
    double c_total_mid; // F at the sweep midpoint
};

struct ComparisonReport {
    ComparisonSide cascode;
    ComparisonSide conventional;
    // the three verdicts: range, gain, noise ordering
    bool higher_tuning_range;
    bool higher_vco_gain;
    bool lower_phase_noise; // cascode below conventional at every offset
    double noise_delta_at_max_offset; // dB at the last shared offset
};

struct TopologyConfig {
    DeviceParams dev;
    TankParams tank;
    VaractorModel var;
    Topology topology = Topology::Cascode;
    double v_lo = 0.0;
    double v_hi = 1.0;
    int n = 101;
};

ComparisonReport compare_topologies(const TopologyConfig& cascode, const TopologyConfig& conventional,
                                    const NoiseInputs& noise_inputs);

} // namespace oscide::tuning
