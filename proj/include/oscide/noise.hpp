#pragma once

#include <vector>

namespace oscide::noise {

struct NoiseParams {
    double v_max;       // maximum differential tank swing, V
    double rp;          // Ohm
    double c_total;     // F
    double f0;          // carrier, Hz
    double temperature; // K

    static constexpr double boltzmann = 1.380649e-23; // J/K

    void validate() const;
};

struct NoisePoint {
    double offset_hz;
    double l_dbc_hz;
};

/// Thermal-region (1/f^2) spectrum only; offsets strictly increasing,
/// L strictly decreasing.
struct NoiseSpectrum {
    std::vector<NoisePoint> points;
};

/// Single-sideband phase noise at `offset` Hz from the carrier, dBc/Hz:
///   10*log10( (1/2) * k*T / (v_max^2 * rp * (c_total*w0)^2) * (f0/offset)^2 )
/// with w0 = 2*pi*f0. Valid for 0 < offset < f0.
double ssb_phase_noise(const NoiseParams& p, double offset_hz);

NoiseSpectrum noise_spectrum(const NoiseParams& p, const std::vector<double>& offsets_hz);

/// ssb_phase_noise(a, offset) - ssb_phase_noise(b, offset), dB.
double noise_delta(const NoiseParams& a, const NoiseParams& b, double offset_hz);

} // namespace oscide::noise
