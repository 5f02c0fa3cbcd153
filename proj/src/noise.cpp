#include "oscide/noise.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oscide/errors.hpp"

namespace oscide::noise {

void NoiseParams::validate() const {
    if (!(v_max > 0.0)) throw ValidationError("noise: v_max must be > 0");
    if (!(rp > 0.0)) throw ValidationError("noise: rp must be > 0");
    if (!(c_total > 0.0)) throw ValidationError("noise: c_total must be > 0");
    if (!(f0 > 0.0)) throw ValidationError("noise: f0 must be > 0");
    if (!(temperature > 0.0)) throw ValidationError("noise: temperature must be > 0");
}

double ssb_phase_noise(const NoiseParams& p, double offset_hz) {
    p.validate();
    if (!(offset_hz > 0.0)) throw DomainError("ssb_phase_noise: offset must be > 0");
    if (!(offset_hz < p.f0)) throw DomainError("ssb_phase_noise: offset must be below the carrier");
    const double omega0 = 2.0 * std::numbers::pi * p.f0;
    const double kt = NoiseParams::boltzmann * p.temperature;
    const double cw = p.c_total * omega0;
    const double ratio = p.f0 / offset_hz; // the 2*pi factors cancel in w0/dw
    const double psd = 0.5 * kt / (p.v_max * p.v_max * p.rp * cw * cw) * ratio * ratio;
    return 10.0 * std::log10(psd);
}

NoiseSpectrum noise_spectrum(const NoiseParams& p, const std::vector<double>& offsets_hz) {
    NoiseSpectrum s;
    s.points.reserve(offsets_hz.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < offsets_hz.size(); ++i) {
        const double off = offsets_hz[i];
        if (i > 0 && !(off > prev))
            throw DomainError("noise_spectrum: offsets must be strictly increasing (index " + std::to_string(i) + ")");
        prev = off;
        try {
            s.points.push_back({off, ssb_phase_noise(p, off)});
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " (index " + std::to_string(i) + ")");
        }
    }
    return s;
}

double noise_delta(const NoiseParams& a, const NoiseParams& b, double offset_hz) {
    return ssb_phase_noise(a, offset_hz) - ssb_phase_noise(b, offset_hz);
}

} // namespace oscide::noise
