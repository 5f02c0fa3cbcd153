#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oscide/errors.hpp"
#include "oscide/noise.hpp"

using namespace oscide;
using noise::NoiseParams;

namespace {

NoiseParams anchor_params() { return {0.8, 300.0, 100e-15, 25e9, 300.0}; }

std::vector<double> log_offsets(double lo, double hi, int n) {
    std::vector<double> v;
    const double r = std::log(hi / lo);
    for (int i = 0; i < n; ++i) v.push_back(lo * std::exp(r * double(i) / double(n - 1)));
    return v;
}

} // namespace

TEST_CASE("phase-noise anchor at 10 MHz offset") {
    // hand-evaluated: kT = 4.1419e-21, (C*w0)^2 = 2.4674e-4, (f0/df)^2 = 6.25e6
    const double l = noise::ssb_phase_noise(anchor_params(), 10e6);
    CHECK(std::abs(l - (-125.63)) < 0.01);
}

TEST_CASE("doubling the offset costs exactly 6.0206 dB") {
    const auto p = anchor_params();
    const double d = noise::ssb_phase_noise(p, 20e6) - noise::ssb_phase_noise(p, 10e6);
    CHECK(d == doctest::Approx(-10.0 * std::log10(4.0)).epsilon(1e-12));
}

TEST_CASE("slope is -20 dB/decade to 1e-9 for any parameter set") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const NoiseParams p{0.1 + u(rng), 50.0 + 1e3 * u(rng), (20.0 + 180.0 * u(rng)) * 1e-15,
                            (5.0 + 45.0 * u(rng)) * 1e9, 200.0 + 200.0 * u(rng)};
        const double df = 1e6 * (1.0 + 9.0 * u(rng));
        const double slope = noise::ssb_phase_noise(p, 10.0 * df) - noise::ssb_phase_noise(p, df);
        CHECK(std::abs(slope + 20.0) < 1e-9);
    }
}

TEST_CASE("monotone decrease in rp, c_total and v_max") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const NoiseParams p{0.2 + u(rng), 100.0 + 500.0 * u(rng), (30.0 + 150.0 * u(rng)) * 1e-15,
                            (10.0 + 30.0 * u(rng)) * 1e9, 250.0 + 100.0 * u(rng)};
        const double off = 1e7 * (1.0 + 70.0 * u(rng));
        const double base = noise::ssb_phase_noise(p, off);
        NoiseParams q = p;
        q.rp *= 1.5;
        CHECK(noise::ssb_phase_noise(q, off) < base);
        q = p;
        q.c_total *= 1.5;
        CHECK(noise::ssb_phase_noise(q, off) < base);
        q = p;
        q.v_max *= 1.5;
        CHECK(noise::ssb_phase_noise(q, off) < base);
    }
}

TEST_CASE("spectrum is ordered and strictly decreasing") {
    const auto offsets = log_offsets(10e6, 800e6, 50);
    const auto s = noise::noise_spectrum(anchor_params(), offsets);
    REQUIRE(s.points.size() == offsets.size());
    for (std::size_t i = 1; i < s.points.size(); ++i) {
        CHECK(s.points[i].offset_hz > s.points[i - 1].offset_hz);
        CHECK(s.points[i].l_dbc_hz < s.points[i - 1].l_dbc_hz);
    }
    const auto single = noise::noise_spectrum(anchor_params(), {10e6});
    CHECK(single.points.size() == 1);
    CHECK(single.points[0].l_dbc_hz == noise::ssb_phase_noise(anchor_params(), 10e6));
}

TEST_CASE("rp ratio shifts the curve by a constant 3.01 dB") {
    auto a = anchor_params();
    auto b = anchor_params();
    b.rp = 600.0;
    for (double off : {10e6, 40e6, 800e6}) {
        const double d = noise::ssb_phase_noise(b, off) - noise::ssb_phase_noise(a, off);
        CHECK(d == doctest::Approx(-10.0 * std::log10(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("noise delta: identical params cancel; offset-independent when f0 and v_max shared") {
    const auto p = anchor_params();
    CHECK(noise::noise_delta(p, p, 50e6) == 0.0);
    NoiseParams q = p;
    q.rp = 520.0;
    q.c_total = 80e-15;
    const double d1 = noise::noise_delta(p, q, 10e6);
    const double d2 = noise::noise_delta(p, q, 400e6);
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
    // rp doubled, all else equal
    NoiseParams r = p;
    r.rp = 2.0 * p.rp;
    CHECK(noise::noise_delta(r, p, 123e6) == doctest::Approx(-3.0103).epsilon(1e-4));
}

TEST_CASE("offset domain errors") {
    const auto p = anchor_params();
    CHECK_THROWS_AS(noise::ssb_phase_noise(p, 0.0), DomainError);
    CHECK_THROWS_AS(noise::ssb_phase_noise(p, -1e6), DomainError);
    CHECK_THROWS_AS(noise::ssb_phase_noise(p, 30e9), DomainError); // above the carrier
    CHECK_THROWS_AS(noise::noise_spectrum(p, {1e6, 1e6}), DomainError);
    try {
        noise::noise_spectrum(p, {1e6, 2e6, -1.0});
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("index 2") != std::string::npos);
    }
}
