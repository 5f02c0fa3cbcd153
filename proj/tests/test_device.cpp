#include <doctest.h>

#include <cmath>
#include <random>

#include "oscide/device.hpp"
#include "oscide/errors.hpp"

using namespace oscide;

namespace {

VaractorModel var_20_60() { return {20e-15, 60e-15, 0.5, 3.0}; }

DeviceParams square_law(double beta, double vt) {
    DeviceParams d;
    d.gm = 1e-3;
    d.gm_triode = 1e-3;
    d.ro = 1e3;
    d.cgs = 1e-15;
    d.beta = beta;
    d.vt = vt;
    return d;
}

} // namespace

TEST_CASE("varactor midpoint and saturation limits") {
    const auto m = var_20_60();
    CHECK(c_var(m, 0.5) == doctest::Approx(40e-15).epsilon(1e-12));
    CHECK(c_var(m, 1e6) == doctest::Approx(20e-15).epsilon(1e-9));
    CHECK(c_var(m, -1e6) == doctest::Approx(60e-15).epsilon(1e-9));
    // hand-evaluated: 20 fF + 20 fF * (1 - tanh(1.5)), tanh(1.5) = 0.90514825
    CHECK(c_var(m, 1.0) == doctest::Approx(21.8970e-15).epsilon(1e-4));
}

TEST_CASE("varactor is monotone non-increasing") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> cap(1e-15, 200e-15);
    std::uniform_real_distribution<double> slope(0.2, 20.0);
    std::uniform_real_distribution<double> volt(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double c1 = cap(rng), c2 = cap(rng);
        const VaractorModel m{std::min(c1, c2), std::max(c1, c2), volt(rng), slope(rng)};
        double v1 = volt(rng), v2 = volt(rng);
        if (v1 > v2) std::swap(v1, v2);
        CHECK(c_var(m, v1) >= c_var(m, v2));
        CHECK(c_var(m, v1) <= m.c_max);
        CHECK(c_var(m, v2) >= m.c_min);
    }
}

TEST_CASE("operating region classification") {
    CHECK(check_region(0.8, 0.8, 0.4) == Region::Saturation); // drain tied to gate level
    CHECK(check_region(0.8, 0.2, 0.4) == Region::Triode);     // drain below gate
    CHECK(check_region(0.3, 0.5, 0.4) == Region::Cutoff);
    // boundary: vds == vgs - vt counts as saturation
    CHECK(check_region(0.8, 0.4, 0.4) == Region::Saturation);
}

TEST_CASE("square-law drain current examples") {
    const auto dev = square_law(10e-3, 0.4);
    CHECK(drain_current(dev, 0.8, 0.8) == doctest::Approx(0.8e-3).epsilon(1e-12));
    CHECK(drain_current(dev, 0.4, 0.7) == 0.0);
    CHECK(drain_current(dev, 0.2, 0.7) == 0.0);
    // continuity at the triode/saturation boundary
    CHECK(drain_current(dev, 0.8, 0.4) == doctest::Approx(0.8e-3).epsilon(1e-12));
}

TEST_CASE("drain current is continuous across region boundaries") {
    const auto dev = square_law(25e-3, 0.35);
    const double eps = 1e-9;
    for (double vgs = 0.45; vgs <= 1.11; vgs += 0.1) {
        const double vov = vgs - dev.vt;
        const double below = drain_current(dev, vgs, vov - eps);
        const double above = drain_current(dev, vgs, vov + eps);
        CHECK(below == doctest::Approx(above).epsilon(1e-6));
        CHECK(drain_current(dev, vgs, vov) == doctest::Approx(0.5 * dev.beta * vov * vov).epsilon(1e-12));
    }
    // cutoff boundary in vgs
    CHECK(drain_current(dev, dev.vt, 0.5) == 0.0);
    CHECK(drain_current(dev, dev.vt + eps, 0.5) < 1e-15);
}

TEST_CASE("finite-difference transconductance ties to beta*(vgs-vt)") {
    const auto dev = square_law(40e-3, 0.4);
    const double vgs = 0.75, vds = 0.9, h = 1e-5; // saturation bias
    REQUIRE(check_region(vgs, vds, dev.vt) == Region::Saturation);
    const double diff = (drain_current(dev, vgs + h, vds) - drain_current(dev, vgs - h, vds)) / (2.0 * h);
    CHECK(diff == doctest::Approx(dev.beta * (vgs - dev.vt)).epsilon(1e-6));
}

TEST_CASE("parameter validation rejects bad values") {
    auto dev = square_law(10e-3, 0.4);
    CHECK_NOTHROW(dev.validate());
    dev.gm = 0.0;
    CHECK_THROWS_AS(dev.validate(), ValidationError);

    TankParams tank{1e-9, 300.0, 0.0, 0.0};
    CHECK_NOTHROW(tank.validate());
    tank.l = -1e-9;
    CHECK_THROWS_AS(tank.validate(), ValidationError);

    VaractorModel var{0.0, 60e-15, 0.5, 3.0};
    CHECK_THROWS_AS(var.validate(), ValidationError);
    CHECK_NOTHROW(var_20_60().validate());
}
