#include <doctest.h>

#include <string>

#include "oscide/io.hpp"

using namespace oscide;

TEST_CASE("engineering formatting keeps four significant digits") {
    CHECK(io::format_eng(2.500004e10, "Hz") == "25.00 GHz");
    CHECK(io::format_eng(5.0329e9, "Hz") == "5.033 GHz");
    CHECK(io::format_eng(0.5, "V") == "500.0 mV");
    CHECK(io::format_eng(65.14e-15, "F") == "65.14 fF");
    CHECK(io::format_eng(375.03, "Ohm") == "375.0 Ohm");
    CHECK(io::format_eng(-400.0, "Ohm") == "-400.0 Ohm");
    CHECK(io::format_eng(2.0000098, "") == "2.000");
    CHECK(io::format_eng(1.125, "") == "1.125");
    CHECK(io::format_eng(0.0, "F") == "0 F");
}

TEST_CASE("plain numbers are locale independent") {
    CHECK(io::format_number(0.25) == "0.25");
    CHECK(io::format_number(2.5e10) == "2.5e+10");
    CHECK(io::format_number(-1.30000001) == "-1.30000001");
}

TEST_CASE("CSV schemas") {
    tuning::TuningCurve curve;
    curve.points = {{0.0, 6e-14, 2.1e10}, {0.5, 4e-14, 2.4e10}, {1.0, 2e-14, 2.61e10}};
    const auto summary = tuning::summarize(curve);
    const auto csv = io::tuning_csv(curve, summary);
    CHECK(csv.rfind("v_tune_V,c_var_F,f_Hz\n", 0) == 0);
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.back() == '\n');
    CHECK(csv.find("# f_min_Hz = 2.1e+10\n") != std::string::npos);
    CHECK(csv.find("# kvco_mid_Hz_per_V = ") != std::string::npos);

    noise::NoiseSpectrum spec;
    spec.points = {{1e7, -120.5}, {1e8, -140.5}};
    const auto ncsv = io::noise_csv(spec);
    CHECK(ncsv == "offset_Hz,L_dBc_Hz\n10000000,-120.5\n100000000,-140.5\n");

    transient::TransientTrace tr;
    tr.samples = {{0.0, 1.0, -1.0, 0.5}, {1e-12, 0.9, -0.9, 0.4}};
    const auto tcsv = io::trace_csv(tr);
    CHECK(tcsv.rfind("t_s,v_plus_V,v_minus_V,i_l_A\n", 0) == 0);
    CHECK(tcsv.find("0,1,-1,0.5\n") != std::string::npos);
}

TEST_CASE("SVG plot has axes, ticks and the polyline") {
    const std::vector<double> xs{0.0, 0.5, 1.0};
    const std::vector<double> ys{21e9, 24e9, 26.1e9};
    const auto svg = io::svg_line_plot("tuning curve", "v_tune (V)", "f (Hz)", xs, ys);
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("tuning curve") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    // deterministic output
    CHECK(svg == io::svg_line_plot("tuning curve", "v_tune (V)", "f (Hz)", xs, ys));
}
