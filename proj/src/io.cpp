#include "oscide/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "oscide/errors.hpp"

namespace oscide::io {

namespace {

std::string printf_str(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

} // namespace

std::string format_number(double value) { return printf_str("%.9g", value); }

std::string format_eng(double value, const std::string& unit) {
    if (!std::isfinite(value)) return printf_str("%g", value) + (unit.empty() ? "" : " " + unit);
    std::string out;
    if (value == 0.0) {
        out = "0";
    } else {
        static constexpr const char* kPrefix[] = {"f", "p", "n", "u", "m", "", "k", "M", "G", "T"};
        double mag = std::abs(value);
        int idx = 5; // no prefix
        while (mag >= 1000.0 && idx < 9) {
            mag /= 1000.0;
            ++idx;
        }
        while (mag < 1.0 && idx > 0) {
            mag *= 1000.0;
            --idx;
        }
        // four significant digits
        const char* fmt = mag < 10.0 ? "%.3f" : (mag < 100.0 ? "%.2f" : "%.1f");
        out = (value < 0.0 ? "-" : "") + printf_str(fmt, mag);
        if (!unit.empty()) return out + " " + kPrefix[idx] + unit;
        if (kPrefix[idx][0] != '\0') return out + " " + kPrefix[idx];
        return out;
    }
    return unit.empty() ? out : out + " " + unit;
}

std::string tuning_csv(const tuning::TuningCurve& curve, const tuning::TuningSummary& summary) {
    std::string out = "v_tune_V,c_var_F,f_Hz\n";
    for (const auto& p : curve.points)
        out += format_number(p.v_tune) + "," + format_number(p.c_var) + "," + format_number(p.f) + "\n";
    out += "# f_min_Hz = " + format_number(summary.f_min) + "\n";
    out += "# f_max_Hz = " + format_number(summary.f_max) + "\n";
    out += "# absolute_range_Hz = " + format_number(summary.absolute_range) + "\n";
    out += "# fractional_range = " + format_number(summary.fractional_range) + "\n";
    out += "# kvco_mid_Hz_per_V = " + format_number(summary.kvco_mid) + "\n";
    return out;
}

std::string noise_csv(const noise::NoiseSpectrum& spectrum) {
    std::string out = "offset_Hz,L_dBc_Hz\n";
    for (const auto& p : spectrum.points)
        out += format_number(p.offset_hz) + "," + format_number(p.l_dbc_hz) + "\n";
    return out;
}

std::string trace_csv(const transient::TransientTrace& trace) {
    std::string out = "t_s,v_plus_V,v_minus_V,i_l_A\n";
    out.reserve(out.size() + trace.samples.size() * 48);
    char buf[160];
    for (const auto& s : trace.samples) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", s.t, s.v_plus, s.v_minus, s.i_l);
        out += buf;
    }
    return out;
}

std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw DomainError("svg_line_plot: need equal non-empty series");
    const double width = 640.0, height = 480.0;
    const double ml = 80.0, mr = 24.0, mt = 44.0, mb = 56.0;
    double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
        xmin = std::min(xmin, xs[i]);
        xmax = std::max(xmax, xs[i]);
        ymin = std::min(ymin, ys[i]);
        ymax = std::max(ymax, ys[i]);
    }
    if (xmax == xmin) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax == ymin) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    char buf[256];
    // axes
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", ml,
                  height - mb, width - mr, height - mb);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", ml, mt, ml,
                  height - mb);
    svg += buf;
    // ticks and labels
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", px(xv),
                      height - mb, px(xv), height - mb + 5.0);
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"middle\">%.4g</text>\n", px(xv),
                      height - mb + 18.0, xv);
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", ml - 5.0,
                      py(yv), ml, py(yv));
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.4g</text>\n", ml - 8.0,
                      py(yv) + 4.0, yv);
        svg += buf;
    }
    // series
    svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(xs[i]), py(ys[i]));
        svg += buf;
    }
    svg += "\"/>\n";
    // labels
    svg += "<text x=\"320\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">" + title + "</text>\n";
    svg += "<text x=\"320\" y=\"470\" font-size=\"12\" text-anchor=\"middle\">" + x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"240\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 240)\">" +
           y_label + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace oscide::io
