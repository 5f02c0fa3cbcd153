// oscide - cross-coupled LC VCO design and verification front end.
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscide/config.hpp"
#include "oscide/design.hpp"
#include "oscide/errors.hpp"
#include "oscide/io.hpp"
#include "oscide/mna.hpp"
#include "oscide/noise.hpp"
#include "oscide/transient.hpp"
#include "oscide/tuning.hpp"

namespace {

using namespace oscide;
namespace fs = std::filesystem;

std::string bool_str(bool b) { return b ? "true" : "false"; }

// "start:stop:log|lin:count" -> offset list
std::vector<double> parse_offsets(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) throw UsageError("offsets must be start:stop:log|lin:count, got '" + spec + "'");
    const double start = config::parse_engineering(parts[0]);
    const double stop = config::parse_engineering(parts[1]);
    const std::string scale = parts[2];
    int count = 0;
    try {
        count = std::stoi(parts[3]);
    } catch (...) {
        throw UsageError("offsets count must be an integer, got '" + parts[3] + "'");
    }
    if (count < 1) throw UsageError("offsets count must be >= 1");
    if (!(start > 0.0) || !(stop > start))
        throw UsageError("offsets need 0 < start < stop");
    std::vector<double> out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    if (scale == "log") {
        const double ratio = std::log(stop / start);
        for (int i = 0; i < count; ++i)
            out.push_back(i + 1 == count ? stop : start * std::exp(ratio * double(i) / double(count - 1)));
    } else if (scale == "lin") {
        for (int i = 0; i < count; ++i)
            out.push_back(i + 1 == count ? stop : start + (stop - start) * double(i) / double(count - 1));
    } else {
        throw UsageError("offsets scale must be 'log' or 'lin', got '" + scale + "'");
    }
    return out;
}

void warn_margin(const design::StartupReport& rep) {
    if (rep.margin < 2.0)
        std::cerr << "warning: start-up margin " << io::format_eng(rep.margin, "")
                  << " is below the recommended minimum of 2\n";
}

noise::NoiseParams noise_params_for(const config::RunConfig& cfg) {
    if (!cfg.noise)
        throw ValidationError("config has no [noise] section (v_max and temperature are required)");
    const double v_mid = cfg.v_mid_sweep();
    const double cv = c_var(cfg.varactor, v_mid);
    return {cfg.noise->v_max, cfg.tank.rp, design::c_total(cfg.device, cfg.tank, cv, cfg.topology),
            design::osc_freq(cfg.device, cfg.tank, cv, cfg.topology), cfg.noise->temperature};
}

void cmd_analyze(const std::string& cfg_path) {
    const auto cfg = config::parse_config(cfg_path);
    const double v_mid = cfg.v_mid_sweep();
    const double cv = c_var(cfg.varactor, v_mid);
    const auto rep = design::startup_margin(cfg.device, cfg.tank, cfg.topology);
    const double ct = design::c_total(cfg.device, cfg.tank, cv, cfg.topology);
    const double f0 = design::osc_freq(cfg.device, cfg.tank, cv, cfg.topology);
    std::cout << "topology = " << to_string(cfg.topology) << "\n"
              << "v_tune = " << io::format_eng(v_mid, "V") << "\n"
              << "c_var = " << io::format_eng(cv, "F") << "\n"
              << "c_total = " << io::format_eng(ct, "F") << "\n"
              << "r_neg = " << io::format_eng(rep.r_neg_magnitude, "Ohm") << "\n"
              << "r_loss = " << io::format_eng(rep.r_loss, "Ohm") << "\n"
              << "margin = " << io::format_eng(rep.margin, "") << "\n"
              << "oscillates = " << bool_str(rep.oscillates) << "\n"
              << "f_o = " << io::format_eng(f0, "Hz") << "\n";
    warn_margin(rep);
}

void cmd_tune(const std::string& cfg_path, const std::string& out_path, bool svg) {
    const auto cfg = config::parse_config(cfg_path);
    const auto curve =
        tuning::sweep(cfg.device, cfg.tank, cfg.varactor, cfg.topology, cfg.sweep.v_lo, cfg.sweep.v_hi, cfg.sweep.n);
    const auto summary = tuning::summarize(curve);
    io::write_file(out_path, io::tuning_csv(curve, summary));
    if (svg) {
        std::vector<double> xs, ys;
        for (const auto& p : curve.points) {
            xs.push_back(p.v_tune);
            ys.push_back(p.f);
        }
        io::write_file(fs::path(out_path).replace_extension("svg").string(),
                       io::svg_line_plot("tuning curve", "v_tune (V)", "f (Hz)", xs, ys));
    }
}

void cmd_noise(const std::string& cfg_path, const std::string& offsets_spec, const std::string& out_path, bool svg) {
    const auto cfg = config::parse_config(cfg_path);
    const auto np = noise_params_for(cfg);
    const auto spectrum = noise::noise_spectrum(np, parse_offsets(offsets_spec));
    io::write_file(out_path, io::noise_csv(spectrum));
    if (svg) {
        std::vector<double> xs, ys;
        for (const auto& p : spectrum.points) {
            xs.push_back(std::log10(p.offset_hz));
            ys.push_back(p.l_dbc_hz);
        }
        io::write_file(fs::path(out_path).replace_extension("svg").string(),
                       io::svg_line_plot("phase noise", "log10(offset_Hz)", "L (dBc/Hz)", xs, ys));
    }
}

void cmd_transient(const std::string& cfg_path, const std::string& out_path) {
    const auto cfg = config::parse_config(cfg_path);
    if (!cfg.sim) throw ValidationError("config has no [sim] section");
    const double cv = c_var(cfg.varactor, cfg.v_mid_sweep());
    const auto trace = transient::simulate(cfg.device, cfg.tank, cv, cfg.topology, *cfg.sim);
    io::write_file(out_path, io::trace_csv(trace));
    const auto rep = transient::steady_state(trace);
    std::cout << "started = " << bool_str(rep.started) << "\n"
              << "frequency = " << io::format_eng(rep.frequency, "Hz") << "\n"
              << "amplitude = " << io::format_eng(rep.amplitude, "V") << "\n"
              << "envelope_slope = " << io::format_number(rep.envelope_slope) << " 1/s\n";
}

tuning::TopologyConfig side_of(const config::RunConfig& cfg) {
    return {cfg.device, cfg.tank, cfg.varactor, cfg.topology, cfg.sweep.v_lo, cfg.sweep.v_hi, cfg.sweep.n};
}

void cmd_compare(const std::string& cfg_casc_path, const std::string& cfg_conv_path, const std::string& out_dir,
                 const std::string& offsets_spec) {
    const auto cfg_c = config::parse_config(cfg_casc_path);
    const auto cfg_v = config::parse_config(cfg_conv_path);
    if (cfg_c.topology != Topology::Cascode)
        throw ValidationError("first compare config must have topology = \"cascode\"");
    if (cfg_v.topology != Topology::Conventional)
        throw ValidationError("second compare config must have topology = \"conventional\"");
    if (!cfg_c.noise) throw ValidationError("cascode config has no [noise] section");
    tuning::NoiseInputs ni{cfg_c.noise->v_max, cfg_c.noise->temperature, parse_offsets(offsets_spec)};
    const auto rep = tuning::compare_topologies(side_of(cfg_c), side_of(cfg_v), ni);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    auto row = [](const std::string& q, const std::string& a, const std::string& b) {
        return q + "," + a + "," + b + "\n";
    };
    auto num_row = [&](const std::string& q, double a, double b) {
        return row(q, io::format_number(a), io::format_number(b));
    };
    std::string summary = "quantity,cascode,conventional\n";
    summary += num_row("f_min_Hz", rep.cascode.tuning.f_min, rep.conventional.tuning.f_min);
    summary += num_row("f_max_Hz", rep.cascode.tuning.f_max, rep.conventional.tuning.f_max);
    summary += num_row("absolute_range_Hz", rep.cascode.tuning.absolute_range, rep.conventional.tuning.absolute_range);
    summary += num_row("fractional_range", rep.cascode.tuning.fractional_range, rep.conventional.tuning.fractional_range);
    summary += num_row("kvco_mid_Hz_per_V", rep.cascode.tuning.kvco_mid, rep.conventional.tuning.kvco_mid);
    summary += num_row("r_neg_Ohm", rep.cascode.startup.r_neg_magnitude, rep.conventional.startup.r_neg_magnitude);
    summary += num_row("r_loss_Ohm", rep.cascode.startup.r_loss, rep.conventional.startup.r_loss);
    summary += num_row("margin", rep.cascode.startup.margin, rep.conventional.startup.margin);
    summary += row("oscillates", bool_str(rep.cascode.startup.oscillates), bool_str(rep.conventional.startup.oscillates));
    summary += num_row("c_total_mid_F", rep.cascode.c_total_mid, rep.conventional.c_total_mid);
    summary += num_row("f0_mid_Hz", rep.cascode.f0_mid, rep.conventional.f0_mid);
    summary += num_row("L_dBc_Hz_at_max_offset", rep.cascode.spectrum.points.back().l_dbc_hz,
                       rep.conventional.spectrum.points.back().l_dbc_hz);
    io::write_file((dir / "summary.csv").string(), summary);

    std::string noise_csv = "offset_Hz,L_cascode_dBc_Hz,L_conventional_dBc_Hz\n";
    for (std::size_t i = 0; i < rep.cascode.spectrum.points.size(); ++i) {
        noise_csv += io::format_number(rep.cascode.spectrum.points[i].offset_hz) + "," +
                     io::format_number(rep.cascode.spectrum.points[i].l_dbc_hz) + "," +
                     io::format_number(rep.conventional.spectrum.points[i].l_dbc_hz) + "\n";
    }
    io::write_file((dir / "noise.csv").string(), noise_csv);

    const auto curve_c = tuning::sweep(cfg_c.device, cfg_c.tank, cfg_c.varactor, Topology::Cascode, cfg_c.sweep.v_lo,
                                       cfg_c.sweep.v_hi, cfg_c.sweep.n);
    io::write_file((dir / "tuning_cascode.csv").string(), io::tuning_csv(curve_c, rep.cascode.tuning));
    const auto curve_v = tuning::sweep(cfg_v.device, cfg_v.tank, cfg_v.varactor, Topology::Conventional,
                                       cfg_v.sweep.v_lo, cfg_v.sweep.v_hi, cfg_v.sweep.n);
    io::write_file((dir / "tuning_conventional.csv").string(), io::tuning_csv(curve_v, rep.conventional.tuning));

    std::string verdict;
    verdict += "higher_tuning_range = " + bool_str(rep.higher_tuning_range) + "\n";
    verdict += "higher_vco_gain = " + bool_str(rep.higher_vco_gain) + "\n";
    verdict += "lower_phase_noise = " + bool_str(rep.lower_phase_noise) + "\n";
    verdict += "noise_delta_dB_at_max_offset = " + io::format_number(rep.noise_delta_at_max_offset) + "\n";
    io::write_file((dir / "verdict.txt").string(), verdict);
    std::cout << verdict;
}

void cmd_calibrate(const std::string& cfg_path, const std::string& fmin, const std::string& fmax,
                   const std::string& kvco) {
    const auto cfg = config::parse_config(cfg_path);
    tuning::CalibrationTarget target{};
    target.f_min_target = config::parse_engineering(fmin);
    target.f_max_target = config::parse_engineering(fmax);
    target.v_lo = cfg.sweep.v_lo;
    target.v_hi = cfg.sweep.v_hi;
    if (!kvco.empty()) target.kvco_mid_target = config::parse_engineering(kvco);
    const auto result = tuning::calibrate(cfg.device, cfg.tank, cfg.topology, target);
    std::cout << "[varactor]\n"
              << "c_min = " << io::format_number(result.model.c_min) << "\n"
              << "c_max = " << io::format_number(result.model.c_max) << "\n"
              << "v_mid = " << io::format_number(result.model.v_mid) << "\n"
              << "alpha = " << io::format_number(result.model.alpha) << "\n";
    std::cerr << "residual f_min = " << io::format_number(result.residual_f_min) << " (relative)\n"
              << "residual f_max = " << io::format_number(result.residual_f_max) << " (relative)\n";
    if (result.residual_kvco)
        std::cerr << "residual kvco = " << io::format_number(*result.residual_kvco) << " (relative)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cross-coupled LC VCO design and verification toolkit"};
    app.require_subcommand(1);

    std::string cfg_path, cfg2_path, out_path, offsets = "1e7:8e8:log:50";
    std::string fmin, fmax, kvco;
    bool svg = false;

    auto* analyze = app.add_subcommand("analyze", "start-up margin, tank capacitance and frequency");
    analyze->add_option("config", cfg_path, "config file")->required();

    auto* tune = app.add_subcommand("tune", "tuning-voltage sweep to CSV");
    tune->add_option("config", cfg_path)->required();
    tune->add_option("-o,--output", out_path, "output CSV path")->required();
    tune->add_flag("--svg", svg, "also write a static SVG plot");

    auto* noise_cmd = app.add_subcommand("noise", "phase-noise spectrum to CSV");
    noise_cmd->add_option("config", cfg_path)->required();
    noise_cmd->add_option("--offsets", offsets, "start:stop:log|lin:count (default 1e7:8e8:log:50)");
    noise_cmd->add_option("-o,--output", out_path, "output CSV path")->required();
    noise_cmd->add_flag("--svg", svg, "also write a static SVG plot");

    auto* transient_cmd = app.add_subcommand("transient", "time-domain simulation to CSV");
    transient_cmd->add_option("config", cfg_path)->required();
    transient_cmd->add_option("-o,--output", out_path, "output trace CSV path")->required();

    auto* compare = app.add_subcommand("compare", "side-by-side cascode/conventional report");
    compare->add_option("cascode_config", cfg_path)->required();
    compare->add_option("conventional_config", cfg2_path)->required();
    compare->add_option("-o,--output", out_path, "output report directory")->required();
    compare->add_option("--offsets", offsets, "shared noise offsets");

    auto* calibrate = app.add_subcommand("calibrate", "fit the varactor model to frequency targets");
    calibrate->add_option("config", cfg_path)->required();
    calibrate->add_option("--fmin", fmin, "low-end frequency target (e.g. 21.0G)")->required();
    calibrate->add_option("--fmax", fmax, "high-end frequency target (e.g. 26.1G)")->required();
    calibrate->add_option("--kvco", kvco, "midpoint VCO gain target (e.g. 8G)");

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) cmd_analyze(cfg_path);
        else if (tune->parsed()) cmd_tune(cfg_path, out_path, svg);
        else if (noise_cmd->parsed()) cmd_noise(cfg_path, offsets, out_path, svg);
        else if (transient_cmd->parsed()) cmd_transient(cfg_path, out_path);
        else if (compare->parsed()) cmd_compare(cfg_path, cfg2_path, out_path, offsets);
        else if (calibrate->parsed()) cmd_calibrate(cfg_path, fmin, fmax, kvco);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << "ERROR USAGE: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "ERROR " << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ERROR INTERNAL: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
