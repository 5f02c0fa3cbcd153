// Acceptance suite for the VCO toolkit: prints one PASS/FAIL line per
// criterion and exits nonzero if any fail. The CLI binary and the committed
// config directory come in through --cli / --configs.
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oscide/config.hpp"
#include "oscide/design.hpp"
#include "oscide/errors.hpp"
#include "oscide/mna.hpp"
#include "oscide/noise.hpp"
#include "oscide/transient.hpp"
#include "oscide/tuning.hpp"

namespace fs = std::filesystem;
using namespace oscide;

namespace {

struct Ctx {
    std::string cli;
    std::string configs;
    fs::path workdir;
    std::vector<std::string> issues;

    void require(bool ok, const std::string& detail) {
        if (!ok) issues.push_back(detail);
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

DeviceParams make_dev(double gm, double ro, double cgs, double gm_triode = 0.0, double beta = 100e-3,
                      double vt = 0.4) {
    DeviceParams d;
    d.gm = gm;
    d.gm_triode = gm_triode > 0.0 ? gm_triode : gm;
    d.ro = ro;
    d.cgs = cgs;
    d.beta = beta;
    d.vt = vt;
    return d;
}

double pair_r_equiv(const DeviceParams& dev, Topology topo) {
    const auto nl = mna::build_pair_netlist(dev, topo);
    return mna::input_admittance(nl, {nl.probe_pos, nl.probe_neg}, 2.0 * std::numbers::pi * 1e6).r_equiv;
}

// ---- criteria ----------------------------------------------------------

void criterion_negative_resistance(Ctx& c) {
    for (double gm : {5e-3, 10e-3, 20e-3}) {
        const auto dev = make_dev(gm, 1e4 / gm, 0.0);
        const double r_casc = pair_r_equiv(dev, Topology::Cascode);
        const double r_conv = pair_r_equiv(dev, Topology::Conventional);
        c.require(std::abs(r_casc - (-4.0 / gm)) <= 0.005 * (4.0 / gm),
                  "cascode r_equiv " + fmt(r_casc) + " vs -4/gm " + fmt(-4.0 / gm));
        c.require(std::abs(r_conv - (-2.0 / gm)) <= 0.005 * (2.0 / gm),
                  "conventional r_equiv " + fmt(r_conv) + " vs -2/gm " + fmt(-2.0 / gm));
        const double ratio = r_casc / r_conv;
        c.require(std::abs(ratio - 2.0) <= 0.01, "cascode/conventional ratio " + fmt(ratio) + " vs 2.000");
    }
}

void criterion_capacitance(Ctx& c) {
    const double gm = 10e-3;
    const double kappa = mna::extract_capacitance_coefficient(make_dev(gm, 1e4 / gm, 40e-15), Topology::Cascode);
    c.require(std::abs(kappa - 0.875) <= 0.01 * 0.875, "cascode coefficient " + fmt(kappa) + " vs 0.875 +-1%");

    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> cap(0.0, 120e-15);
    for (int trial = 0; trial < 50; ++trial) {
        const auto dev = make_dev(gm, 1e6, cap(rng));
        const TankParams tank{300e-12, 300.0, cap(rng), cap(rng)};
        const double cv = cap(rng);
        const double ct = design::c_total(dev, tank, cv, Topology::Cascode);
        const double half_bracket = 0.5 * (1.75 * dev.cgs + tank.cp + tank.cl + cv);
        c.require(std::abs(ct - half_bracket) <= 8.0 * std::numeric_limits<double>::epsilon() * half_bracket,
                  "c_total identity off: " + fmt(ct) + " vs " + fmt(half_bracket));
    }
}

void criterion_frequency_crosscheck(Ctx& c) {
    const auto cfg = config::parse_config(c.configs + "/cascode_25ghz.toml");
    const auto margin = design::startup_margin(cfg.device, cfg.tank, cfg.topology).margin;
    c.require(std::abs(margin - 2.0) < 0.05, "committed design margin " + fmt(margin) + " not ~2");
    const double cv = c_var(cfg.varactor, cfg.v_mid_sweep());
    const auto check = transient::verify_against_closed_form(cfg.device, cfg.tank, cv, cfg.topology, *cfg.sim);
    c.require(check.pass && check.relative_error <= 0.02,
              "transient " + fmt(check.f_transient) + " vs formula " + fmt(check.f_formula) + " (error " +
                  fmt(check.relative_error * 100.0) + "%)");

    // lossless linear tank: 1 nH / 1 pF rings at 5.0329 GHz
    DeviceParams inert{};
    inert.ro = 1e9;
    inert.vt = 0.4;
    const TankParams tank{1e-9, std::numeric_limits<double>::infinity(), 1e-12, 0.0};
    const double f_expect = 1.0 / (2.0 * std::numbers::pi * std::sqrt(1e-21));
    transient::SimConfig sc;
    sc.dt = 1.0 / (f_expect * 250.0);
    sc.t_end = 240.0 / f_expect;
    sc.v_perturb = 10e-3;
    const auto trace = transient::simulate(inert, tank, 0.0, Topology::Conventional, sc);
    const double f = transient::zero_crossing_frequency(trace);
    c.require(std::abs(f - f_expect) <= 1e-3 * f_expect,
              "lossless ring-down " + fmt(f) + " vs " + fmt(f_expect) + " beyond 0.1%");
}

void criterion_startup_direction(Ctx& c) {
    // conventional topology: the closed-form negative conductance and the
    // square-law devices coincide exactly, so the grid brackets the boundary
    const TankParams tank{200e-12, 600.0, 80e-15, 40e-15};
    const double cvar = 65.14e-15;
    const double r_loss = design::parallel(20e3, tank.rp);
    for (double margin : {0.5, 0.8, 1.2, 2.0, 3.0}) {
        const auto dev = make_dev(2.0 * margin / r_loss, 20e3, 10e-15);
        const auto rep = design::startup_margin(dev, tank, Topology::Conventional);
        c.require(std::abs(rep.margin - margin) < 1e-9, "margin setup off at " + fmt(margin));
        const double f = design::osc_freq(dev, tank, cvar, Topology::Conventional);
        transient::SimConfig sc;
        sc.dt = 1.0 / (f * 400.0);
        sc.t_end = 500.0 / f;
        const auto state = transient::steady_state(transient::simulate(dev, tank, cvar, Topology::Conventional, sc));
        if (margin < 0.9) {
            c.require(!state.started && !rep.oscillates,
                      "margin " + fmt(margin) + ": expected decay, got started=" + (state.started ? "true" : "false"));
            c.require(state.amplitude < sc.v_perturb,
                      "margin " + fmt(margin) + ": amplitude " + fmt(state.amplitude) + " did not decay");
        } else if (margin > 1.1) {
            c.require(state.started && rep.oscillates,
                      "margin " + fmt(margin) + ": expected growth, got started=" + (state.started ? "true" : "false"));
            c.require(state.amplitude >= 10.0 * sc.v_perturb,
                      "margin " + fmt(margin) + ": amplitude " + fmt(state.amplitude) + " too small");
        }
    }
}

void criterion_phase_noise(Ctx& c) {
    const noise::NoiseParams anchor{0.8, 300.0, 100e-15, 25e9, 300.0};
    const double l = noise::ssb_phase_noise(anchor, 10e6);
    c.require(std::abs(l - (-125.63)) <= 0.01, "anchor " + fmt(l) + " vs -125.63 +-0.01 dB");

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const noise::NoiseParams p{0.1 + u(rng), 50.0 + 900.0 * u(rng), (20.0 + 160.0 * u(rng)) * 1e-15,
                                   (8.0 + 40.0 * u(rng)) * 1e9, 200.0 + 200.0 * u(rng)};
        const double df = 1e6 * (1.0 + 20.0 * u(rng));
        const double slope = noise::ssb_phase_noise(p, 10.0 * df) - noise::ssb_phase_noise(p, df);
        c.require(std::abs(slope + 20.0) <= 1e-9, "decade slope " + fmt(slope) + " not -20 dB");
        const double base = noise::ssb_phase_noise(p, df);
        noise::NoiseParams q = p;
        q.rp *= 2.0;
        c.require(noise::ssb_phase_noise(q, df) < base, "not decreasing in rp");
        q = p;
        q.c_total *= 2.0;
        c.require(noise::ssb_phase_noise(q, df) < base, "not decreasing in c_total");
        q = p;
        q.v_max *= 2.0;
        c.require(noise::ssb_phase_noise(q, df) < base, "not decreasing in v_max");
    }
}

struct CalTarget {
    const char* file;
    double f_min, f_max, kvco;
};

void criterion_tuning_closure(Ctx& c) {
    const CalTarget targets[] = {{"/cascode_calibrated.toml", 21.0e9, 26.1e9, 8.0e9},
                                 {"/conventional_calibrated.toml", 22.6e9, 26.8e9, 5.3e9}};
    double ranges[2] = {};
    for (int i = 0; i < 2; ++i) {
        const auto cfg = config::parse_config(c.configs + targets[i].file);
        const tuning::CalibrationTarget t{targets[i].f_min, targets[i].f_max, targets[i].kvco, cfg.sweep.v_lo,
                                          cfg.sweep.v_hi};
        const auto fit = tuning::calibrate(cfg.device, cfg.tank, cfg.topology, t);
        const auto curve = tuning::sweep(cfg.device, cfg.tank, fit.model, cfg.topology, cfg.sweep.v_lo,
                                         cfg.sweep.v_hi, cfg.sweep.n);
        const auto s = tuning::summarize(curve);
        c.require(std::abs(s.f_min - targets[i].f_min) <= 50e6,
                  std::string(targets[i].file) + ": f_min " + fmt(s.f_min) + " off target");
        c.require(std::abs(s.f_max - targets[i].f_max) <= 50e6,
                  std::string(targets[i].file) + ": f_max " + fmt(s.f_max) + " off target");
        c.require(std::abs(s.kvco_mid - targets[i].kvco) <= 0.05 * targets[i].kvco,
                  std::string(targets[i].file) + ": kvco " + fmt(s.kvco_mid) + " off target");
        ranges[i] = s.absolute_range;
    }
    c.require(ranges[0] > ranges[1],
              "cascode range " + fmt(ranges[0]) + " does not exceed conventional " + fmt(ranges[1]));
}

noise::NoiseParams committed_noise_params(const config::RunConfig& cfg) {
    const double cv = c_var(cfg.varactor, cfg.v_mid_sweep());
    return {cfg.noise->v_max, cfg.tank.rp, design::c_total(cfg.device, cfg.tank, cv, cfg.topology),
            design::osc_freq(cfg.device, cfg.tank, cv, cfg.topology), cfg.noise->temperature};
}

void criterion_noise_closure(Ctx& c) {
    const auto casc = config::parse_config(c.configs + "/cascode_calibrated.toml");
    const auto conv = config::parse_config(c.configs + "/conventional_calibrated.toml");
    const auto np_c = committed_noise_params(casc);
    const auto np_v = committed_noise_params(conv);
    const double delta = noise::noise_delta(np_c, np_v, 800e6);
    c.require(std::abs(delta - (-1.3)) <= 0.5, "noise delta at 800 MHz " + fmt(delta) + " vs -1.3 +-0.5 dB");
    for (int i = 0; i < 50; ++i) {
        const double off = 1e7 * std::pow(80.0, double(i) / 49.0);
        const double lc = noise::ssb_phase_noise(np_c, off);
        const double lv = noise::ssb_phase_noise(np_v, off);
        c.require(lc < lv, "cascode not below conventional at " + fmt(off) + " Hz");
    }
}

// ---- determinism over the CLI ------------------------------------------

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const Ctx& c, const std::string& args, const std::string& tag) {
    const fs::path err_file = c.workdir / (tag + ".stderr");
    const std::string cmd = c.cli + " " + args + " 2>" + err_file.string();
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream ef(err_file, std::ios::binary);
    std::stringstream ss;
    ss << ef.rdbuf();
    r.err = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void criterion_determinism(Ctx& c) {
    const std::string cfg25 = c.configs + "/cascode_25ghz.toml";
    const std::string casc = c.configs + "/cascode_calibrated.toml";
    const std::string conv = c.configs + "/conventional_calibrated.toml";
    const fs::path w = c.workdir;

    struct Cmd {
        std::string name;
        std::string args_a, args_b;       // identical inputs, distinct outputs
        std::vector<fs::path> files_a, files_b;
    };
    std::vector<Cmd> cmds;
    cmds.push_back({"analyze", "analyze " + cfg25, "analyze " + cfg25, {}, {}});
    cmds.push_back({"tune",
                    "tune " + casc + " -o " + (w / "tune_a.csv").string() + " --svg",
                    "tune " + casc + " -o " + (w / "tune_b.csv").string() + " --svg",
                    {w / "tune_a.csv", w / "tune_a.svg"},
                    {w / "tune_b.csv", w / "tune_b.svg"}});
    cmds.push_back({"noise",
                    "noise " + casc + " --offsets 1e7:8e8:log:50 -o " + (w / "noise_a.csv").string() + " --svg",
                    "noise " + casc + " --offsets 1e7:8e8:log:50 -o " + (w / "noise_b.csv").string() + " --svg",
                    {w / "noise_a.csv", w / "noise_a.svg"},
                    {w / "noise_b.csv", w / "noise_b.svg"}});
    cmds.push_back({"transient",
                    "transient " + cfg25 + " -o " + (w / "tr_a.csv").string(),
                    "transient " + cfg25 + " -o " + (w / "tr_b.csv").string(),
                    {w / "tr_a.csv"},
                    {w / "tr_b.csv"}});
    const std::vector<std::string> report_files = {"summary.csv", "noise.csv", "tuning_cascode.csv",
                                                   "tuning_conventional.csv", "verdict.txt"};
    Cmd cmp{"compare",
            "compare " + casc + " " + conv + " -o " + (w / "rep_a").string(),
            "compare " + casc + " " + conv + " -o " + (w / "rep_b").string(),
            {},
            {}};
    for (const auto& f : report_files) {
        cmp.files_a.push_back(w / "rep_a" / f);
        cmp.files_b.push_back(w / "rep_b" / f);
    }
    cmds.push_back(cmp);
    cmds.push_back({"calibrate", "calibrate " + casc + " --fmin 21.0G --fmax 26.1G --kvco 8G",
                    "calibrate " + casc + " --fmin 21.0G --fmax 26.1G --kvco 8G", {}, {}});

    for (const auto& cmd : cmds) {
        const auto a = run_cli(c, cmd.args_a, cmd.name + "_a");
        const auto b = run_cli(c, cmd.args_b, cmd.name + "_b");
        c.require(a.status == 0, cmd.name + ": first run exited " + std::to_string(a.status) + " " + a.err);
        c.require(b.status == 0, cmd.name + ": second run exited " + std::to_string(b.status));
        c.require(a.err.find("ERROR ") == std::string::npos, cmd.name + ": stderr carries an ERROR line");
        c.require(a.out == b.out, cmd.name + ": stdout differs between runs");
        c.require(a.err == b.err, cmd.name + ": stderr differs between runs");
        for (std::size_t i = 0; i < cmd.files_a.size(); ++i) {
            const auto da = slurp(cmd.files_a[i]);
            const auto db = slurp(cmd.files_b[i]);
            c.require(!da.empty(), cmd.name + ": missing artifact " + cmd.files_a[i].string());
            c.require(da == db, cmd.name + ": artifact differs: " + cmd.files_a[i].filename().string());
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    ctx.cli = "./oscide";
    ctx.configs = "configs";
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") ctx.cli = argv[i + 1];
        else if (flag == "--configs") ctx.configs = argv[i + 1];
    }
    ctx.workdir = fs::current_path() / "acceptance_work";
    std::error_code ec;
    fs::remove_all(ctx.workdir, ec);
    fs::create_directories(ctx.workdir);

    struct Criterion {
        std::string name;
        std::function<void(Ctx&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {"negative-resistance anchors: -4/gm cascode, -2/gm conventional, ratio 2.000", criterion_negative_resistance},
        {"capacitance anchor: coefficient 0.875 and the half-bracket identity", criterion_capacitance},
        {"frequency cross-check: transient vs closed form at the 25 GHz point; lossless tank", criterion_frequency_crosscheck},
        {"start-up direction across the margin grid {0.5, 0.8, 1.2, 2.0, 3.0}", criterion_startup_direction},
        {"phase-noise evaluator: -125.63 dBc/Hz anchor, -20 dB/decade, monotonicity", criterion_phase_noise},
        {"tuning closure: calibrated endpoints and K_VCO for both topologies", criterion_tuning_closure},
        {"noise closure: -1.3 dB delta at 800 MHz, cascode below conventional", criterion_noise_closure},
        {"determinism: byte-identical CLI outputs on repeated runs", criterion_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        ctx.issues.clear();
        try {
            criteria[i].fn(ctx);
        } catch (const std::exception& e) {
            ctx.issues.push_back(std::string("exception: ") + e.what());
        }
        if (ctx.issues.empty()) {
            std::cout << "[PASS] criterion " << i + 1 << ": " << criteria[i].name << "\n";
        } else {
            ++failed;
            std::cout << "[FAIL] criterion " << i + 1 << ": " << criteria[i].name << "\n";
            for (const auto& d : ctx.issues) std::cout << "       - " << d << "\n";
        }
    }
    std::cout << "acceptance: " << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
