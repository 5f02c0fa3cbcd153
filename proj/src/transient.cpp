// Nonlinear time-domain model of the differential LC oscillator.
//
// State vector: tank node voltages, stack midpoint voltages and the tail
// node (cascode), plus one current per inductor. Node charge balance is
// C*dv/dt = I(v, iL) with a constant capacitance matrix, factorized once.
// Integration is fixed-step RK4: deterministic, bit-reproducible traces.
#include "oscide/transient.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "oscide/design.hpp"
#include "oscide/errors.hpp"

namespace oscide::transient {

namespace {

constexpr int kMaxStates = 8;
using State = std::array<double, kMaxStates>;

// Square-law channel current from drain to source; terminals swap when the
// nominal drain sits below the source.
double mos_current(const DeviceParams& dev, double vg, double vd, double vs) {
    if (vd >= vs) return drain_current(dev, vg - vs, vd - vs);
    return -drain_current(dev, vg - vd, vs - vd);
}

// Dense real LU (partial pivoting) for the nodal capacitance matrix.
struct LuFactors {
    int n = 0;
    std::array<std::array<double, 5>, 5> a{};
    std::array<int, 5> perm{};

    void factor() {
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int k = 0; k < n; ++k) {
            int pivot = k;
            for (int i = k + 1; i < n; ++i)
                if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
            if (std::abs(a[pivot][k]) <= 0.0)
                throw DomainError("transient: node " + std::to_string(k) +
                                  " has no capacitance to integrate (cgs or tank capacitance required)");
            if (pivot != k) {
                std::swap(a[pivot], a[k]);
                std::swap(perm[pivot], perm[k]);
            }
            for (int i = k + 1; i < n; ++i) {
                a[i][k] /= a[k][k];
                for (int j = k + 1; j < n; ++j) a[i][j] -= a[i][k] * a[k][j];
            }
        }
    }

    void solve(const double* b, double* x) const {
        double y[5];
        for (int i = 0; i < n; ++i) {
            double s = b[perm[i]];
            for (int j = 0; j < i; ++j) s -= a[i][j] * y[j];
            y[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = y[i];
            for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
            x[i] = s / a[i][i];
        }
    }
};

struct Bias {
    double vdd;    // supply, V
    double v_mid;  // cascode stack midpoint DC, V
    double i_side; // per-side DC stack current, A
};

// Overdrive comes from the device itself (vov = gm/beta) so the operating
// point reproduces the small-signal gm. For the cascode stack the supply is
// vt + sqrt(2)*vov, which biases the top pair in saturation and the bottom
// pair in triode; the midpoint then satisfies the stack current balance.
Bias solve_bias(const DeviceParams& dev, Topology topology) {
    Bias b{};
    if (dev.beta <= 0.0) return b; // inert devices: unbiased passive tank
    const double vov = dev.gm / dev.beta;
    if (topology == Topology::Conventional) {
        b.vdd = dev.vt + vov;
        b.v_mid = 0.0;
        b.i_side = 0.5 * dev.beta * vov * vov;
        return b;
    }
    b.vdd = dev.vt + std::numbers::sqrt2 * vov;
    const double u = b.vdd - dev.vt;
    // fixed-point (Newton) iteration on the saturation/triode current balance
    double vc = 0.25 * u;
    for (int it = 0; it < 60; ++it) {
        const double h = 0.5 * (u - vc) * (u - vc) - (u * vc - 0.5 * vc * vc);
        const double dh = -2.0 * (u - vc);
        const double step = h / dh;
        vc -= step;
        if (std::abs(step) <= 1e-15 * u) break;
    }
    b.v_mid = vc;
    b.i_side = 0.5 * dev.beta * (u - vc) * (u - vc);
    return b;
}

struct Circuit {
    DeviceParams dev;
    TankParams tank;
    Topology topology;
    double c_side; // cp + cl + c_var per tank node
    double g_rp;   // differential loss conductance
    double l_tail;
    Bias bias;
    int n_nodes;  // 2 conventional, 5 cascode (A B [C D T])
    int n_states; // nodes + inductor currents
    LuFactors cap;

    Circuit(const DeviceParams& d, const TankParams& t, double cvar, Topology topo, double tail_ratio)
        : dev(d), tank(t), topology(topo) {
        c_side = t.cp + t.cl + cvar;
        g_rp = std::isfinite(t.rp) ? 1.0 / t.rp : 0.0;
        l_tail = tail_ratio * t.l;
        bias = solve_bias(d, topo);
        n_nodes = topology == Topology::Cascode ? 5 : 2;
        n_states = topology == Topology::Cascode ? 8 : 4;
        cap.n = n_nodes;
        auto add_cap = [&](int i, int j, double c) {
            if (c <= 0.0) return;
            if (i >= 0) cap.a[i][i] += c;
            if (j >= 0) cap.a[j][j] += c;
            if (i >= 0 && j >= 0) {
                cap.a[i][j] -= c;
                cap.a[j][i] -= c;
            }
        };
        add_cap(0, -1, c_side);
        add_cap(1, -1, c_side);
        if (topology == Topology::Cascode) {
            add_cap(1, 2, dev.cgs); // M1 gate B - source C
            add_cap(0, 3, dev.cgs); // M3 gate A - source D
            add_cap(1, 4, dev.cgs); // M2 gate B - source T
            add_cap(0, 4, dev.cgs); // M4 gate A - source T
        } else {
            add_cap(1, -1, dev.cgs); // gates sit on the tank nodes, sources grounded
            add_cap(0, -1, dev.cgs);
        }
        cap.factor();
    }

    State initial(double v_perturb) const {
        State x{};
        x[0] = bias.vdd + 0.5 * v_perturb;
        x[1] = bias.vdd - 0.5 * v_perturb;
        if (topology == Topology::Cascode) {
            x[2] = bias.v_mid;
            x[3] = bias.v_mid;
            x[4] = 0.0;
            x[5] = bias.i_side;
            x[6] = bias.i_side;
            x[7] = 2.0 * bias.i_side;
        } else {
            x[2] = bias.i_side;
            x[3] = bias.i_side;
        }
        return x;
    }

    void rhs(const State& x, State& dx) const {
        double inode[5] = {};
        if (topology == Topology::Cascode) {
            const double va = x[0], vb = x[1], vc = x[2], vd = x[3], vt = x[4];
            const double ila = x[5], ilb = x[6], ilt = x[7];
            inode[0] += ila;
            inode[1] += ilb;
            inode[4] -= ilt;
            const double irp = (vb - va) * g_rp;
            inode[0] += irp;
            inode[1] -= irp;
            const double i1 = mos_current(dev, vb, va, vc); // M1
            inode[0] -= i1;
            inode[2] += i1;
            const double i3 = mos_current(dev, va, vb, vd); // M3
            inode[1] -= i3;
            inode[3] += i3;
            const double i2 = mos_current(dev, vb, vc, vt); // M2
            inode[2] -= i2;
            inode[4] += i2;
            const double i4 = mos_current(dev, va, vd, vt); // M4
            inode[3] -= i4;
            inode[4] += i4;
            cap.solve(inode, dx.data());
            dx[5] = (bias.vdd - va) / tank.l;
            dx[6] = (bias.vdd - vb) / tank.l;
            dx[7] = vt / l_tail;
        } else {
            const double va = x[0], vb = x[1];
            const double ila = x[2], ilb = x[3];
            inode[0] += ila;
            inode[1] += ilb;
            const double irp = (vb - va) * g_rp;
            inode[0] += irp;
            inode[1] -= irp;
            inode[0] -= mos_current(dev, vb, va, 0.0);
            inode[1] -= mos_current(dev, va, vb, 0.0);
            cap.solve(inode, dx.data());
            dx[2] = (bias.vdd - va) / tank.l;
            dx[3] = (bias.vdd - vb) / tank.l;
        }
    }
};

std::vector<double> differential(const TransientTrace& trace) {
    std::vector<double> vd(trace.samples.size());
    for (std::size_t i = 0; i < vd.size(); ++i) vd[i] = trace.samples[i].v_plus - trace.samples[i].v_minus;
    return vd;
}

double peak_abs(const std::vector<double>& v, std::size_t from, std::size_t to) {
    double m = 0.0;
    for (std::size_t i = from; i < to; ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

// Rising zero crossings with a +-10% Schmitt band around zero: a crossing
// counts only after the signal has come from below -h and reached +h, and its
// time is the linear interpolation of the last upward sign change inside the
// transition. Noise inside the band cannot create or destroy crossings.
std::vector<double> rising_crossings(const TransientTrace& trace, const std::vector<double>& vd, std::size_t from) {
    const double amp = peak_abs(vd, from, vd.size());
    const double h = 0.1 * amp;
    std::vector<double> times;
    int state = 0; // -1 below the band, +1 above, 0 unknown
    double pending = -1.0;
    for (std::size_t i = from + 1; i < vd.size(); ++i) {
        if (vd[i - 1] < 0.0 && vd[i] >= 0.0) {
            const double t0 = trace.samples[i - 1].t;
            const double t1 = trace.samples[i].t;
            pending = t0 + (0.0 - vd[i - 1]) / (vd[i] - vd[i - 1]) * (t1 - t0);
        }
        if (vd[i] > h) {
            if (state == -1 && pending >= 0.0) times.push_back(pending);
            state = 1;
        } else if (vd[i] < -h) {
            state = -1;
            pending = -1.0;
        }
    }
    return times;
}

// Peak-bin frequency of a Hann-windowed radix-2 DFT over [from, end).
double dft_peak_frequency(const TransientTrace& trace, const std::vector<double>& vd, std::size_t from) {
    const std::size_t n = vd.size() - from;
    if (n < 16) return 0.0;
    std::size_t npad = 1;
    while (npad < n) npad <<= 1;
    std::vector<std::complex<double>> buf(npad, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * double(i) / double(n - 1));
        buf[i] = vd[from + i] * w;
    }
    // iterative radix-2 FFT
    for (std::size_t i = 1, j = 0; i < npad; ++i) {
        std::size_t bit = npad >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(buf[i], buf[j]);
    }
    for (std::size_t len = 2; len <= npad; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / double(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < npad; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = buf[i + k];
                const auto v = buf[i + k + len / 2] * w;
                buf[i + k] = u + v;
                buf[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    std::size_t peak = 1;
    double peak_mag = 0.0;
    for (std::size_t k = 1; k < npad / 2; ++k) {
        const double m = std::norm(buf[k]);
        if (m > peak_mag) {
            peak_mag = m;
            peak = k;
        }
    }
    const double dt_sample = trace.samples[1].t - trace.samples[0].t;
    return double(peak) / (double(npad) * dt_sample);
}

double crossings_frequency(const std::vector<double>& times) {
    return double(times.size() - 1) / (times.back() - times.front());
}

} // namespace

TransientTrace simulate(const DeviceParams& dev, const TankParams& tank, double c_var, Topology topology,
                        const SimConfig& cfg) {
    return simulate_with_tail_ratio(dev, tank, c_var, topology, cfg, 10.0);
}

TransientTrace simulate_with_tail_ratio(const DeviceParams& dev, const TankParams& tank, double c_var,
                                        Topology topology, const SimConfig& cfg, double tail_ratio) {
    const double f_estimate = design::osc_freq(dev, tank, c_var, topology);
    if (!std::isfinite(f_estimate) || f_estimate <= 0.0)
        throw DomainError("simulate: frequency estimate is not finite");
    if (!(cfg.dt > 0.0)) throw DomainError("simulate: dt must be > 0");
    if (cfg.dt > 1.0 / (200.0 * f_estimate))
        throw StepTooLarge("simulate: dt must not exceed 1/(200*f_estimate) = " +
                           std::to_string(1.0 / (200.0 * f_estimate)) + " s");
    if (cfg.t_end < 200.0 / f_estimate)
        throw DomainError("simulate: t_end must cover at least 200 estimated periods");
    if (cfg.record_stride < 1) throw DomainError("simulate: record_stride must be >= 1");
    if (topology == Topology::Cascode && !(dev.cgs > 0.0))
        throw DomainError("simulate: cascode stack requires cgs > 0");

    if (!(tail_ratio > 0.0)) throw DomainError("simulate: tail inductance ratio must be > 0");
    const Circuit ckt(dev, tank, c_var, topology, tail_ratio);
    const int ns = ckt.n_states;
    State x = ckt.initial(cfg.v_perturb);
    const long steps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));

    TransientTrace trace;
    trace.config = cfg;
    trace.dev = dev;
    trace.tank = tank;
    trace.c_var = c_var;
    trace.topology = topology;
    trace.vdd = ckt.bias.vdd;
    trace.samples.reserve(static_cast<std::size_t>(steps / cfg.record_stride) + 2);
    const int i_la = topology == Topology::Cascode ? 5 : 2;
    trace.samples.push_back({0.0, x[0], x[1], x[i_la]});

    State k1, k2, k3, k4, tmp;
    const double dt = cfg.dt;
    for (long step = 0; step < steps; ++step) {
        ckt.rhs(x, k1);
        for (int i = 0; i < ns; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
        ckt.rhs(tmp, k2);
        for (int i = 0; i < ns; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
        ckt.rhs(tmp, k3);
        for (int i = 0; i < ns; ++i) tmp[i] = x[i] + dt * k3[i];
        ckt.rhs(tmp, k4);
        for (int i = 0; i < ns; ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        const double t = double(step + 1) * dt;
        for (int i = 0; i < ns; ++i)
            if (!std::isfinite(x[i])) throw NonFinite("simulate: state diverged at t = " + std::to_string(t) + " s", t);
        if ((step + 1) % cfg.record_stride == 0) trace.samples.push_back({t, x[0], x[1], x[i_la]});
    }
    return trace;
}

double zero_crossing_frequency(const TransientTrace& trace) {
    if (trace.samples.size() < 4) throw NotOscillating("zero_crossing_frequency: trace too short");
    const auto vd = differential(trace);
    const auto times = rising_crossings(trace, vd, vd.size() / 2);
    if (times.size() < 2) throw NotOscillating("zero_crossing_frequency: fewer than two rising zero crossings");
    return crossings_frequency(times);
}

double extract_frequency(const TransientTrace& trace) {
    if (trace.samples.size() < 4) throw NotOscillating("extract_frequency: trace too short");
    const auto vd = differential(trace);
    const std::size_t half = vd.size() / 2;
    const auto times = rising_crossings(trace, vd, half);
    if (times.size() < 20)
        throw NotOscillating("extract_frequency: only " + std::to_string(times.size()) +
                             " rising zero crossings in the final half of the trace");
    const double amp_end = peak_abs(vd, vd.size() - vd.size() / 5, vd.size());
    if (amp_end < 10.0 * trace.config.v_perturb)
        throw NotOscillating("extract_frequency: end amplitude " + std::to_string(amp_end) +
                             " V below 10x the initial perturbation");
    const double f_zc = crossings_frequency(times);
    const double f_dft = dft_peak_frequency(trace, vd, half);
    if (std::abs(f_dft - f_zc) > 0.01 * f_zc)
        throw NotOscillating("extract_frequency: zero-crossing and spectral estimates disagree (" +
                             std::to_string(f_zc) + " vs " + std::to_string(f_dft) + " Hz)");
    return f_zc;
}

SteadyStateReport steady_state(const TransientTrace& trace) {
    SteadyStateReport rep{};
    const auto vd = differential(trace);
    const std::size_t n = vd.size();
    rep.amplitude = peak_abs(vd, n - n / 5, n);
    const auto times = rising_crossings(trace, vd, n / 2);
    rep.started = times.size() >= 20 && rep.amplitude >= 10.0 * trace.config.v_perturb;
    rep.frequency = rep.started ? crossings_frequency(times) : 0.0;
    // log-amplitude slope across the first 10% of the trace
    const std::size_t tenth = std::max<std::size_t>(n / 10, 4);
    const double a1 = peak_abs(vd, 0, tenth / 2);
    const double a2 = peak_abs(vd, tenth / 2, tenth);
    const double t1 = trace.samples[tenth / 4].t;
    const double t2 = trace.samples[std::min(tenth / 2 + tenth / 4, n - 1)].t;
    rep.envelope_slope = (a1 > 0.0 && a2 > 0.0 && t2 > t1) ? std::log(a2 / a1) / (t2 - t1) : 0.0;
    return rep;
}

ClosedFormCheck verify_against_closed_form(const DeviceParams& dev, const TankParams& tank, double c_var,
                                           Topology topology, const SimConfig& cfg) {
    const auto startup = design::startup_margin(dev, tank, topology);
    if (!(startup.margin > 1.0))
        throw DomainError("verify_against_closed_form: start-up margin must exceed 1 (got " +
                          std::to_string(startup.margin) + ")");
    ClosedFormCheck check{};
    check.f_formula = design::osc_freq(dev, tank, c_var, topology);
    const auto trace = simulate(dev, tank, c_var, topology, cfg);
    check.f_transient = extract_frequency(trace);
    check.relative_error = std::abs(check.f_transient - check.f_formula) / check.f_formula;
    check.pass = check.relative_error <= 0.02;
    return check;
}

} // namespace oscide::transient
