// Complex modified nodal analysis over linear small-signal elements.
// Everything here is dense: the pair netlists have at most six nodes, so the
// solver is a plain complex LU with partial pivoting.
#include "oscide/mna.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "oscide/errors.hpp"

namespace oscide::mna {

Element Element::resistor(int np, int nm, double ohms) {
    return {Kind::Resistor, np, nm, ohms, -1, -1};
}
Element Element::capacitor(int np, int nm, double farads) {
    return {Kind::Capacitor, np, nm, farads, -1, -1};
}
Element Element::inductor(int np, int nm, double henries) {
    return {Kind::Inductor, np, nm, henries, -1, -1};
}
Element Element::vccs(int np, int nm, double gm, int cp, int cm) {
    return {Kind::Vccs, np, nm, gm, cp, cm};
}

namespace {

const char* kind_name(Element::Kind k) {
    switch (k) {
    case Element::Kind::Resistor: return "R";
    case Element::Kind::Capacitor: return "C";
    case Element::Kind::Inductor: return "L";
    case Element::Kind::Vccs: return "VCCS";
    }
    return "?";
}

} // namespace

void Netlist::validate() const {
    if (node_count < 1) throw ValidationError("netlist: node_count must be >= 1");
    if (elements.empty()) throw ValidationError("netlist: at least one element required");
    auto check_node = [&](int n, const char* what) {
        if (n < 0 || n >= node_count)
            throw ValidationError(std::string("netlist: ") + what + " node index out of range");
    };
    for (const auto& e : elements) {
        check_node(e.node_pos, kind_name(e.kind));
        check_node(e.node_neg, kind_name(e.kind));
        if (e.kind == Element::Kind::Vccs) {
            check_node(e.ctrl_pos, "VCCS control");
            check_node(e.ctrl_neg, "VCCS control");
        } else if (!(e.value > 0.0)) {
            throw ValidationError(std::string("netlist: ") + kind_name(e.kind) + " value must be > 0");
        }
    }
}

std::string Netlist::dump() const {
    std::ostringstream out;
    for (const auto& e : elements) {
        out << kind_name(e.kind) << ' ' << e.node_pos << ' ' << e.node_neg << ' ' << e.value;
        if (e.kind == Element::Kind::Vccs) out << ' ' << e.ctrl_pos << ' ' << e.ctrl_neg;
        out << '\n';
    }
    return out.str();
}

namespace {

// Stamps into a dense matrix through a node->row map (-1 marks the reference).
class Stamper {
public:
    Stamper(AdmittanceMatrix& a, const std::vector<int>& row_of) : a_(a), row_of_(row_of) {}

    void two_terminal(int np, int nm, Complex y) {
        const int i = row_of_[np], j = row_of_[nm];
        if (i >= 0) a_[i][i] += y;
        if (j >= 0) a_[j][j] += y;
        if (i >= 0 && j >= 0) {
            a_[i][j] -= y;
            a_[j][i] -= y;
        }
    }

    void vccs(const Element& e) {
        const int rows[2] = {row_of_[e.node_pos], row_of_[e.node_neg]};
        const int cols[2] = {row_of_[e.ctrl_pos], row_of_[e.ctrl_neg]};
        const double rsign[2] = {1.0, -1.0};
        for (int r = 0; r < 2; ++r) {
            if (rows[r] < 0) continue;
            for (int c = 0; c < 2; ++c) {
                if (cols[c] < 0) continue;
                a_[rows[r]][cols[c]] += rsign[r] * rsign[c] * e.value;
            }
        }
    }

    void element(const Element& e, double omega) {
        switch (e.kind) {
        case Element::Kind::Resistor: two_terminal(e.node_pos, e.node_neg, Complex(1.0 / e.value, 0.0)); break;
        case Element::Kind::Capacitor: two_terminal(e.node_pos, e.node_neg, Complex(0.0, omega * e.value)); break;
        case Element::Kind::Inductor: two_terminal(e.node_pos, e.node_neg, Complex(0.0, -1.0 / (omega * e.value))); break;
        case Element::Kind::Vccs: vccs(e); break;
        }
    }

private:
    AdmittanceMatrix& a_;
    const std::vector<int>& row_of_;
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

AdmittanceMatrix stamp(const Netlist& netlist, double omega) {
    netlist.validate();
    if (!(omega > 0.0)) throw DomainError("stamp: omega must be > 0");
    std::vector<int> row_of(netlist.node_count);
    for (int n = 0; n < netlist.node_count; ++n) row_of[n] = n - 1; // ground eliminated
    const int dim = netlist.node_count - 1;
    AdmittanceMatrix a(dim, std::vector<Complex>(dim, Complex{}));
    Stamper st(a, row_of);
    for (const auto& e : netlist.elements) st.element(e, omega);
    return a;
}

std::vector<Complex> solve_dense(AdmittanceMatrix a, std::vector<Complex> rhs) {
    const int n = static_cast<int>(a.size());
    double scale = 0.0;
    for (const auto& row : a)
        for (const auto& v : row) scale = std::max(scale, std::abs(v));
    const double tiny = scale > 0.0 ? scale * 1e-14 : 1e-300;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
        if (std::abs(a[pivot][k]) <= tiny)
            throw SingularMatrix("singular admittance matrix (floating node or degenerate netlist) at pivot " +
                                     std::to_string(k),
                                 k);
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            std::swap(rhs[pivot], rhs[k]);
        }
        for (int i = k + 1; i < n; ++i) {
            const Complex f = a[i][k] / a[k][k];
            if (f == Complex{}) continue;
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<Complex> x(n);
    for (int i = n - 1; i >= 0; --i) {
        Complex s = rhs[i];
        for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

OnePortResult input_admittance(const Netlist& netlist, std::pair<int, int> probe, double omega) {
    netlist.validate();
    if (!(omega > 0.0)) throw DomainError("input_admittance: omega must be > 0");
    const auto [p, m] = probe;
    if (p == m || p < 0 || m < 0 || p >= netlist.node_count || m >= netlist.node_count)
        throw DomainError("input_admittance: probe nodes must be distinct valid nodes");

    // A one-port with no ground reference has its potential fixed by taking
    // the negative probe node as the reference; otherwise that node stays
    // live and the unit source is inserted across the pair.
    UnionFind uf(netlist.node_count);
    for (const auto& e : netlist.elements) uf.join(e.node_pos, e.node_neg);
    const bool floating = uf.find(p) != uf.find(0);

    std::vector<int> row_of(netlist.node_count, -1);
    int next = 0;
    for (int n = 0; n < netlist.node_count; ++n) {
        if (n == 0 || (floating && n == m)) continue;
        row_of[n] = next++;
    }
    const int dim = next + 1; // + source branch current
    AdmittanceMatrix a(dim, std::vector<Complex>(dim, Complex{}));
    Stamper st(a, row_of);
    for (const auto& e : netlist.elements) st.element(e, omega);

    // branch current j flows from the source into node p and out of node m;
    // constraint row: v_p - v_m = 1.
    const int jcol = next;
    if (row_of[p] >= 0) {
        a[row_of[p]][jcol] -= 1.0;
        a[jcol][row_of[p]] += 1.0;
    }
    if (row_of[m] >= 0) {
        a[row_of[m]][jcol] += 1.0;
        a[jcol][row_of[m]] -= 1.0;
    }
    std::vector<Complex> rhs(dim, Complex{});
    rhs[jcol] = 1.0;

    const auto x = solve_dense(std::move(a), std::move(rhs));
    const Complex y = x[jcol];
    OnePortResult r{};
    r.y_in = y;
    r.omega = omega;
    r.r_equiv = 1.0 / y.real();
    r.c_equiv = y.imag() / omega;
    if (!std::isfinite(r.c_equiv)) throw DomainError("input_admittance: non-finite equivalent capacitance");
    return r;
}

Netlist build_pair_netlist(const DeviceParams& dev, Topology topology) {
    // Tank nodes: A=1 (probe+), B=2 (probe-). See docs/connectivity.md for
    // the full table and its derivation.
    Netlist nl;
    nl.probe_pos = 1;
    nl.probe_neg = 2;
    auto add_cap = [&](int np, int nm) {
        if (dev.cgs > 0.0) nl.elements.push_back(Element::capacitor(np, nm, dev.cgs));
    };
    if (topology == Topology::Conventional) {
        nl.node_count = 3;
        // M1: drain A, gate B, source at AC ground; M3 mirrored.
        nl.elements.push_back(Element::vccs(1, 0, dev.gm, 2, 0));
        nl.elements.push_back(Element::resistor(1, 0, dev.ro));
        add_cap(2, 0);
        nl.elements.push_back(Element::vccs(2, 0, dev.gm, 1, 0));
        nl.elements.push_back(Element::resistor(2, 0, dev.ro));
        add_cap(1, 0);
        return nl;
    }
    // Cascode: saturation pair M1/M3 on top of triode pair M2/M4.
    // C=3, D=4 are the stack midpoints, T=5 the exposed tail. The tail
    // inductor is an ideal choke at tank frequencies and is not part of the
    // differential one-port.
    nl.node_count = 6;
    nl.tail_node = 5;
    nl.elements.push_back(Element::vccs(1, 3, dev.gm, 2, 3)); // M1: drain A, gate B, source C
    nl.elements.push_back(Element::resistor(1, 3, dev.ro));
    add_cap(2, 3);
    nl.elements.push_back(Element::vccs(2, 4, dev.gm, 1, 4)); // M3: drain B, gate A, source D
    nl.elements.push_back(Element::resistor(2, 4, dev.ro));
    add_cap(1, 4);
    nl.elements.push_back(Element::resistor(3, 5, 1.0 / dev.gm_triode)); // M2 channel
    add_cap(2, 5);                                                       // M2 gate B, source T
    nl.elements.push_back(Element::resistor(4, 5, 1.0 / dev.gm_triode)); // M4 channel
    add_cap(1, 5);                                                       // M4 gate A, source T
    return nl;
}

double extract_capacitance_coefficient(const DeviceParams& dev, Topology topology) {
    if (!(dev.cgs > 0.0)) throw DomainError("extract_capacitance_coefficient: cgs must be > 0");
    const auto nl = build_pair_netlist(dev, topology);
    auto kappa_at = [&](double f_hz) {
        const double omega = 2.0 * std::numbers::pi * f_hz;
        return input_admittance(nl, {nl.probe_pos, nl.probe_neg}, omega).c_equiv / dev.cgs;
    };
    const double k1 = kappa_at(1e6);
    const double k2 = kappa_at(1e7);
    if (std::abs(k1 - k2) > 0.01 * std::abs(k1))
        throw NonConvergent("capacitance coefficient not flat across 1-10 MHz (" + std::to_string(k1) + " vs " +
                            std::to_string(k2) + "); gate impedance approximation violated");
    return k1;
}

} // namespace oscide::mna
