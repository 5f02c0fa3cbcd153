#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "oscide/device.hpp"

namespace oscide::mna {

using Complex = std::complex<double>;
using AdmittanceMatrix = std::vector<std::vector<Complex>>;

struct Element {
    enum class Kind { Resistor, Capacitor, Inductor, Vccs };

    Kind kind;
    int node_pos = 0;
    int node_neg = 0;
    double value = 0.0; // Ohm, F, H, or S depending on kind
    int ctrl_pos = -1;  // Vccs only
    int ctrl_neg = -1;

    static Element resistor(int np, int nm, double ohms);
    static Element capacitor(int np, int nm, double farads);
    static Element inductor(int np, int nm, double henries);
    // Current value*(v(cp)-v(cm)) flows from node_pos to node_neg through the source.
    static Element vccs(int np, int nm, double gm, int cp, int cm);
};

/// Linear one-port netlist. Node 0 is ground. `probe_pos`/`probe_neg` are the
/// designated port terminals; `tail_node` exposes the cascode tail (or -1).
struct Netlist {
    int node_count = 0;
    std::vector<Element> elements;
    int probe_pos = -1;
    int probe_neg = -1;
    int tail_node = -1;

    void validate() const;
    /// Debug dump, one element per line: `KIND n+ n- value [ctrl+ ctrl-]`.
    std::string dump() const;
};

struct OnePortResult {
    Complex y_in;   // S
    double r_equiv; // 1/Re(y_in), Ohm (negative for an active port)
    double c_equiv; // Im(y_in)/omega, F
    double omega;   // rad/s used
};

/// Node-admittance matrix at `omega`, ground row/column eliminated.
/// RLC elements stamp symmetrically; Vccs stamps are asymmetric.
AdmittanceMatrix stamp(const Netlist& netlist, double omega);

/// Drives a unit test voltage across the probe pair, solves the complex MNA
/// system and returns the admittance seen by the source. If the probed
/// subcircuit has no ground reference, the negative probe node is taken as
/// the potential reference (the one-port is floating, so this is exact).
OnePortResult input_admittance(const Netlist& netlist, std::pair<int, int> probe, double omega);

/// Small-signal model of the cross-coupled pair seen from the tank nodes.
/// Conventional: two cross-coupled Vccs with ro and cgs, sources at AC
/// ground. Cascode: saturation pair stacked on a triode pair (channel
/// conductance gm_triode), both gates of each stack tied to the opposite
/// tank node, tail node exposed. See docs/connectivity.md.
Netlist build_pair_netlist(const DeviceParams& dev, Topology topology);

/// c_equiv/cgs of the pair at low omega (flat region). Checked at 1 MHz and
/// 10 MHz; throws NonConvergent if the two differ by more than 1%.
double extract_capacitance_coefficient(const DeviceParams& dev, Topology topology);

/// Dense complex LU solve with partial pivoting (matrices here are <= ~10x10).
/// Throws SingularMatrix with the offending pivot index.
std::vector<Complex> solve_dense(AdmittanceMatrix a, std::vector<Complex> rhs);

} // namespace oscide::mna
