#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oscide/config.hpp"
#include "oscide/design.hpp"
#include "oscide/device.hpp"
#include "oscide/errors.hpp"
#include "oscide/mna.hpp"
#include "oscide/noise.hpp"
#include "oscide/transient.hpp"
#include "oscide/tuning.hpp"

namespace py = pybind11;
using namespace oscide;

PYBIND11_MODULE(_core, m) {
    m.doc() = "cross-coupled LC VCO design and verification toolkit";

    py::register_exception<Error>(m, "OscideError");

    py::enum_<Region>(m, "Region")
        .value("Saturation", Region::Saturation)
        .value("Triode", Region::Triode)
        .value("Cutoff", Region::Cutoff);
    py::enum_<Topology>(m, "Topology")
        .value("Conventional", Topology::Conventional)
        .value("Cascode", Topology::Cascode);

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init([](double gm, double gm_triode, double ro, double cgs, double beta, double vt) {
                 return DeviceParams{gm, gm_triode, ro, cgs, beta, vt};
             }),
             py::arg("gm"), py::arg("gm_triode"), py::arg("ro"), py::arg("cgs"), py::arg("beta"), py::arg("vt"))
        .def_readwrite("gm", &DeviceParams::gm)
        .def_readwrite("gm_triode", &DeviceParams::gm_triode)
        .def_readwrite("ro", &DeviceParams::ro)
        .def_readwrite("cgs", &DeviceParams::cgs)
        .def_readwrite("beta", &DeviceParams::beta)
        .def_readwrite("vt", &DeviceParams::vt);

    py::class_<TankParams>(m, "TankParams")
        .def(py::init([](double l, double rp, double cp, double cl) { return TankParams{l, rp, cp, cl}; }),
             py::arg("l"), py::arg("rp"), py::arg("cp"), py::arg("cl"))
        .def_readwrite("l", &TankParams::l)
        .def_readwrite("rp", &TankParams::rp)
        .def_readwrite("cp", &TankParams::cp)
        .def_readwrite("cl", &TankParams::cl);

    py::class_<VaractorModel>(m, "VaractorModel")
        .def(py::init([](double c_min, double c_max, double v_mid, double alpha) {
                 return VaractorModel{c_min, c_max, v_mid, alpha};
             }),
             py::arg("c_min"), py::arg("c_max"), py::arg("v_mid"), py::arg("alpha"))
        .def_readwrite("c_min", &VaractorModel::c_min)
        .def_readwrite("c_max", &VaractorModel::c_max)
        .def_readwrite("v_mid", &VaractorModel::v_mid)
        .def_readwrite("alpha", &VaractorModel::alpha);

    m.def("c_var", &c_var, py::arg("model"), py::arg("v_tune"));
    m.def("check_region", &check_region, py::arg("vgs"), py::arg("vds"), py::arg("vt"));
    m.def("drain_current", &drain_current, py::arg("dev"), py::arg("vgs"), py::arg("vds"));

    py::class_<mna::OnePortResult>(m, "OnePortResult")
        .def_readonly("y_in", &mna::OnePortResult::y_in)
        .def_readonly("r_equiv", &mna::OnePortResult::r_equiv)
        .def_readonly("c_equiv", &mna::OnePortResult::c_equiv)
        .def_readonly("omega", &mna::OnePortResult::omega);
    py::class_<mna::Netlist>(m, "Netlist")
        .def_readonly("node_count", &mna::Netlist::node_count)
        .def_readonly("probe_pos", &mna::Netlist::probe_pos)
        .def_readonly("probe_neg", &mna::Netlist::probe_neg)
        .def_readonly("tail_node", &mna::Netlist::tail_node)
        .def("dump", &mna::Netlist::dump);
    m.def("build_pair_netlist", &mna::build_pair_netlist, py::arg("dev"), py::arg("topology"));
    m.def(
        "input_admittance",
        [](const mna::Netlist& nl, int probe_pos, int probe_neg, double omega) {
            return mna::input_admittance(nl, {probe_pos, probe_neg}, omega);
        },
        py::arg("netlist"), py::arg("probe_pos"), py::arg("probe_neg"), py::arg("omega"));
    m.def("extract_capacitance_coefficient", &mna::extract_capacitance_coefficient, py::arg("dev"),
          py::arg("topology"));

    py::class_<design::StartupReport>(m, "StartupReport")
        .def_readonly("r_neg_magnitude", &design::StartupReport::r_neg_magnitude)
        .def_readonly("r_loss", &design::StartupReport::r_loss)
        .def_readonly("margin", &design::StartupReport::margin)
        .def_readonly("oscillates", &design::StartupReport::oscillates);
    m.def("parallel", &design::parallel, py::arg("r1"), py::arg("r2"));
    m.def("startup_margin", &design::startup_margin, py::arg("dev"), py::arg("tank"), py::arg("topology"));
    m.def("c_total", &design::c_total, py::arg("dev"), py::arg("tank"), py::arg("c_var"), py::arg("topology"));
    m.def("osc_freq", &design::osc_freq, py::arg("dev"), py::arg("tank"), py::arg("c_var"), py::arg("topology"));

    py::class_<noise::NoiseParams>(m, "NoiseParams")
        .def(py::init([](double v_max, double rp, double c_total, double f0, double temperature) {
                 return noise::NoiseParams{v_max, rp, c_total, f0, temperature};
             }),
             py::arg("v_max"), py::arg("rp"), py::arg("c_total"), py::arg("f0"), py::arg("temperature"))
        .def_readwrite("v_max", &noise::NoiseParams::v_max)
        .def_readwrite("rp", &noise::NoiseParams::rp)
        .def_readwrite("c_total", &noise::NoiseParams::c_total)
        .def_readwrite("f0", &noise::NoiseParams::f0)
        .def_readwrite("temperature", &noise::NoiseParams::temperature);
    m.def("ssb_phase_noise", &noise::ssb_phase_noise, py::arg("params"), py::arg("offset_hz"));
    m.def(
        "noise_spectrum",
        [](const noise::NoiseParams& p, const std::vector<double>& offsets) {
            const auto s = noise::noise_spectrum(p, offsets);
            std::vector<std::pair<double, double>> out;
            out.reserve(s.points.size());
            for (const auto& pt : s.points) out.emplace_back(pt.offset_hz, pt.l_dbc_hz);
            return out;
        },
        py::arg("params"), py::arg("offsets_hz"));
    m.def("noise_delta", &noise::noise_delta, py::arg("a"), py::arg("b"), py::arg("offset_hz"));

    py::class_<transient::SimConfig>(m, "SimConfig")
        .def(py::init([](double dt, double t_end, double v_perturb, int record_stride) {
                 transient::SimConfig c;
                 c.dt = dt;
                 c.t_end = t_end;
                 c.v_perturb = v_perturb;
                 c.record_stride = record_stride;
                 return c;
             }),
             py::arg("dt"), py::arg("t_end"), py::arg("v_perturb") = 1e-3, py::arg("record_stride") = 1)
        .def_readwrite("dt", &transient::SimConfig::dt)
        .def_readwrite("t_end", &transient::SimConfig::t_end)
        .def_readwrite("v_perturb", &transient::SimConfig::v_perturb)
        .def_readwrite("record_stride", &transient::SimConfig::record_stride);
    py::class_<transient::TransientTrace>(m, "TransientTrace")
        .def_readonly("vdd", &transient::TransientTrace::vdd)
        .def_property_readonly("t",
                               [](const transient::TransientTrace& tr) {
                                   std::vector<double> v(tr.samples.size());
                                   for (std::size_t i = 0; i < v.size(); ++i) v[i] = tr.samples[i].t;
                                   return v;
                               })
        .def_property_readonly("v_plus",
                               [](const transient::TransientTrace& tr) {
                                   std::vector<double> v(tr.samples.size());
                                   for (std::size_t i = 0; i < v.size(); ++i) v[i] = tr.samples[i].v_plus;
                                   return v;
                               })
        .def_property_readonly("v_minus",
                               [](const transient::TransientTrace& tr) {
                                   std::vector<double> v(tr.samples.size());
                                   for (std::size_t i = 0; i < v.size(); ++i) v[i] = tr.samples[i].v_minus;
                                   return v;
                               })
        .def_property_readonly("i_l", [](const transient::TransientTrace& tr) {
            std::vector<double> v(tr.samples.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = tr.samples[i].i_l;
            return v;
        });
    py::class_<transient::SteadyStateReport>(m, "SteadyStateReport")
        .def_readonly("frequency", &transient::SteadyStateReport::frequency)
        .def_readonly("amplitude", &transient::SteadyStateReport::amplitude)
        .def_readonly("started", &transient::SteadyStateReport::started)
        .def_readonly("envelope_slope", &transient::SteadyStateReport::envelope_slope);
    py::class_<transient::ClosedFormCheck>(m, "ClosedFormCheck")
        .def_readonly("f_transient", &transient::ClosedFormCheck::f_transient)
        .def_readonly("f_formula", &transient::ClosedFormCheck::f_formula)
        .def_readonly("relative_error", &transient::ClosedFormCheck::relative_error)
        .def_readonly("passed", &transient::ClosedFormCheck::pass);
    m.def("simulate", &transient::simulate, py::arg("dev"), py::arg("tank"), py::arg("c_var"), py::arg("topology"),
          py::arg("cfg"));
    m.def("zero_crossing_frequency", &transient::zero_crossing_frequency, py::arg("trace"));
    m.def("extract_frequency", &transient::extract_frequency, py::arg("trace"));
    m.def("steady_state", &transient::steady_state, py::arg("trace"));
    m.def("verify_against_closed_form", &transient::verify_against_closed_form, py::arg("dev"), py::arg("tank"),
          py::arg("c_var"), py::arg("topology"), py::arg("cfg"));

    py::class_<tuning::TuningPoint>(m, "TuningPoint")
        .def_readonly("v_tune", &tuning::TuningPoint::v_tune)
        .def_readonly("c_var", &tuning::TuningPoint::c_var)
        .def_readonly("f", &tuning::TuningPoint::f);
    py::class_<tuning::TuningCurve>(m, "TuningCurve").def_readonly("points", &tuning::TuningCurve::points);
    py::class_<tuning::TuningSummary>(m, "TuningSummary")
        .def_readonly("f_min", &tuning::TuningSummary::f_min)
        .def_readonly("f_max", &tuning::TuningSummary::f_max)
        .def_readonly("absolute_range", &tuning::TuningSummary::absolute_range)
        .def_readonly("fractional_range", &tuning::TuningSummary::fractional_range)
        .def_readonly("kvco_mid", &tuning::TuningSummary::kvco_mid);
    py::class_<tuning::CalibrationResult>(m, "CalibrationResult")
        .def_readonly("model", &tuning::CalibrationResult::model)
        .def_readonly("residual_f_min", &tuning::CalibrationResult::residual_f_min)
        .def_readonly("residual_f_max", &tuning::CalibrationResult::residual_f_max)
        .def_readonly("residual_kvco", &tuning::CalibrationResult::residual_kvco);
    m.def("sweep", &tuning::sweep, py::arg("dev"), py::arg("tank"), py::arg("var"), py::arg("topology"),
          py::arg("v_lo"), py::arg("v_hi"), py::arg("n"));
    m.def("kvco", &tuning::kvco, py::arg("curve"), py::arg("v"));
    m.def("summarize", &tuning::summarize, py::arg("curve"));
    m.def(
        "calibrate",
        [](const DeviceParams& dev, const TankParams& tank, Topology topo, double f_min_target, double f_max_target,
           std::optional<double> kvco_mid_target, double v_lo, double v_hi) {
            tuning::CalibrationTarget t{f_min_target, f_max_target, kvco_mid_target, v_lo, v_hi};
            return tuning::calibrate(dev, tank, topo, t);
        },
        py::arg("dev"), py::arg("tank"), py::arg("topology"), py::arg("f_min_target"), py::arg("f_max_target"),
        py::arg("kvco_mid_target") = std::nullopt, py::arg("v_lo") = 0.0, py::arg("v_hi") = 1.0);

    m.def("parse_engineering", &config::parse_engineering, py::arg("text"));
}
