"""Cross-coupled LC VCO design and verification toolkit (C++ core)."""

from oscide._core import (  # noqa: F401
    CalibrationResult,
    ClosedFormCheck,
    DeviceParams,
    Netlist,
    NoiseParams,
    OnePortResult,
    OscideError,
    Region,
    SimConfig,
    StartupReport,
    SteadyStateReport,
    TankParams,
    Topology,
    TransientTrace,
    TuningCurve,
    TuningPoint,
    TuningSummary,
    VaractorModel,
    build_pair_netlist,
    c_total,
    c_var,
    calibrate,
    check_region,
    drain_current,
    extract_capacitance_coefficient,
    extract_frequency,
    input_admittance,
    kvco,
    noise_delta,
    noise_spectrum,
    osc_freq,
    parallel,
    parse_engineering,
    simulate,
    ssb_phase_noise,
    startup_margin,
    steady_state,
    summarize,
    sweep,
    verify_against_closed_form,
    zero_crossing_frequency,
)

__version__ = "0.1.0"
