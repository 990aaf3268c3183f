"""Geometric multigrid with machine-checked local Fourier analysis."""

from ._lfamg import (
    ConfigError,
    CycleSpec,
    ExtensionPair,
    GridSpec,
    Multigrid,
    Operator,
    SmootherSpec,
    check_lfa_compatible,
    dense_spectral_radius,
    dlinear_interpolation,
    error_propagator,
    extension_for,
    fourier_mode,
    full_weighting,
    harmonic_tuple,
    lex_index,
    lfa_convergence_factor,
    lfa_smoothing_factor,
    make_grid,
    make_operator,
    measure_asymptotic_rate,
    operator_inverse,
    run_compare,
    run_compare_payload,
    run_sweep,
    run_track,
    run_verify_compat,
    smoother_iterator,
    smoother_step,
)

__all__ = [
    "ConfigError",
    "CycleSpec",
    "ExtensionPair",
    "GridSpec",
    "Multigrid",
    "Operator",
    "SmootherSpec",
    "check_lfa_compatible",
    "dense_spectral_radius",
    "dlinear_interpolation",
    "error_propagator",
    "extension_for",
    "fourier_mode",
    "full_weighting",
    "harmonic_tuple",
    "lex_index",
    "lfa_convergence_factor",
    "lfa_smoothing_factor",
    "make_grid",
    "make_operator",
    "measure_asymptotic_rate",
    "operator_inverse",
    "run_compare",
    "run_compare_payload",
    "run_sweep",
    "run_track",
    "run_verify_compat",
    "smoother_iterator",
    "smoother_step",
]
