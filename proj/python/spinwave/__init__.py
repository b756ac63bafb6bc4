"""Spin-wave mediated Stokes/anti-Stokes entanglement simulator."""

from ._spinwave import (
    BogoliubovTransform,
    CouplingParams,
    DegenerateCouplingError,
    DomainError,
    Mode,
    MomentTable,
    OscillationPeriod,
    TruncationOverflowError,
    UsageError,
    beta,
    bogoliubov,
    closed_form_vs_exact,
    coupling_from_physical,
    duan_v,
    duan_v_pair,
    entanglement_report,
    evolve_moments,
    initial_moments,
    oracle_check,
    oscillation_period,
    phase_rotation,
    preset,
    preset_names,
    spin_moments,
    sweep,
)

__all__ = [
    "BogoliubovTransform",
    "CouplingParams",
    "DegenerateCouplingError",
    "DomainError",
    "Mode",
    "MomentTable",
    "OscillationPeriod",
    "TruncationOverflowError",
    "UsageError",
    "beta",
    "bogoliubov",
    "closed_form_vs_exact",
    "coupling_from_physical",
    "duan_v",
    "duan_v_pair",
    "entanglement_report",
    "evolve_moments",
    "initial_moments",
    "oracle_check",
    "oscillation_period",
    "phase_rotation",
    "preset",
    "preset_names",
    "spin_moments",
    "sweep",
]
