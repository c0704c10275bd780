"""Sturm-Liouville and cylindrical MHD eigenvalue solver (C++ core)."""

from ._core import (
    SchwarzslError,
    __version__,
    find_jet_root,
    g_difference,
    jet_quantization,
    kappa_squared,
    morse_levels,
    paine_reference,
    phi_winding,
    problems,
    run_cli,
)

__all__ = [
    "SchwarzslError",
    "__version__",
    "find_jet_root",
    "g_difference",
    "jet_quantization",
    "kappa_squared",
    "morse_levels",
    "paine_reference",
    "phi_winding",
    "problems",
    "run_cli",
]
