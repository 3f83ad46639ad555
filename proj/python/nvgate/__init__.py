"""Two-photon four-qubit Toffoli and Fredkin gates on an NV-cavity emitter."""

import json

from ._core import (
    MetricsPoint,
    ScatteringCoefficients,
    average_efficiency,
    average_fidelity,
    closed_form_efficiency,
    coefficients,
    effective_branches,
    oracle_matrix,
    sweep,
)
from ._core import run_trace as _run_trace


def run_trace(gate, amplitudes, coeffs=None):
    """Runs one gate and returns the checkpoint trace as a list of dicts."""
    return json.loads(_run_trace(gate, list(amplitudes), coeffs))


__all__ = [
    "MetricsPoint",
    "ScatteringCoefficients",
    "average_efficiency",
    "average_fidelity",
    "closed_form_efficiency",
    "coefficients",
    "effective_branches",
    "oracle_matrix",
    "run_trace",
    "sweep",
]
