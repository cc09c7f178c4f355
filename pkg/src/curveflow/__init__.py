"""curveflow: spectral simulator and verification lab for H^{-m} gradient
flows of length for closed plane curves."""

from .curve_model import (
    ClosedCurve,
    SpectralCoeffs,
    circle,
    ellipse,
    from_samples,
    load_curve,
    make_preset,
    perturbed_circle,
    random_bandlimited,
    resample_arclength,
    save_curve,
)
from .flow import FlowConfig, FlowState, Termination, TraceRecord, evolve, linearized_rate

__all__ = [
    "ClosedCurve",
    "SpectralCoeffs",
    "circle",
    "ellipse",
    "from_samples",
    "load_curve",
    "make_preset",
    "perturbed_circle",
    "random_bandlimited",
    "resample_arclength",
    "save_curve",
    "FlowConfig",
    "FlowState",
    "Termination",
    "TraceRecord",
    "evolve",
    "linearized_rate",
]

__version__ = "0.1.0"
