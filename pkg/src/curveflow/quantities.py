"""Geometric scalars and fields of a closed plane curve.

Length, signed area, curvature, curvature deviation, rotation number, the
scale-invariant quantities I_ell, the isoperimetric deficit I_{-1}, and the
J_{k,p} norms.  Arc-length derivatives are taken spectrally with the
multiplier (2 pi i k / L), so they are only offered on arc-length
parametrized curves; resample first otherwise.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import _spectral, curve_model
from .errors import (
    AmbiguousRotation,
    DegenerateCurve,
    NonMonotoneArcLength,
    NotArcLengthParametrized,
    OrderTooHigh,
)

ROTATION_RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class CurveQuantities:
    """Bundle of the basic scalars/fields of one curve."""

    L: float
    A: float
    kappa: np.ndarray
    kappa_dev: np.ndarray
    rotation: int


def length(curve):
    """L = integral |df/dtheta| d theta, spectrally accurate periodic trapezoid."""
    return curve_model.curve_length(curve)


def signed_area(curve):
    """A = (1/2) oint (x dy - y dx); positive for counterclockwise curves."""
    pts = curve.points
    d1 = curve_model.derivative(curve, 1)
    integrand = pts[:, 0] * d1[:, 1] - pts[:, 1] * d1[:, 0]
    if length(curve) <= 0:
        raise DegenerateCurve("degenerate curve")
    return float(0.5 * np.mean(integrand))


def curvature(curve):
    """Curvature samples kappa = (x'y'' - y'x'') / |f'|^3; positive on convex arcs."""
    d1 = curve_model.derivative(curve, 1)
    d2 = curve_model.derivative(curve, 2)
    sp2 = d1[:, 0] ** 2 + d1[:, 1] ** 2
    sp = np.sqrt(sp2)
    if np.min(sp) < 1e-6 * np.mean(sp):
        raise NonMonotoneArcLength("parametrization speed vanishes")
    return (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]) / (sp2 * sp)


def turning_integral(curve):
    """integral kappa ds = integral kappa |f'| d theta."""
    kap = curvature(curve)
    sp = curve_model.parameter_speed(curve)
    return float(np.mean(kap * sp))


def rotation_number(curve):
    """Nearest integer to (1/2 pi) integral kappa ds.

    Raises AmbiguousRotation when the integral is farther than 1e-6 from an
    integer (under-resolved curve).
    """
    winding = turning_integral(curve) / (2 * np.pi)
    n = int(np.rint(winding))
    if abs(winding - n) > ROTATION_RESIDUAL_TOL:
        raise AmbiguousRotation(f"turning integral/2pi = {winding} not near an integer")
    return n


def curvature_deviation(curve):
    """Deviation of curvature: kappa - 2 pi / L for rotation-number-1 curves.

    For rotation number != 1 the general arc-length mean (1/L) integral
    kappa ds is subtracted instead and a warning is emitted; the mean-free
    property holds either way.
    """
    kap = curvature(curve)
    L = length(curve)
    rot = rotation_number(curve)
    if rot == 1:
        return kap - 2 * np.pi / L
    warnings.warn(
        f"curvature deviation on a rotation-number-{rot} curve: "
        "subtracting the general mean (1/L) int kappa ds",
        stacklevel=2,
    )
    return kap - turning_integral(curve) / L


def _require_arclength(curve):
    if not curve.is_arclength:
        raise NotArcLengthParametrized(
            "arc-length derivatives need an arc-length parametrized curve; "
            "call resample_arclength first"
        )


def arclength_derivative(field, L, order):
    """d^order/ds^order of a periodic field sampled uniformly in arc length."""
    return _spectral.spectral_derivative(np.asarray(field, dtype=float), order, period=L)


def scale_invariant_I(curve, ell):
    """I_ell = L^{2 ell + 1} integral |d^ell kappa_dev / ds^ell|^2 ds."""
    _require_arclength(curve)
    if ell < 0:
        raise OrderTooHigh("ell must be >= 0 (use isoperimetric_deficit for I_{-1})")
    if ell > curve.n // 2 - 2:
        raise OrderTooHigh(f"ell={ell} exceeds the derivative budget N/2-2")
    L = length(curve)
    kdev = curvature_deviation(curve)
    dk = arclength_derivative(kdev, L, ell)
    # integral ds = L * mean over the uniform arc-length grid
    return float(L ** (2 * ell + 2) * np.mean(dk**2))


def isoperimetric_deficit(curve):
    """I_{-1} = 1 - 4 pi A / L^2; zero exactly on circles."""
    L = length(curve)
    A = signed_area(curve)
    return float(1.0 - 4 * np.pi * A / L**2)


def J_norm(curve, k, p):
    """J_{k,p} = (L^{(1+k)p - 1} integral |d^k kappa_dev/ds^k|^p ds)^{1/p}."""
    _require_arclength(curve)
    if k < 0 or p < 1:
        raise OrderTooHigh("need k >= 0 and p >= 1")
    if k > curve.n // 2 - 2:
        raise OrderTooHigh(f"k={k} exceeds the derivative budget N/2-2")
    L = length(curve)
    kdev = curvature_deviation(curve)
    dk = arclength_derivative(kdev, L, k)
    return float((L ** ((1 + k) * p) * np.mean(np.abs(dk) ** p)) ** (1.0 / p))


def compute_all(curve):
    """CurveQuantities for one curve."""
    return CurveQuantities(
        L=length(curve),
        A=signed_area(curve),
        kappa=curvature(curve),
        kappa_dev=curvature_deviation(curve),
        rotation=rotation_number(curve),
    )
