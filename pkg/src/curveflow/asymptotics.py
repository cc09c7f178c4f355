"""Convergence-to-circle diagnostics: Fourier frame, limit circle,
reparametrized C^k distance, Hausdorff distance to the limit disk,
barycenter, convexity time, and exponential decay-rate fitting.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import _spectral, curve_model, quantities
from .errors import (
    DegenerateCurve,
    InsufficientPositiveData,
    NotConverged,
    NotSimple,
    OrderTooHigh,
)


@dataclass(frozen=True)
class FourierFrame:
    """Center, radius, and arc-length phase shift extracted from the 0th and
    1st Fourier coefficients of the curve in arc length.

    sigma is stored as an arc-length shift in [0, L); multiply by 2 pi / L
    for a 2 pi-periodic phase.
    """

    c: Tuple[float, float]
    r: float
    sigma: float


@dataclass(frozen=True)
class CircleLimit:
    c_inf: Tuple[float, float]
    r_inf: float
    sigma_inf: float
    L_inf: float


@dataclass(frozen=True)
class DecayFit:
    lam: float
    logC: float
    window: Tuple[float, float]
    r_squared: float


def fourier_frame(curve):
    """Frame (c, r, sigma) of an arc-length parametrized curve.

    With the orthonormal basis phi_k(s) = L^{-1/2} e^{2 pi i k s / L}:
    c is the arc-length mean of f, r = |f_hat(1)| / sqrt(L), and sigma is
    the arc-length phase of f_hat(1) reduced to [0, L).
    """
    L = quantities.length(curve)
    z = curve.z
    theta = np.arange(curve.n) / curve.n
    c = np.mean(z)
    m1 = np.mean(z * np.exp(-2j * np.pi * theta))
    r = float(np.abs(m1))
    sigma = float((L / (2 * np.pi)) * math.atan2(m1.imag, m1.real) % L)
    return FourierFrame(c=(float(c.real), float(c.imag)), r=r, sigma=sigma)


def limit_circle(trace, i0_tol=1e-6):
    """Extrapolated limit circle from the final record of a converged trace."""
    if len(trace) < 5:
        raise NotConverged("need at least 5 records")
    last = trace[-1]
    if last.I[0] > i0_tol:
        raise NotConverged(f"final I_0 = {last.I[0]} above {i0_tol}")
    return CircleLimit(
        c_inf=(last.cx, last.cy),
        r_inf=last.L / (2 * np.pi),
        sigma_inf=last.sigma,
        L_inf=last.L,
    )


def tilde_f_distance(curve, frame, limit, k):
    """C^k distance between the phase-aligned curve and the limit circle.

    The comparison map is theta -> f(L theta - sigma); the limit is
    c_inf + (L_inf / 2 pi)(cos 2 pi theta, sin 2 pi theta).  Returns the sum
    over derivative orders j = 0..k of the max-norm of the j-th
    theta-derivative of the difference.
    """
    if k < 0 or k > curve.n // 2 - 2:
        raise OrderTooHigh("derivative order outside budget")
    n = curve.n
    coeffs = _spectral.fourier_coefficients(curve.z)
    kk = _spectral.wavenumbers(n)
    L = quantities.length(curve)
    shifted = coeffs * np.exp(-2j * np.pi * kk * (frame.sigma / L))
    # subtract the limit circle in coefficient space
    shifted[kk == 0] -= limit.c_inf[0] + 1j * limit.c_inf[1]
    shifted[kk == 1] -= limit.L_inf / (2 * np.pi)
    total = 0.0
    for j in range(k + 1):
        mult = (2j * np.pi * kk) ** j
        if j % 2 == 1 and n % 2 == 0:
            mult[n // 2] = 0.0
        samples = np.fft.ifft(shifted * mult * n)
        total += float(np.max(np.abs(samples)))
    return total


def is_star_shaped(curve, center):
    """True when the curve winds monotonically about ``center`` (ray test)."""
    pts = curve.points - np.asarray(center, dtype=float)
    d1 = curve_model.derivative(curve, 1)
    cross = pts[:, 0] * d1[:, 1] - pts[:, 1] * d1[:, 0]
    rad = np.hypot(pts[:, 0], pts[:, 1])
    if np.min(rad) <= 0:
        return False
    return bool(np.all(cross > 0) or np.all(cross < 0))


def hausdorff_to_disk(curve, center, radius):
    """Hausdorff distance between the closed region bounded by the curve and
    the disk of the given center/radius.

    Fast path (star-shaped about the center): max over samples of
    | |f - center| - radius |.  Otherwise falls back to the dense two-sided
    point-set distance between boundary samples.
    """
    from .oracles import dense_hausdorff, self_intersects

    if self_intersects(curve.points):
        raise NotSimple("curve is self-intersecting")
    pts = curve.points
    rad = np.hypot(pts[:, 0] - center[0], pts[:, 1] - center[1])
    if is_star_shaped(curve, center):
        return float(np.max(np.abs(rad - radius)))
    phi = np.linspace(0, 2 * np.pi, 4 * curve.n, endpoint=False)
    disk_boundary = np.column_stack(
        [center[0] + radius * np.cos(phi), center[1] + radius * np.sin(phi)]
    )
    return dense_hausdorff(pts, disk_boundary)


def barycenter(curve):
    """Area centroid of the enclosed domain by boundary quadrature."""
    from .oracles import self_intersects

    if self_intersects(curve.points):
        raise NotSimple("curve is self-intersecting")
    A = quantities.signed_area(curve)
    if abs(A) < 1e-12:
        raise DegenerateCurve("enclosed area too small for a barycenter")
    pts = curve.points
    d1 = curve_model.derivative(curve, 1)
    mx = np.mean(0.5 * pts[:, 0] ** 2 * d1[:, 1])  # iint x dx dy
    my = -np.mean(0.5 * pts[:, 1] ** 2 * d1[:, 0])  # iint y dx dy
    return (float(mx / A), float(my / A))


def convexity_time(trace):
    """Smallest recorded time after which every record is convex; None if the
    trace never stabilizes convex."""
    if not trace or not trace[-1].convex:
        return None
    t_star = trace[-1].t
    for rec in reversed(trace):
        if not rec.convex:
            break
        t_star = rec.t
    return t_star


def fit_decay(series, window_fraction=0.5):
    """Least-squares fit of log(value) against t on a trailing window.

    ``series`` is a list of (t, value); the window covers the trailing
    ``window_fraction`` of the time span.  Returns the decay rate (negated
    slope), intercept, window, and r^2.
    """
    if not 0 < window_fraction <= 1:
        raise InsufficientPositiveData("window_fraction must lie in (0, 1]")
    ts = np.array([t for t, _ in series], dtype=float)
    vs = np.array([v for _, v in series], dtype=float)
    if ts.size == 0:
        raise InsufficientPositiveData("empty series")
    t_hi = float(ts.max())
    t_lo_full = float(ts.min())
    t_lo = t_hi - window_fraction * (t_hi - t_lo_full)
    mask = (ts >= t_lo - 1e-15) & (vs > 0)
    if np.count_nonzero(mask) < 5:
        raise InsufficientPositiveData(
            "need at least 5 positive samples in the fit window"
        )
    x = ts[mask]
    y = np.log(vs[mask])
    slope, intercept = np.polyfit(x, y, 1)
    fit = slope * x + intercept
    ss_res = float(np.sum((y - fit) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 if ss_tot < 1e-28 else 1.0 - ss_res / ss_tot
    return DecayFit(
        lam=float(-slope),
        logC=float(intercept),
        window=(t_lo, t_hi),
        r_squared=float(r2),
    )


def frame_distance_series(trace) -> list:
    """(t, ||A (b - c)||) along a trace with snapshots (barycenter diagnostic)."""
    out = []
    for rec in trace:
        if rec.curve is None:
            continue
        b = barycenter(rec.curve)
        val = abs(rec.A) * math.hypot(b[0] - rec.cx, b[1] - rec.cy)
        out.append((rec.t, val))
    return out
