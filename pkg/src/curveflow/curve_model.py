"""Closed plane curves as uniform periodic sample arrays with spectral accuracy.

A curve is stored as N planar samples f(theta_i), theta_i = i/N on the
periodic parameter domain R/Z, without a duplicated endpoint.  All
differentiation and resampling is spectral; arc-length reparametrization
inverts the cumulative arc-length map with a monotone cubic table lookup
followed by Newton refinement at spectral precision.
"""

import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from . import _spectral
from .errors import (
    DegenerateCurve,
    InvalidPreset,
    NonMonotoneArcLength,
    OrderTooHigh,
    TooFewPoints,
)

MIN_POINTS = 16
ARCLENGTH_TOL = 1e-8
INVERSION_TOL = 1e-10  # relative convergence gate for the Newton-polished inverse
_DEGENERATE_LENGTH = 1e-12


@dataclass(frozen=True)
class ClosedCurve:
    """Uniformly parametrized periodic samples of a closed plane curve.

    Attributes
    ----------
    points : ndarray, shape (N, 2)
        Samples f(i/N); N even, N >= 16; periodic indexing, no duplicated
        endpoint.
    is_arclength : bool
        True when |d f / d theta| is constant (= L) to within the
        reparametrization tolerance.
    """

    points: np.ndarray
    is_arclength: bool = False

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=float))
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise TooFewPoints("points must have shape (N, 2)")
        if pts.shape[0] < MIN_POINTS:
            raise TooFewPoints(f"need at least {MIN_POINTS} points, got {pts.shape[0]}")
        if pts.shape[0] % 2 != 0:
            raise TooFewPoints("sample count must be even")
        if not np.all(np.isfinite(pts)):
            raise DegenerateCurve("non-finite sample coordinates")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def z(self):
        """Samples of the complex position z = x + i*y."""
        return self.points[:, 0] + 1j * self.points[:, 1]


@dataclass(frozen=True)
class SpectralCoeffs:
    """Complex Fourier modes c_k, k = -K..K, of z(theta) = sum c_k e^{2 pi i k theta}."""

    modes: np.ndarray
    K: int = field(default=0)

    def __post_init__(self):
        modes = np.asarray(self.modes, dtype=complex)
        if modes.ndim != 1 or modes.shape[0] % 2 != 1:
            raise ValueError("modes must be a 1-d array of odd length 2K+1")
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "K", modes.shape[0] // 2)


def from_samples(points):
    """Build a ClosedCurve from raw planar samples; no resampling is performed."""
    curve = ClosedCurve(points, is_arclength=False)
    d = np.diff(np.vstack([curve.points, curve.points[:1]]), axis=0)
    if np.sum(np.hypot(d[:, 0], d[:, 1])) < _DEGENERATE_LENGTH:
        raise DegenerateCurve("total polygonal length below 1e-12")
    return curve


def to_spectral(curve, K=None):
    """Fourier coefficients of the curve, ordered k = -K..K."""
    n = curve.n
    if K is None:
        K = n // 2 - 1
    if K > n // 2 - 1:
        raise OrderTooHigh(f"band limit K={K} exceeds N/2-1={n // 2 - 1}")
    c = np.fft.fft(curve.z) / n
    k = _spectral.wavenumbers(n).astype(int)
    modes = np.zeros(2 * K + 1, dtype=complex)
    for i, kk in enumerate(range(-K, K + 1)):
        modes[i] = c[k == kk][0] if np.any(k == kk) else 0.0
    return SpectralCoeffs(modes)


def from_spectral(coeffs, n):
    """Sample z(theta) = sum c_k e^{2 pi i k theta} on the uniform N-grid."""
    if n < MIN_POINTS or n % 2 != 0:
        raise TooFewPoints("n must be even and >= 16")
    if coeffs.K > n // 2 - 1:
        raise OrderTooHigh("band limit exceeds Nyquist for requested n")
    theta = np.arange(n) / n
    ks = np.arange(-coeffs.K, coeffs.K + 1)
    z = np.exp(2j * np.pi * np.outer(theta, ks)) @ coeffs.modes
    return from_samples(np.column_stack([z.real, z.imag]))


def derivative(curve, order):
    """Samples of d^order f / d theta^order by the spectral multiplier (2 pi i k)^order."""
    if order < 0:
        raise OrderTooHigh("order must be non-negative")
    if order > curve.n // 2 - 1:
        raise OrderTooHigh(f"order {order} exceeds N/2-1 = {curve.n // 2 - 1}")
    if order == 0:
        return curve.points.copy()
    dz = _spectral.spectral_derivative(curve.z, order)
    return np.column_stack([dz.real, dz.imag])


def parameter_speed(curve):
    """Samples of |d f / d theta|."""
    d1 = derivative(curve, 1)
    return np.hypot(d1[:, 0], d1[:, 1])


def curve_length(curve):
    """L = integral_0^1 |df/dtheta| d theta by periodic trapezoid (= mean)."""
    sp = parameter_speed(curve)
    length = float(np.mean(sp))
    if length < _DEGENERATE_LENGTH:
        raise DegenerateCurve("curve length below 1e-12")
    return length


def _arclength_theta_map(curve, oversampling=4):
    """Fine table (theta, s(theta)) plus total length, via spectral quadrature."""
    n = curve.n
    m = oversampling * n
    dz = _spectral.spectral_derivative(curve.z, 1)
    speed_fine = np.abs(_spectral.oversample(dz, oversampling))
    length = float(np.mean(speed_fine))
    if length < _DEGENERATE_LENGTH:
        raise DegenerateCurve("curve length below 1e-12")
    if np.min(speed_fine) < 1e-6 * length:
        raise NonMonotoneArcLength("parametrization speed vanishes (cusp)")
    # s(theta) = L*theta + periodic antiderivative of (speed - L)
    per = _spectral.periodic_antiderivative(speed_fine - length)
    theta_fine = np.arange(m) / m
    s_fine = length * theta_fine + per - per[0]
    theta_tab = np.append(theta_fine, 1.0)
    s_tab = np.append(s_fine, length)
    return theta_tab, s_tab, length, speed_fine


def resample_arclength(curve, n_out=None, oversampling=4):
    """Return a curve with ``n_out`` samples equally spaced in arc length.

    The cumulative arc-length map is tabulated at ``oversampling`` times the
    input resolution, inverted by monotone cubic (PCHIP) interpolation, and
    the inverse is polished with Newton iterations using spectral
    evaluations of s(theta) and |f'(theta)|.
    """
    if n_out is None:
        n_out = curve.n
    if n_out < MIN_POINTS or n_out % 2 != 0:
        raise TooFewPoints("n_out must be even and >= 16")
    theta_tab, s_tab, length, _ = _arclength_theta_map(curve, oversampling)
    inverse = PchipInterpolator(s_tab, theta_tab)
    targets = np.arange(n_out) * (length / n_out)
    theta = np.asarray(inverse(targets))

    z_coeffs = _spectral.fourier_coefficients(curve.z)
    dz = _spectral.spectral_derivative(curve.z, 1)
    dz_coeffs = _spectral.fourier_coefficients(dz)
    speed = np.abs(dz)
    mean_speed = float(np.mean(speed))
    per_coeffs = _spectral.fourier_coefficients(speed - mean_speed)
    k = _spectral.wavenumbers(curve.n)
    nz = k != 0
    per_coeffs[nz] = per_coeffs[nz] / (2j * np.pi * k[nz])
    per_coeffs[~nz] = 0.0
    if curve.n % 2 == 0:
        per_coeffs[curve.n // 2] = 0.0
    per0 = _spectral.evaluate_trig(per_coeffs, np.array([0.0])).real[0]

    for _ in range(3):
        s_val = mean_speed * theta + _spectral.evaluate_trig(per_coeffs, theta).real - per0
        sp_val = np.abs(_spectral.evaluate_trig(dz_coeffs, theta))
        theta = theta - (s_val - targets) / sp_val
    s_val = mean_speed * theta + _spectral.evaluate_trig(per_coeffs, theta).real - per0
    if np.max(np.abs(s_val - targets)) / length > INVERSION_TOL:
        raise NonMonotoneArcLength(
            "inversion of the cumulative arc-length map did not converge"
        )

    z_new = _spectral.evaluate_trig(z_coeffs, theta)
    pts = np.column_stack([z_new.real, z_new.imag])
    out = ClosedCurve(pts, is_arclength=True)
    # verify the arc-length invariant; with a converged inversion any excess
    # over the tolerance is the spectral-truncation floor of representing the
    # reparametrized curve with n_out samples, not an inversion failure
    sp_out = parameter_speed(out)
    l_out = float(np.mean(sp_out))
    dev = float(np.max(np.abs(sp_out - l_out)) / l_out)
    if dev > ARCLENGTH_TOL:
        warnings.warn(
            f"arc-length speed deviation {dev:.2e} exceeds {ARCLENGTH_TOL}: "
            "curve is under-resolved at this sample count",
            stacklevel=2,
        )
    return out


# ---------------------------------------------------------------------------
# presets


def circle(center=(0.0, 0.0), radius=1.0, n=256):
    if radius <= 0:
        raise InvalidPreset("radius must be positive")
    theta = np.arange(n) / n
    x = center[0] + radius * np.cos(2 * np.pi * theta)
    y = center[1] + radius * np.sin(2 * np.pi * theta)
    return ClosedCurve(np.column_stack([x, y]), is_arclength=True)


def ellipse(a, b, n=256):
    if a <= 0 or b <= 0:
        raise InvalidPreset("semi-axes must be positive")
    theta = np.arange(n) / n
    pts = np.column_stack([a * np.cos(2 * np.pi * theta), b * np.sin(2 * np.pi * theta)])
    return resample_arclength(from_samples(pts), n)


def perturbed_circle(radius, modes, n=256):
    """Radial perturbation r(theta) = R + sum eps_k cos(2 pi k theta + phase_k)."""
    if radius <= 0:
        raise InvalidPreset("radius must be positive")
    theta = np.arange(n) / n
    r = np.full(n, float(radius))
    for k, eps, phase in modes:
        if not np.isfinite(eps):
            raise InvalidPreset("non-finite perturbation amplitude")
        r = r + eps * np.cos(2 * np.pi * int(k) * theta + phase)
    pts = np.column_stack([r * np.cos(2 * np.pi * theta), r * np.sin(2 * np.pi * theta)])
    return resample_arclength(from_samples(pts), n)


def random_bandlimited(seed, max_mode=8, max_amplitude=0.2, n=256, radius=1.0):
    """Reproducible random star-shaped curve with radial modes 2..max_mode.

    The relative radial perturbation amplitudes are rescaled so their sum is
    at most ``max_amplitude``, which keeps the curve simple with rotation
    number 1.
    """
    if max_mode < 2 or max_amplitude < 0:
        raise InvalidPreset("need max_mode >= 2 and max_amplitude >= 0")
    rng = np.random.default_rng(seed)
    ks = np.arange(2, max_mode + 1)
    amps = rng.uniform(0.0, 1.0, size=ks.size)
    total = rng.uniform(0.2, 1.0) * max_amplitude
    amps = amps / max(np.sum(amps), 1e-30) * total
    phases = rng.uniform(0.0, 2 * np.pi, size=ks.size)
    modes = [(int(k), radius * a, p) for k, a, p in zip(ks, amps, phases)]
    return perturbed_circle(radius, modes, n)


_PRESETS = {
    "circle": (circle, (3, 3)),
    "ellipse": (ellipse, (2, 2)),
    "perturbed_circle": (perturbed_circle, (3, 4)),
    "random_bandlimited": (random_bandlimited, (1, 3)),
}


def make_preset(descriptor, n=256):
    """Build a preset curve from a descriptor like ``circle(0,0,1)``.

    Grammar: ``NAME(num, num, ...)`` with strictly numeric arguments.
    ``perturbed_circle`` takes (R, mode, amplitude[, phase]);
    ``random_bandlimited`` takes (seed[, max_mode[, max_amplitude]]).
    """
    descriptor = descriptor.strip()
    if "(" not in descriptor or not descriptor.endswith(")"):
        raise InvalidPreset(f"malformed preset descriptor: {descriptor!r}")
    name, _, rest = descriptor.partition("(")
    name = name.strip()
    if name not in _PRESETS:
        raise InvalidPreset(f"unknown preset {name!r}")
    args_str = rest[:-1].strip()
    try:
        args = [float(tok) for tok in args_str.split(",")] if args_str else []
    except ValueError as exc:
        raise InvalidPreset(f"non-numeric preset argument in {descriptor!r}") from exc
    lo, hi = _PRESETS[name][1]
    if not lo <= len(args) <= hi:
        raise InvalidPreset(f"preset {name} takes {lo}..{hi} arguments, got {len(args)}")
    if name == "circle":
        cx, cy, r = args
        return circle((cx, cy), r, n)
    if name == "ellipse":
        return ellipse(args[0], args[1], n)
    if name == "perturbed_circle":
        radius, mode, amp = args[0], int(args[1]), args[2]
        phase = args[3] if len(args) == 4 else 0.0
        return perturbed_circle(radius, [(mode, amp, phase)], n)
    seed = int(args[0])
    max_mode = int(args[1]) if len(args) >= 2 else 8
    max_amp = args[2] if len(args) >= 3 else 0.2
    return random_bandlimited(seed, max_mode, max_amp, n)


# ---------------------------------------------------------------------------
# (de)serialization


def save_curve(curve, path):
    """Write the curve as versioned JSON (``samples`` kind; bit-exact round trip)."""
    payload = {
        "version": 1,
        "kind": "samples",
        "points": [[float(x), float(y)] for x, y in curve.points],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_curve(path):
    """Read a curve JSON file of kind ``samples`` or ``fourier``."""
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("version") != 1:
        raise InvalidPreset("unsupported curve file version")
    kind = payload.get("kind")
    if kind == "samples":
        return from_samples(np.asarray(payload["points"], dtype=float))
    if kind == "fourier":
        K = int(payload["K"])
        raw = np.asarray(payload["coeffs"], dtype=float)
        if raw.shape != (2 * K + 1, 2):
            raise InvalidPreset("fourier curve file: coeffs must have shape (2K+1, 2)")
        modes = raw[:, 0] + 1j * raw[:, 1]
        n = max(256, 2 * (K + 2))
        if n % 2:
            n += 1
        return from_spectral(SpectralCoeffs(modes), n)
    raise InvalidPreset(f"unknown curve file kind {kind!r}")
