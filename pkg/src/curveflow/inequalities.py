"""Numerical evaluation of the interpolation inequalities between the
curvature-deviation energies I_ell and the isoperimetric deficit I_{-1},
on single curves and over random ensembles.
"""

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import curve_model, quantities
from .errors import AmbiguousRotation, BadIndices, EmptyEnsemble

TRIVIAL_EPS = 1e-14


@dataclass(frozen=True)
class InequalityReport:
    """Evaluated left/right sides and slack of one inequality on one curve.

    ``ratio`` is lhs/rhs, reported as 0 when both sides are below 1e-14
    (the trivially-satisfied circle case).
    """

    name: str  # one of Thm1Lower, Thm1Upper, GN, Thm2
    lhs: float
    rhs: float
    slack: float
    ratio: float
    trivial: bool = False
    params: Optional[tuple] = None

    def to_json(self):
        payload = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "ratio": self.ratio,
            "trivial": self.trivial,
            "params": list(self.params) if self.params is not None else None,
        }
        return json.dumps(payload, sort_keys=True)


def _report(name, lhs, rhs, params=None):
    trivial = abs(lhs) < TRIVIAL_EPS and abs(rhs) < TRIVIAL_EPS
    ratio = 0.0 if trivial else (lhs / rhs if rhs != 0 else np.inf)
    return InequalityReport(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(rhs - lhs),
        ratio=float(ratio),
        trivial=trivial,
        params=params,
    )


def check_theorem1(curve):
    """Both sides of  8 pi^2 I_{-1} <= I_0 <= I_{-1}^{1/2} [L^3 int {k^3 kdev + (kdev')^2} ds]^{1/2}.

    Returns the (lower, upper) pair of reports.
    """
    L = quantities.length(curve)
    I0 = quantities.scale_invariant_I(curve, 0)
    Im1 = quantities.isoperimetric_deficit(curve)
    kap = quantities.curvature(curve)
    kdev = quantities.curvature_deviation(curve)
    kdev_p = quantities.arclength_derivative(kdev, L, 1)
    bracket = L**4 * np.mean(kap**3 * kdev + kdev_p**2)
    lower = _report("Thm1Lower", 8 * np.pi**2 * Im1, I0)
    upper = _report("Thm1Upper", I0, np.sqrt(max(Im1, 0.0) * max(bracket, 0.0)))
    return lower, upper


def check_gn(curve, ell, m):
    """Gagliardo-Nirenberg ratio I_ell / (I_m^{ell/m} I_0^{1-ell/m}), 0 <= ell <= m."""
    if not 0 <= ell <= m or m < 1:
        raise BadIndices(f"need 0 <= ell <= m with m >= 1, got ell={ell} m={m}")
    I0 = quantities.scale_invariant_I(curve, 0)
    Im = quantities.scale_invariant_I(curve, m)
    Il = quantities.scale_invariant_I(curve, ell)
    if I0 < TRIVIAL_EPS or Im < TRIVIAL_EPS:
        return _report("GN", Il, 0.0, params=(ell, m))
    rhs = Im ** (ell / m) * I0 ** (1 - ell / m)
    return _report("GN", Il, rhs, params=(ell, m))


def check_theorem2(curve, ell, m):
    """Ratio of I_ell to the two-term bracket I_{-1}^{(m-ell)/2} I_m + I_{-1}^{(m-ell)/(m+1)} I_m^{(ell+1)/(m+1)}."""
    if not 0 <= ell <= m:
        raise BadIndices(f"need 0 <= ell <= m, got ell={ell} m={m}")
    Il = quantities.scale_invariant_I(curve, ell)
    Im = quantities.scale_invariant_I(curve, m)
    Im1 = max(quantities.isoperimetric_deficit(curve), 0.0)
    rhs = Im1 ** ((m - ell) / 2.0) * Im + Im1 ** ((m - ell) / (m + 1.0)) * Im ** (
        (ell + 1.0) / (m + 1.0)
    )
    return _report("Thm2", Il, rhs, params=(ell, m))


def empirical_constant(ensemble, ell, m, which="Thm2"):
    """Sup of the inequality ratio over an ensemble; empirical lower bound for C(ell, m).

    Returns (sup_ratio, index_of_maximizer).  Trivial (circle) reports
    contribute ratio 0.
    """
    if not ensemble:
        raise EmptyEnsemble("ensemble must be non-empty")
    check = {"GN": check_gn, "Thm2": check_theorem2}[which]
    best, best_idx = 0.0, 0
    for idx, curve in enumerate(ensemble):
        rep = check(curve, ell, m)
        if rep.ratio > best:
            best, best_idx = rep.ratio, idx
    return best, best_idx


def random_ensemble(count, seed, max_mode=8, max_amplitude=0.2, n=256):
    """Reproducible ensemble of simple rotation-number-1 band-limited curves.

    Curves failing the simplicity or rotation check are skipped (the radial
    construction makes this rare); successive sub-seeds keep the draw
    deterministic.
    """
    from .oracles import self_intersects

    curves = []
    sub = 0
    while len(curves) < count:
        curve = curve_model.random_bandlimited(
            seed * 1_000_003 + sub, max_mode, max_amplitude, n
        )
        sub += 1
        if self_intersects(curve.points):
            continue
        try:
            if quantities.rotation_number(curve) != 1:
                continue
        except AmbiguousRotation:
            continue
        curves.append(curve)
    return curves
