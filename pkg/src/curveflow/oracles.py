"""Independent low-tech reference implementations used by the tests.

These deliberately use different mathematics than the spectral main path
(polygons, centered finite differences, brute-force point-set distances,
short nonlinear simulations) so that agreement is evidence rather than
tautology.  None of them aim to be fast.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadOrder, EmptyInput, PerturbationTooLarge, TooFewPoints


@dataclass(frozen=True)
class PolygonOracleResult:
    length: float
    area: float
    convex: bool


def polygon_quantities(points):
    """Chord-length sum, shoelace signed area, and convexity of a closed polygon."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise TooFewPoints("polygon needs at least 3 points")
    nxt = np.roll(pts, -1, axis=0)
    edges = nxt - pts
    length = float(np.sum(np.hypot(edges[:, 0], edges[:, 1])))
    area = float(0.5 * np.sum(pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1]))
    cross = edges[:, 0] * np.roll(edges[:, 1], -1) - edges[:, 1] * np.roll(edges[:, 0], -1)
    convex = bool(np.all(cross >= 0) or np.all(cross <= 0))
    return PolygonOracleResult(length=length, area=area, convex=convex)


def fd_derivative(samples, order, h):
    """Second-order centered finite differences of periodic samples (order 1 or 2)."""
    y = np.asarray(samples, dtype=float)
    if order == 1:
        return (np.roll(y, -1, axis=0) - np.roll(y, 1, axis=0)) / (2 * h)
    if order == 2:
        return (np.roll(y, -1, axis=0) - 2 * y + np.roll(y, 1, axis=0)) / h**2
    raise BadOrder("fd_derivative supports orders 1 and 2")


def dense_hausdorff(points_a, points_b):
    """Brute-force Hausdorff distance between two planar point sets, O(n*m)."""
    a = np.atleast_2d(np.asarray(points_a, dtype=float))
    b = np.atleast_2d(np.asarray(points_b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise EmptyInput("point sets must be non-empty")
    d2 = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=2)
    forward = np.sqrt(np.max(np.min(d2, axis=1)))
    backward = np.sqrt(np.max(np.min(d2, axis=0)))
    return float(max(forward, backward))


def self_intersects(points):
    """Segment-pair intersection test over the closed polyline, skipping neighbors."""
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    if n < 4:
        raise TooFewPoints("need at least 4 points")
    p = pts
    q = np.roll(pts, -1, axis=0)
    i_idx, j_idx = np.triu_indices(n, k=2)
    # adjacent pair (0, n-1) shares the closing vertex; skip it too
    keep = ~((i_idx == 0) & (j_idx == n - 1))
    i_idx, j_idx = i_idx[keep], j_idx[keep]

    def orient(a, b, c):
        return (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (
            c[:, 0] - a[:, 0]
        )

    a, b = p[i_idx], q[i_idx]
    c, d = p[j_idx], q[j_idx]
    d1 = orient(a, b, c)
    d2 = orient(a, b, d)
    d3 = orient(c, d, a)
    d4 = orient(c, d, b)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)
    return bool(np.any(proper))


def mode_amplitude(curve, k):
    """Amplitude of the k-th radial Fourier mode about the curve's mean center."""
    pts = curve.points
    center = pts.mean(axis=0)
    rho = np.hypot(pts[:, 0] - center[0], pts[:, 1] - center[1])
    hat = np.fft.rfft(rho - rho.mean()) / rho.size
    return float(2.0 * np.abs(hat[k]))


def linearization_rate_check(m, k, radius, eps, n=128):
    """Measure the decay rate of a small mode-k perturbation under the full flow.

    Runs the nonlinear solver on a circle of radius R perturbed radially by
    ``eps`` in mode k over two e-foldings of the predicted rate, then fits
    the logarithm of the mode amplitude against time.
    """
    from . import asymptotics, curve_model, flow

    if k < 2:
        raise PerturbationTooLarge("mode k must be >= 2 for a decaying perturbation")
    if eps > 1e-3 * radius:
        raise PerturbationTooLarge("eps must be <= 1e-3 * R to stay in the linear regime")
    lam = flow.linearized_rate(m, k, radius)
    stiff = (k / radius) ** (2 * m + 2)
    dt = 0.002 / stiff
    t_max = 2.0 / lam
    n = max(n, 8 * (2 * m + 2))
    curve = curve_model.perturbed_circle(radius, [(k, eps, 0.0)], n)
    config = flow.FlowConfig(
        m=m,
        N=n,
        dt_init=dt,
        t_max=t_max,
        stop_I0=0.0,
        record_every=max(t_max / 40.0, dt),
        ell_max=1,
    )
    trace, _, _ = flow.evolve(curve, config)
    series = [(rec.t, mode_amplitude(rec.curve, k)) for rec in trace]
    fit = asymptotics.fit_decay(series, window_fraction=1.0)
    return fit.lam
