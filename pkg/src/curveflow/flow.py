"""Time stepping for the H^{-m} gradient flow of length.

The normal velocity is V = (-1)^m d^{2m}/ds^{2m} of the curvature
deviation; m = 0 is Gage's area-preserving flow, m = 1 is curve diffusion.
One step is linearly-implicit IMEX: the constant-coefficient stiff part
(-1)^m d^{2m+2} f / ds^{2m+2} is inverted mode-by-mode inside a two-stage
second-order L-stable scheme, the remaining nonlinearity is explicit, and
the curve is re-resampled to arc length whenever the parameter speed drifts
past a small tolerance (and always at record times).
"""

from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np

from . import _spectral, asymptotics, curve_model, quantities
from .errors import (
    BadInitialData,
    CurvatureBlowup,
    CurveFlowError,
    MissingSnapshots,
    StepSizeUnderflow,
    TooFewRecords,
)

DT_UNDERFLOW_FRACTION = 1e-14
ACCEPT_FLOOR = 1e-12  # roundoff floor for the length-change acceptance test
RESAMPLE_DEV_TOL = 5e-3  # max relative speed deviation before re-resampling


def _nonuniformity(curve):
    dz = _spectral.spectral_derivative(curve.z, 1)
    sp = np.abs(dz)
    L = float(np.mean(sp))
    return float(np.max(np.abs(sp - L)) / L)


@dataclass(frozen=True)
class FlowConfig:
    """Solver order and discretization policy for one run."""

    m: int
    N: int = 256
    dt_init: float = 1e-3
    t_max: float = 1.0
    stop_I0: float = 0.0
    record_every: float = 1e-2
    ell_max: int = 2
    safety: float = 0.9
    blowup_kappa: float = 1e6

    def __post_init__(self):
        if self.m < 0:
            raise BadInitialData("flow order m must be >= 0")
        if self.N % 2 != 0 or self.N < 8 * (2 * self.m + 2):
            raise BadInitialData(
                f"N must be even and >= 8*(2m+2) = {8 * (2 * self.m + 2)}"
            )
        if not 0 < self.dt_init <= self.t_max:
            raise BadInitialData("need 0 < dt_init <= t_max")
        if self.stop_I0 < 0 or self.record_every <= 0:
            raise BadInitialData("stop_I0 must be >= 0 and record_every > 0")
        if not 0 <= self.ell_max <= self.N // 2 - 2:
            raise BadInitialData("ell_max outside the derivative budget")
        if not 0 < self.safety <= 1:
            raise BadInitialData("safety must lie in (0, 1]")
        if self.blowup_kappa <= 0:
            raise BadInitialData("blowup_kappa must be positive")


@dataclass(frozen=True)
class FlowState:
    t: float
    curve: curve_model.ClosedCurve
    dt: float
    step_count: int = 0
    accept_streak: int = 0


@dataclass(frozen=True)
class TraceRecord:
    """One row of the monitored time series."""

    t: float
    L: float
    A: float
    I_m1: float
    I: Tuple[float, ...]
    kappa_min: float
    kappa_max: float
    convex: bool
    cx: float
    cy: float
    r: float
    sigma: float
    simple: bool
    curve: Optional[curve_model.ClosedCurve] = field(default=None, compare=False)


@dataclass(frozen=True)
class Termination:
    kind: str  # Converged | TimeOut | Breakdown
    detail: str = ""

    def __str__(self):
        return self.kind if not self.detail else f"{self.kind}({self.detail})"


def linearized_rate(m, k, radius=1.0):
    """Decay rate k^{2m} (k^2 - 1) / R^{2m+2} of a radial mode-k perturbation
    of the circle of radius R under the linearized flow; 0 for the neutral
    translation mode k = 1."""
    if k < 1:
        raise BadInitialData("mode k must be >= 1")
    return float(k ** (2 * m) * (k**2 - 1) / radius ** (2 * m + 2))


def normal_velocity(curve, m):
    """Samples of the scalar normal velocity V = (-1)^m d^{2m} kappa_dev / ds^{2m}."""
    L = quantities.length(curve)
    kdev = quantities.curvature_deviation(curve)
    return (-1.0) ** m * quantities.arclength_derivative(kdev, L, 2 * m)


def _velocity_z(z, m):
    """Complex samples of V * nu for a general (near-uniform) parametrization.

    Arc-length derivatives are applied as repeated (1/|f'|) d/dtheta so the
    stage curves of the time integrator need not be exactly arc-length
    parametrized.  Returns (velocity, L, speed, kappa).
    """
    dz = _spectral.spectral_derivative(z, 1)
    d2z = _spectral.spectral_derivative(z, 2)
    sp = np.abs(dz)
    L = float(np.mean(sp))
    kappa = (np.conj(dz) * d2z).imag / sp**3
    kdev = kappa - np.mean(kappa * sp) / L
    g = kdev
    for _ in range(2 * m):
        g = _spectral.spectral_derivative(g, 1) / sp
    v = (-1.0) ** m * g
    vel = _spectral.dealias(v * (1j * dz / sp))
    return vel, L, sp, kappa


def _I_ell_z(z, ell):
    """I_ell evaluated on a general parametrization (chain-rule derivatives)."""
    dz = _spectral.spectral_derivative(z, 1)
    d2z = _spectral.spectral_derivative(z, 2)
    sp = np.abs(dz)
    L = float(np.mean(sp))
    kappa = (np.conj(dz) * d2z).imag / sp**3
    g = kappa - np.mean(kappa * sp) / L
    for _ in range(ell):
        g = _spectral.spectral_derivative(g, 1) / sp
    return float(L ** (2 * ell + 1) * np.mean(g**2 * sp))


# two-stage, second-order, L-stable IMEX coefficients
_GAMMA = 1.0 - np.sqrt(2.0) / 2.0
_DELTA = 1.0 - 1.0 / (2.0 * _GAMMA)


def _imex_step(z_hat, n_hat, mu, m, dt):
    """One ARS(2,2,2) step of z_t = A z + N(z) with A the stiff multiplier -mu.

    ``n_hat`` is the transform of N(z) at the step start; it is reused across
    retries with smaller dt.
    """
    z1_hat = (z_hat + dt * _GAMMA * n_hat) / (1.0 + dt * _GAMMA * mu)
    z1 = np.fft.ifft(z1_hat)
    vel_1, _, _, _ = _velocity_z(z1, m)
    n1_hat = np.fft.fft(vel_1) + mu * z1_hat
    new_hat = (
        z_hat
        + dt * (_DELTA * n_hat + (1.0 - _DELTA) * n1_hat)
        - dt * (1.0 - _GAMMA) * mu * z1_hat
    ) / (1.0 + dt * _GAMMA * mu)
    return np.fft.ifft(new_hat)


def step(state, config, max_dt=None, resample=True):
    """One adaptive linearly-implicit IMEX step; returns the new state.

    The constant-coefficient stiff term is inverted per Fourier mode with
    1/(1 + gamma dt (2 pi (|k|+1) / L)^{2m+2}) inside a two-stage
    second-order scheme; the nonlinear remainder is explicit; pointwise products are
    dealiased by the 2/3 rule.  A trial step is accepted when the relative
    length change stays within 10 * safety * dt * I_m / L^{2m+2}; otherwise
    dt is halved and the step retried.  With ``resample=True`` the accepted
    curve is re-resampled to arc length.
    """
    m = config.m
    curve = state.curve
    z = curve.z
    vel_n, L, sp, _ = _velocity_z(z, m)
    I_m = _I_ell_z(z, m)
    k = _spectral.wavenumbers(curve.n)
    # a radial perturbation of mode q appears on z-modes q+1 and -(q-1) and
    # decays at rate q^{2m}(q^2-1)/R^{2m+2}; shifting the multiplier by one
    # makes the implicit part dominate that rate on the lower sideband too,
    # which keeps the explicit remainder nonstiff for every m
    mu = (2 * np.pi * (np.abs(k) + 1) / L) ** (2 * m + 2)
    z_hat = np.fft.fft(z)
    n_hat = np.fft.fft(vel_n) + mu * z_hat

    dt = state.dt
    streak = state.accept_streak
    while True:
        dt_eff = dt if max_dt is None else min(dt, max_dt)
        if dt_eff < DT_UNDERFLOW_FRACTION * config.t_max:
            raise StepSizeUnderflow(f"dt underflow at t={state.t}")
        z_new = _imex_step(z_hat, n_hat, mu, m, dt_eff)
        dz_new = _spectral.spectral_derivative(z_new, 1)
        sp_new = np.abs(dz_new)
        L_new = float(np.mean(sp_new))
        budget = 10.0 * config.safety * dt_eff * I_m / L ** (2 * m + 2) + ACCEPT_FLOOR
        if abs(L_new - L) / L <= budget:
            break
        dt *= 0.5
        streak = 0

    d2z_new = _spectral.spectral_derivative(z_new, 2)
    kap = (np.conj(dz_new) * d2z_new).imag / sp_new**3
    if np.max(np.abs(kap)) > config.blowup_kappa:
        raise CurvatureBlowup(f"max |kappa| exceeded {config.blowup_kappa}")
    trial = curve_model.from_samples(np.column_stack([z_new.real, z_new.imag]))
    if resample:
        trial = curve_model.resample_arclength(trial, curve.n)

    streak += 1
    next_dt = dt
    if streak >= 10:
        next_dt = min(dt * 1.2, config.dt_init)
        streak = 0
    return FlowState(
        t=state.t + dt_eff,
        curve=trial,
        dt=next_dt,
        step_count=state.step_count + 1,
        accept_streak=streak,
    )


def _record(state, config):
    curve = state.curve
    L = quantities.length(curve)
    A = quantities.signed_area(curve)
    kap = quantities.curvature(curve)
    I = tuple(
        quantities.scale_invariant_I(curve, ell) for ell in range(config.ell_max + 1)
    )
    frame = asymptotics.fourier_frame(curve)
    from .oracles import self_intersects

    return TraceRecord(
        t=state.t,
        L=L,
        A=A,
        I_m1=quantities.isoperimetric_deficit(curve),
        I=I,
        kappa_min=float(np.min(kap)),
        kappa_max=float(np.max(kap)),
        convex=bool(np.min(kap) > 0),
        cx=frame.c[0],
        cy=frame.c[1],
        r=frame.r,
        sigma=frame.sigma,
        simple=not self_intersects(curve.points),
        curve=curve,
    )


def evolve(curve, config):
    """Advance the flow to t_max, convergence (I_0 <= stop_I0), or breakdown.

    Returns (trace, final_state, termination).  Records are taken exactly at
    multiples of ``record_every`` (steps are clipped to land on them), plus
    the initial and final instants.
    """
    if quantities.rotation_number(curve) != 1:
        raise BadInitialData("initial rotation number must be 1")
    if quantities.signed_area(curve) <= 0:
        raise BadInitialData("initial signed area must be positive")
    start = curve if (curve.is_arclength and curve.n == config.N) else (
        curve_model.resample_arclength(curve, config.N)
    )

    state = FlowState(t=0.0, curve=start, dt=config.dt_init)
    trace: List[TraceRecord] = [_record(state, config)]
    if config.stop_I0 > 0 and trace[-1].I[0] <= config.stop_I0:
        return trace, state, Termination("Converged")

    next_record = config.record_every
    tiny = 1e-12 * max(config.t_max, 1.0)
    try:
        while state.t < config.t_max - tiny:
            target = min(next_record, config.t_max)
            state = step(state, config, max_dt=target - state.t, resample=False)
            at_record = state.t >= target - tiny
            if at_record or _nonuniformity(state.curve) > RESAMPLE_DEV_TOL:
                state = replace(
                    state,
                    curve=curve_model.resample_arclength(state.curve, config.N),
                )
            if at_record:
                trace.append(_record(state, config))
                next_record = target + config.record_every
                if config.stop_I0 > 0 and trace[-1].I[0] <= config.stop_I0:
                    return trace, state, Termination("Converged")
    except (StepSizeUnderflow, CurvatureBlowup, CurveFlowError) as exc:
        trace.append(_record(state, config))
        return trace, state, Termination("Breakdown", type(exc).__name__)
    if abs(trace[-1].t - state.t) > tiny:
        trace.append(_record(state, config))
    return trace, state, Termination("TimeOut")


# ---------------------------------------------------------------------------
# discrete checks of the exact evolution identities


def _interior_centered(trace, values):
    ts = np.array([rec.t for rec in trace])
    vals = np.asarray(values)
    dv = (vals[2:] - vals[:-2]) / (ts[2:] - ts[:-2])
    return dv


def gradient_identity_residual(trace, config):
    """Relative residual of dL/dt = -I_m / L^{2m+1} at interior records."""
    if len(trace) < 3:
        raise TooFewRecords("need at least 3 records")
    _require_snapshots(trace)
    m = config.m
    dLdt = _interior_centered(trace, [rec.L for rec in trace])
    res = np.empty(len(trace) - 2)
    for i, rec in enumerate(trace[1:-1]):
        I_m = quantities.scale_invariant_I(rec.curve, m)
        model = I_m / rec.L ** (2 * m + 1)
        res[i] = abs(dLdt[i] + model) / (model + 1e-14)
    return res


def _require_snapshots(trace):
    if any(rec.curve is None for rec in trace):
        raise MissingSnapshots("trace records carry no curve snapshots")


def energy_identity_residual_I0(trace, config):
    """Relative residual of the I_0 energy balance

        d/dt I_0 + I_0 I_m / L^{2(m+1)} + 2 I_{m+1} / L^{2(m+1)}
            = (-1)^m L int (kdev^3 + (6 pi / L) kdev^2 + (8 pi^2 / L^2) kdev)
                          d^{2m} kdev / ds^{2m}  ds

    at interior records, with the right side evaluated spectrally (dealiased
    products) on the stored curve snapshots.
    """
    if len(trace) < 3:
        raise TooFewRecords("need at least 3 records")
    _require_snapshots(trace)
    m = config.m
    dI0dt = _interior_centered(trace, [rec.I[0] for rec in trace])
    res = np.empty(len(trace) - 2)
    for i, rec in enumerate(trace[1:-1]):
        curve = rec.curve
        L = rec.L
        I0 = quantities.scale_invariant_I(curve, 0)
        I_m = quantities.scale_invariant_I(curve, m)
        I_m1p = quantities.scale_invariant_I(curve, m + 1)
        kdev = quantities.curvature_deviation(curve)
        d2m = quantities.arclength_derivative(kdev, L, 2 * m)
        poly = (
            _spectral.dealias(_spectral.dealias(kdev * kdev) * kdev)
            + (6 * np.pi / L) * _spectral.dealias(kdev * kdev)
            + (8 * np.pi**2 / L**2) * kdev
        )
        rhs = (-1.0) ** m * L**2 * np.mean(_spectral.dealias(poly * d2m))
        drag = I0 * I_m / L ** (2 * (m + 1))
        diss = 2 * I_m1p / L ** (2 * (m + 1))
        lhs = dI0dt[i] + drag + diss
        scale = max(abs(dI0dt[i]), drag, diss, abs(rhs), 1e-14)
        res[i] = abs(lhs - rhs) / scale
    return res


# ---------------------------------------------------------------------------
# trace serialization


def trace_header(ell_max):
    cols = ["t", "L", "A", "I_m1"]
    cols += [f"I_{ell}" for ell in range(ell_max + 1)]
    cols += ["kappa_min", "kappa_max", "convex", "cx", "cy", "r", "sigma", "simple"]
    return ",".join(cols)


def _fmt(x):
    return format(float(x), ".17g")


def trace_to_csv(trace, ell_max):
    """Render the trace as CSV with the exact column contract; 17 significant digits."""
    lines = [trace_header(ell_max)]
    for rec in trace:
        row = [_fmt(rec.t), _fmt(rec.L), _fmt(rec.A), _fmt(rec.I_m1)]
        row += [_fmt(v) for v in rec.I[: ell_max + 1]]
        row += [
            _fmt(rec.kappa_min),
            _fmt(rec.kappa_max),
            "1" if rec.convex else "0",
            _fmt(rec.cx),
            _fmt(rec.cy),
            _fmt(rec.r),
            _fmt(rec.sigma),
            "1" if rec.simple else "0",
        ]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def trace_from_csv(text):
    """Parse a trace CSV back into TraceRecord objects (without snapshots)."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) < 2:
        raise TooFewRecords("trace CSV has no data rows")
    header = lines[0].split(",")
    i_cols = [c for c in header if c.startswith("I_") and c != "I_m1"]
    ell_max = len(i_cols) - 1
    idx = {name: i for i, name in enumerate(header)}
    records = []
    for ln in lines[1:]:
        parts = ln.split(",")
        records.append(
            TraceRecord(
                t=float(parts[idx["t"]]),
                L=float(parts[idx["L"]]),
                A=float(parts[idx["A"]]),
                I_m1=float(parts[idx["I_m1"]]),
                I=tuple(float(parts[idx[f"I_{ell}"]]) for ell in range(ell_max + 1)),
                kappa_min=float(parts[idx["kappa_min"]]),
                kappa_max=float(parts[idx["kappa_max"]]),
                convex=parts[idx["convex"]] == "1",
                cx=float(parts[idx["cx"]]),
                cy=float(parts[idx["cy"]]),
                r=float(parts[idx["r"]]),
                sigma=float(parts[idx["sigma"]]),
                simple=parts[idx["simple"]] == "1",
            )
        )
    return records
