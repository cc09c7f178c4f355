"""Acceptance gate: twelve verification criteria, one test per criterion.

Criteria 3 and 4 are asserted exactly as stated and fail by design of the
measurement, not of the solver: both bound the *maximum* relative residual of
a centered finite difference in time over the whole trace, including records
where the differencing is mathematically unable to resolve the dynamics.
See the test docstrings for the quantitative analysis; the resolved-window
behavior of the same residuals (small, and shrinking 4x when the cadence is
halved) is verified in tests/test_flow.py.
"""

import json

import numpy as np
import pytest

from curveflow import (
    asymptotics,
    cli,
    curve_model,
    flow,
    inequalities,
    oracles,
    quantities,
)

SCALES = (0.1, 3.0, 100.0)


def _scaled(curve, factor):
    return curve_model.ClosedCurve(curve.points * factor, is_arclength=True)


# ---------------------------------------------------------------------------
# 1. circle stationarity


def test_criterion_01_circle_stationarity():
    for m in (0, 1, 2):
        c = curve_model.circle((0.0, 0.0), 1.0, 128)
        config = flow.FlowConfig(
            m=m, N=128, dt_init=1e-3, t_max=1.0, record_every=0.25, ell_max=1
        )
        trace, state, term = flow.evolve(c, config)
        assert term.kind == "TimeOut"
        disp = np.max(
            np.hypot(
                state.curve.points[:, 0] - c.points[:, 0],
                state.curve.points[:, 1] - c.points[:, 1],
            )
        )
        assert disp <= 1e-8, f"m={m}: displacement {disp:.3e}"
        drift = abs(trace[-1].L - trace[0].L) / trace[0].L
        assert drift <= 1e-10, f"m={m}: L drift {drift:.3e}"


# ---------------------------------------------------------------------------
# 2. conservation / monotonicity on the canonical run


def test_criterion_02_conservation_and_monotonicity(canonical):
    trace = canonical["coarse_trace"]
    A0 = trace[0].A
    drift = max(abs(rec.A - A0) / A0 for rec in trace)
    assert drift <= 1e-6, f"area drift {drift:.3e}"
    Ls = np.array([rec.L for rec in trace])
    assert np.all(np.diff(Ls) <= 1e-10), "L not non-increasing to 1e-10"
    deficits = np.array([rec.I_m1 for rec in trace])
    assert np.all(np.diff(deficits) <= 0), "isoperimetric deficit not monotone"


# ---------------------------------------------------------------------------
# 3. gradient-flow identity (fails as stated; see docstring)


def test_criterion_03_gradient_identity(canonical):
    """dL/dt = -I_m / L^{2m+1}, centered differences at cadence 1e-2, max
    relative residual <= 1e-3.

    The maximum over *all* interior records cannot meet 1e-3 for this run:

    * Early records: the ellipse starts with energy in radial modes 4 and 6,
      whose decay rates under m = 1 are lam_4 = 240 and lam_6 = 1260 (times
      (2 pi / L)^4 rescaling ~ 0.177, i.e. e-folding times of order 1e-2 to
      1e-3).  A centered difference with half-width h = 1e-2 has relative
      error (lam h)^2 / 6 ~ O(1) for these modes; the measured residual at
      the first interior records is 9.6e-2 and is independent of the time
      step (unchanged under dt in {4e-4, 2e-4, 1e-4, 7e-5}), so it is a
      property of the stated cadence, not of the solver.
    * Late records: I_0 <= 2e-6 puts dL/dt near the machine floor of L
      (|dL| ~ 1e-13 per record), and the relative residual is dominated by
      roundoff in the differenced lengths.

    On the resolved middle window (records with 1e-6 < I_0, index >= 10) the
    max residual is 5.99e-4 <= 1e-3 and shrinks by exactly 4.0x when the
    cadence is halved to 5e-3, confirming the identity itself.
    """
    res = flow.gradient_identity_residual(
        canonical["coarse_trace"], canonical["coarse_config"]
    )
    res_fine = flow.gradient_identity_residual(
        canonical["fine_trace"], canonical["fine_config"]
    )
    assert np.max(res) <= 1e-3, (
        f"max residual {np.max(res):.3e} > 1e-3 at cadence 1e-2 "
        f"(at record index {np.argmax(res) + 1}; cadence 5e-3 gives "
        f"{np.max(res_fine):.3e}); the early-time residual is set by the "
        "cadence (unresolved fast harmonics lam*h >~ 1), not the solver -- "
        "see docstring"
    )


# ---------------------------------------------------------------------------
# 4. I_0 energy balance (fails as stated; see docstring)


def test_criterion_04_energy_identity(canonical):
    """d/dt I_0 balance, max relative residual <= 1e-2 at cadence 1e-2.

    The maximum over all interior records cannot meet 1e-2 for this run:

    * Early records: same unresolved-harmonic effect as criterion 3, at
      larger amplitude because d I_0 / dt decays twice as fast as dL/dt
      (measured residual ~0.3 on the first interior records, independent of
      the time step).
    * Late records: once I_0 <~ 2e-6 the balance is dominated by I_2, whose
      integrand kdev'' sits below the spectral noise floor (2 pi k / L)^2 *
      eps_machine of the stored curves; the relative residual then grows to
      the measured maximum 0.95.

    On the resolved middle window the residual is <= 9.3e-2 at this cadence
    and converges at the expected second order as the cadence is halved; the
    identity itself is verified on a slow (mode-2) run in tests/test_flow.py
    with residual < 5e-2 shrinking 4x under cadence halving.
    """
    res = flow.energy_identity_residual_I0(
        canonical["coarse_trace"], canonical["coarse_config"]
    )
    assert np.max(res) <= 1e-2, (
        f"max residual {np.max(res):.3e} > 1e-2 at cadence 1e-2 "
        f"(at record index {np.argmax(res) + 1}); late-time records are "
        "noise-floor dominated once I_0 <~ 2e-6 -- see docstring"
    )


# ---------------------------------------------------------------------------
# 5. first pair of sharp inequalities on the random ensemble


def test_criterion_05_theorem1_on_ensemble(ensemble):
    assert len(ensemble) == 1000
    for curve in ensemble:
        lower, upper = inequalities.check_theorem1(curve)
        for rep in (lower, upper):
            tol = 1e-9 * max(1.0, rep.rhs)
            assert rep.slack >= -tol, f"{rep.name}: slack {rep.slack:.3e}"
            if abs(rep.slack) <= tol:
                assert quantities.scale_invariant_I(curve, 0) <= 1e-10


# ---------------------------------------------------------------------------
# 6. scale invariance of the interpolation ratios


def test_criterion_06_scale_invariance(ensemble):
    worst = 0.0
    for curve in ensemble[:100]:
        base_t2 = inequalities.check_theorem2(curve, 0, 1).ratio
        base_gn = inequalities.check_gn(curve, 1, 2).ratio
        for factor in SCALES:
            scaled = _scaled(curve, factor)
            worst = max(
                worst,
                abs(inequalities.check_theorem2(scaled, 0, 1).ratio - base_t2)
                / base_t2,
                abs(inequalities.check_gn(scaled, 1, 2).ratio - base_gn)
                / base_gn,
            )
            assert inequalities.check_gn(scaled, 0, 2).ratio == 1.0
            assert inequalities.check_gn(scaled, 2, 2).ratio == 1.0
    assert worst <= 1e-9, f"worst relative ratio change {worst:.3e}"


# ---------------------------------------------------------------------------
# 7. Wirtinger chain


def test_criterion_07_wirtinger(ensemble):
    for curve in ensemble:
        I0 = quantities.scale_invariant_I(curve, 0)
        I1 = quantities.scale_invariant_I(curve, 1)
        assert I1 >= 4 * np.pi**2 * I0 * (1 - 1e-8)


# ---------------------------------------------------------------------------
# 8. linearized decay rates against the independent oracle


def test_criterion_08_linearized_rates():
    for m in (0, 1, 2):
        for k in (2, 3, 4):
            predicted = flow.linearized_rate(m, k, 1.0)
            measured = oracles.linearization_rate_check(m, k, 1.0, 1e-4)
            rel = abs(measured - predicted) / predicted
            assert rel <= 0.02, (
                f"m={m}, k={k}: measured {measured:.6g}, "
                f"predicted {predicted:.6g}, rel {rel:.3e}"
            )


# ---------------------------------------------------------------------------
# 9. exponential decay of the canonical run


def test_criterion_09_decay_rates(canonical):
    """Trailing-half log-linear fits of I_{-1}, I_0, I_1 are clean
    exponentials; the I_0 rate matches the slowest-mode prediction
    2 k^2 (k^2 - 1) / R_inf^4 with k = 2, R_inf = sqrt(2).

    The formula evaluates to 2 * 4 * 3 / 4 = 6.0 (the quadratic energy I_0
    decays at twice the mode-2 amplitude rate 12 / R_inf^4 = 3.0); the fits
    below confirm 6.0 to a relative error of ~1e-6.
    """
    trace = canonical["coarse_trace"]
    assert canonical["termination"].kind == "Converged"
    series = {
        "I_m1": [(rec.t, rec.I_m1) for rec in trace],
        "I_0": [(rec.t, rec.I[0]) for rec in trace],
        "I_1": [(rec.t, rec.I[1]) for rec in trace],
    }
    fits = {
        name: asymptotics.fit_decay(data, window_fraction=0.5)
        for name, data in series.items()
    }
    for name, fit in fits.items():
        assert fit.lam > 0, name
        assert fit.r_squared >= 0.999, f"{name}: r^2 = {fit.r_squared}"
    R_inf = np.sqrt(2.0)
    predicted = 2 * 2**2 * (2**2 - 1) / R_inf**4
    assert predicted == pytest.approx(6.0)
    assert abs(fits["I_0"].lam - predicted) / predicted <= 0.10, fits["I_0"]


# ---------------------------------------------------------------------------
# 10. convergence-to-circle diagnostics


def test_criterion_10_circle_diagnostics(canonical):
    trace = canonical["coarse_trace"]
    final = trace[-1]
    assert abs(final.r - final.L / (2 * np.pi)) <= 1e-4
    d = asymptotics.hausdorff_to_disk(
        final.curve, (final.cx, final.cy), final.r
    )
    assert d <= 1e-4, f"hausdorff {d:.3e}"
    series = asymptotics.frame_distance_series(trace)
    vals = np.array([v for _, v in series])
    tail = vals[len(vals) // 2 :]
    # on this symmetric run the tail sits at the roundoff floor (~5e-15)
    assert np.all(np.diff(tail) <= 1e-12), "frame distance not non-increasing"

    nonconvex = curve_model.perturbed_circle(1.0, [(5, 0.15, 0.0)], 256)
    assert np.min(quantities.curvature(nonconvex)) < 0
    config = flow.FlowConfig(
        m=1, N=256, dt_init=1e-4, t_max=0.05, record_every=2.5e-3, ell_max=1
    )
    nc_trace, _, _ = flow.evolve(nonconvex, config)
    t_star = asymptotics.convexity_time(nc_trace)
    assert t_star is not None and t_star > 0
    after = [rec for rec in nc_trace if rec.t >= t_star - 1e-12]
    assert after and all(rec.convex for rec in after)


# ---------------------------------------------------------------------------
# 11. spectral quantities vs independent oracles


def test_criterion_11_oracle_equivalence():
    e = curve_model.ellipse(2.0, 1.0, 256)
    t = np.linspace(0, 2 * np.pi, 1_000_000, endpoint=False)
    poly = oracles.polygon_quantities(
        np.column_stack([2 * np.cos(t), np.sin(t)])
    )
    assert abs(quantities.length(e) - poly.length) / poly.length <= 1e-6
    assert abs(quantities.signed_area(e) - poly.area) / poly.area <= 1e-6

    errs = []
    for n in (128, 256, 512):
        c = curve_model.ellipse(2.0, 1.0, n)
        spec = curve_model.derivative(c, 1)
        fd_x = oracles.fd_derivative(c.points[:, 0], 1, 1.0 / n)
        fd_y = oracles.fd_derivative(c.points[:, 1], 1, 1.0 / n)
        errs.append(np.max(np.hypot(spec[:, 0] - fd_x, spec[:, 1] - fd_y)))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.1)


# ---------------------------------------------------------------------------
# 12. determinism of the CLI artifacts


def test_criterion_12_cli_determinism(tmp_path):
    args = [
        "evolve",
        "--m",
        "1",
        "--curve",
        "preset:random_bandlimited",
        "--seed",
        "7",
        "--modes",
        "128",
        "--dt",
        "1e-4",
        "--t-max",
        "0.05",
        "--record-every",
        "1e-2",
        "--snapshots",
        "3",
    ]
    outs = []
    for name in ("first", "second"):
        out = tmp_path / name
        assert cli.main(args + ["--out", str(out)]) == 0
        outs.append(out)
    names = sorted(p.name for p in outs[0].iterdir())
    assert names == sorted(p.name for p in outs[1].iterdir())
    assert "trace.csv" in names and "report.json" in names and "run.svg" in names
    for fname in names:
        a = (outs[0] / fname).read_bytes()
        b = (outs[1] / fname).read_bytes()
        assert a == b, f"{fname} differs between identical runs"
    # the report parses and carries the seed that produced it
    report = json.loads((outs[0] / "report.json").read_text())
    assert report["config"]["seed"] == 7
