"""Unit tests for curve construction, resampling, presets, and (de)serialization."""

import json

import numpy as np
import pytest

from curveflow import curve_model
from curveflow.errors import (
    DegenerateCurve,
    InvalidPreset,
    OrderTooHigh,
    TooFewPoints,
)


def test_closed_curve_validation():
    with pytest.raises(TooFewPoints):
        curve_model.ClosedCurve(np.zeros((10, 2)))
    with pytest.raises(TooFewPoints):
        curve_model.ClosedCurve(np.zeros((17, 2)))  # odd
    with pytest.raises(TooFewPoints):
        curve_model.ClosedCurve(np.zeros((16, 3)))
    bad = np.zeros((16, 2))
    bad[3, 0] = np.nan
    with pytest.raises(DegenerateCurve):
        curve_model.ClosedCurve(bad)


def test_points_are_read_only():
    c = curve_model.circle((0.0, 0.0), 1.0, 32)
    with pytest.raises(ValueError):
        c.points[0, 0] = 5.0


def test_from_samples_rejects_degenerate():
    with pytest.raises(DegenerateCurve):
        curve_model.from_samples(np.zeros((16, 2)))


def test_circle_preset_geometry():
    c = curve_model.circle((1.0, -2.0), 3.0, 64)
    assert c.is_arclength
    rad = np.hypot(c.points[:, 0] - 1.0, c.points[:, 1] + 2.0)
    assert np.max(np.abs(rad - 3.0)) < 1e-14


def test_derivative_of_circle():
    c = curve_model.circle((0.0, 0.0), 1.0, 64)
    d1 = curve_model.derivative(c, 1)
    theta = np.arange(64) / 64
    expect = 2 * np.pi * np.column_stack(
        [-np.sin(2 * np.pi * theta), np.cos(2 * np.pi * theta)]
    )
    assert np.max(np.abs(d1 - expect)) < 1e-10


def test_derivative_order_budget():
    c = curve_model.circle((0.0, 0.0), 1.0, 32)
    with pytest.raises(OrderTooHigh):
        curve_model.derivative(c, 16)
    with pytest.raises(OrderTooHigh):
        curve_model.derivative(c, -1)


def test_spectral_round_trip():
    c = curve_model.ellipse(2.0, 1.0, 128)
    coeffs = curve_model.to_spectral(c)
    back = curve_model.from_spectral(coeffs, 128)
    assert np.max(np.abs(back.points - c.points)) < 1e-12


def test_resample_arclength_uniform_speed():
    theta = np.arange(128) / 128
    pts = np.column_stack(
        [2 * np.cos(2 * np.pi * theta), np.sin(2 * np.pi * theta)]
    )
    out = curve_model.resample_arclength(curve_model.from_samples(pts), 128)
    assert out.is_arclength
    sp = curve_model.parameter_speed(out)
    L = np.mean(sp)
    assert np.max(np.abs(sp - L)) / L < 1e-8


def test_resample_preserves_length():
    c = curve_model.from_samples(
        np.column_stack(
            [
                2 * np.cos(2 * np.pi * np.arange(256) / 256),
                np.sin(2 * np.pi * np.arange(256) / 256),
            ]
        )
    )
    L0 = curve_model.curve_length(c)
    out = curve_model.resample_arclength(c, 256)
    assert abs(curve_model.curve_length(out) - L0) / L0 < 1e-10


def test_resample_under_resolved_warns():
    # a rough curve at low resolution cannot meet the 1e-8 uniform-speed
    # contract; the converged inversion warns instead of failing
    with pytest.warns(UserWarning):
        curve_model.perturbed_circle(1.0, [(8, 0.2, 0.0)], 128)


def test_ellipse_preset_is_arclength():
    e = curve_model.ellipse(2.0, 1.0, 256)
    assert e.is_arclength
    with pytest.raises(InvalidPreset):
        curve_model.ellipse(-1.0, 1.0)


def test_random_bandlimited_deterministic():
    a = curve_model.random_bandlimited(7, 8, 0.2, 128)
    b = curve_model.random_bandlimited(7, 8, 0.2, 128)
    assert np.array_equal(a.points, b.points)
    c = curve_model.random_bandlimited(8, 8, 0.2, 128)
    assert not np.array_equal(a.points, c.points)


def test_make_preset_grammar():
    c = curve_model.make_preset("circle(0, 0, 2)", 64)
    assert c.n == 64
    rad = np.hypot(c.points[:, 0], c.points[:, 1])
    assert np.max(np.abs(rad - 2.0)) < 1e-13

    e = curve_model.make_preset("ellipse(2, 1)", 128)
    assert e.n == 128

    p = curve_model.make_preset("perturbed_circle(1, 3, 0.05)", 64)
    assert p.n == 64

    r1 = curve_model.make_preset("random_bandlimited(7)", 128)
    r2 = curve_model.make_preset("random_bandlimited(7, 8, 0.2)", 128)
    assert np.array_equal(r1.points, r2.points)


@pytest.mark.parametrize(
    "bad",
    [
        "circle",
        "circle(",
        "circle(1,2)",
        "circle(1,2,3,4)",
        "blob(1)",
        "circle(a,b,c)",
        "ellipse(2,1) extra",
    ],
)
def test_make_preset_rejects_malformed(bad):
    with pytest.raises(InvalidPreset):
        curve_model.make_preset(bad, 64)


def test_save_load_samples_bit_exact(tmp_path):
    c = curve_model.random_bandlimited(3, 6, 0.1, 64)
    path = tmp_path / "curve.json"
    curve_model.save_curve(c, path)
    back = curve_model.load_curve(path)
    assert np.array_equal(back.points, c.points)


def test_load_fourier_kind(tmp_path):
    # unit circle: z(theta) = e^{2 pi i theta}; coeffs c_1 = 1
    K = 2
    coeffs = np.zeros((2 * K + 1, 2))
    coeffs[K + 1, 0] = 1.0  # k = +1, real part
    payload = {"version": 1, "kind": "fourier", "K": K, "coeffs": coeffs.tolist()}
    path = tmp_path / "fourier.json"
    path.write_text(json.dumps(payload))
    c = curve_model.load_curve(path)
    rad = np.hypot(c.points[:, 0], c.points[:, 1])
    assert np.max(np.abs(rad - 1.0)) < 1e-12


def test_load_rejects_bad_payload(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"version": 2, "kind": "samples", "points": []}))
    with pytest.raises(InvalidPreset):
        curve_model.load_curve(path)
    path.write_text(json.dumps({"version": 1, "kind": "mystery"}))
    with pytest.raises(InvalidPreset):
        curve_model.load_curve(path)
