"""Unit tests for the periodic spectral helpers."""

import numpy as np
import pytest

from curveflow import _spectral


def test_wavenumbers_layout():
    k = _spectral.wavenumbers(8)
    assert np.array_equal(k, [0, 1, 2, 3, -4, -3, -2, -1])


def test_derivative_exact_on_trig_polynomial():
    n = 64
    x = np.arange(n) / n
    f = np.sin(2 * np.pi * x) + 0.5 * np.cos(2 * np.pi * 5 * x)
    df = 2 * np.pi * np.cos(2 * np.pi * x) - 5 * np.pi * np.sin(2 * np.pi * 5 * x)
    got = _spectral.spectral_derivative(f, 1)
    assert np.max(np.abs(got - df)) < 1e-11


def test_derivative_second_order_and_period():
    n = 128
    period = 3.0
    x = period * np.arange(n) / n
    f = np.cos(2 * np.pi * x / period)
    d2 = -((2 * np.pi / period) ** 2) * f
    got = _spectral.spectral_derivative(f, 2, period=period)
    assert np.max(np.abs(got - d2)) < 1e-10


def test_odd_order_zeroes_nyquist():
    n = 16
    x = np.arange(n) / n
    f = np.cos(2 * np.pi * (n // 2) * x)  # pure Nyquist mode
    got = _spectral.spectral_derivative(f, 1)
    assert np.max(np.abs(got)) < 1e-12


def test_periodic_antiderivative_inverts_derivative():
    n = 64
    x = np.arange(n) / n
    f = np.sin(2 * np.pi * 3 * x)  # mean-free
    g = _spectral.periodic_antiderivative(_spectral.spectral_derivative(f, 1))
    # antiderivative is defined up to a constant
    g -= g[0] - f[0]
    assert np.max(np.abs(g - f)) < 1e-11


def test_oversample_preserves_samples():
    n = 32
    x = np.arange(n) / n
    f = np.exp(np.sin(2 * np.pi * x))
    fine = _spectral.oversample(f, 4)
    assert fine.shape == (4 * n,)
    assert np.max(np.abs(fine[::4] - f)) < 1e-12


def test_evaluate_trig_matches_grid_samples():
    n = 32
    x = np.arange(n) / n
    f = np.cos(2 * np.pi * x) + 0.3 * np.sin(2 * np.pi * 4 * x) + 0.7
    coeffs = _spectral.fourier_coefficients(f)
    got = _spectral.evaluate_trig(coeffs, x)
    assert np.max(np.abs(got.real - f)) < 1e-12


def test_evaluate_trig_off_grid():
    n = 64
    x = np.arange(n) / n
    f = np.sin(2 * np.pi * 2 * x)
    coeffs = _spectral.fourier_coefficients(f)
    theta = np.array([0.123, 0.5001, 0.99])
    got = _spectral.evaluate_trig(coeffs, theta).real
    assert np.max(np.abs(got - np.sin(2 * np.pi * 2 * theta))) < 1e-12


def test_dealias_zeroes_top_third():
    n = 96
    x = np.arange(n) / n
    f = np.cos(2 * np.pi * 40 * x)  # |k| = 40 > 96/3
    assert np.max(np.abs(_spectral.dealias(f))) < 1e-13
    g = np.cos(2 * np.pi * 10 * x)  # retained mode
    assert np.max(np.abs(_spectral.dealias(g) - g)) < 1e-13


def test_dealias_real_output_for_real_input():
    rng = np.random.default_rng(0)
    f = rng.standard_normal(48)
    out = _spectral.dealias(f)
    assert np.isrealobj(out)
