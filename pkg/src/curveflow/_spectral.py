"""Low-level spectral helpers on the uniform periodic grid theta_i = i/N.

All routines work on length-N sample arrays of 1-periodic functions.  The
curve position is handled as the complex signal z = x + i*y, which is
genuinely complex-valued (no conjugate symmetry is assumed).
"""

import numpy as np


def wavenumbers(n):
    """Integer wavenumbers in FFT ordering: 0, 1, ..., n/2-1, -n/2, ..., -1."""
    return np.fft.fftfreq(n, d=1.0 / n)


def spectral_derivative(values, order, period=1.0):
    """Differentiate periodic samples with the Fourier multiplier (2*pi*i*k)**order.

    ``values`` may be real or complex, shape (N,) or (N, d); differentiation
    acts along axis 0.  The Nyquist mode is zeroed for odd orders (standard
    symmetric-multiplier convention).  ``order = 0`` returns a copy.
    """
    values = np.asarray(values)
    if order == 0:
        return values.copy()
    n = values.shape[0]
    k = wavenumbers(n)
    mult = (2j * np.pi * k / period) ** order
    if order % 2 == 1 and n % 2 == 0:
        mult[n // 2] = 0.0
    hat = np.fft.fft(values, axis=0)
    if values.ndim > 1:
        mult = mult[:, None]
    out = np.fft.ifft(hat * mult, axis=0)
    if np.isrealobj(values):
        return out.real
    return out


def periodic_antiderivative(values, period=1.0):
    """Antiderivative of mean-free periodic samples, vanishing mean.

    The input must have (numerically) zero mean; the k = 0 and Nyquist modes
    are dropped.
    """
    values = np.asarray(values)
    n = values.shape[0]
    k = wavenumbers(n)
    hat = np.fft.fft(values, axis=0)
    mult = np.zeros(n, dtype=complex)
    nz = k != 0
    mult[nz] = 1.0 / (2j * np.pi * k[nz] / period)
    if n % 2 == 0:
        mult[n // 2] = 0.0
    out = np.fft.ifft(hat * mult, axis=0)
    if np.isrealobj(values):
        return out.real
    return out


def oversample(values, factor):
    """Evaluate the trig interpolant of ``values`` on a grid ``factor`` times finer."""
    values = np.asarray(values)
    n = values.shape[0]
    m = n * factor
    hat = np.fft.fft(values, axis=0)
    padded = np.zeros((m,) + values.shape[1:], dtype=complex)
    half = n // 2
    padded[:half] = hat[:half]
    padded[m - half:] = hat[half:]
    # split the Nyquist coefficient symmetrically between +n/2 and -n/2
    if n % 2 == 0:
        padded[half] = 0.5 * hat[half]
        padded[m - half] = 0.5 * hat[half]
    out = np.fft.ifft(padded, axis=0) * factor
    if np.isrealobj(values):
        return out.real
    return out


def fourier_coefficients(values):
    """Mode coefficients c_k (FFT order) of the trig interpolant: values = sum c_k e^{2 pi i k theta}."""
    values = np.asarray(values)
    return np.fft.fft(values, axis=0) / values.shape[0]


def evaluate_trig(coeffs, theta):
    """Evaluate sum_k c_k exp(2 pi i k theta) at arbitrary points.

    ``coeffs`` are in FFT ordering (as from :func:`fourier_coefficients`).
    The Nyquist coefficient is split between +N/2 and -N/2 so the
    interpolant is balanced.  O(N * len(theta)); intended for modest N.
    """
    coeffs = np.asarray(coeffs)
    n = coeffs.shape[0]
    k = wavenumbers(n)
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phases = np.exp(2j * np.pi * np.outer(theta, k))
    if n % 2 == 0:
        # add the mirror e^{-2 pi i (n/2) theta} half of the Nyquist term
        half = n // 2
        out = phases @ coeffs
        extra = 0.5 * coeffs[half] * (
            np.exp(2j * np.pi * half * theta) - np.exp(-2j * np.pi * half * theta)
        )
        return out + extra
    return phases @ coeffs


def dealias(values):
    """2/3-rule dealiasing: zero all modes with |k| > N/3."""
    values = np.asarray(values)
    n = values.shape[0]
    k = wavenumbers(n)
    hat = np.fft.fft(values, axis=0)
    mask = np.abs(k) > n / 3.0
    if values.ndim > 1:
        hat[mask, ...] = 0.0
    else:
        hat[mask] = 0.0
    out = np.fft.ifft(hat, axis=0)
    if np.isrealobj(values):
        return out.real
    return out
