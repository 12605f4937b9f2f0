"""Finite-difference and spectral derivative helpers on uniform grids.

Centered fourth-order stencils for the first three x-derivatives, in two
layouts: periodic (circulant, via np.roll) and interior-only (edges left
zero; callers exclude a margin of at least 3 points).  A matching 5-point
stencil handles time derivatives of sampled closed forms.  The spectral
variants use rfft with an optional 2/3-rule dealiasing mask.
"""

from __future__ import annotations

import numpy as np

# offsets -2..2
_C1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_C2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
# offsets -3..3
_C3 = np.array([1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0]) / 8.0


def periodic_d1(u, dx):
    out = np.zeros_like(u)
    for k, c in zip(range(-2, 3), _C1):
        if c:
            out += c * np.roll(u, -k)
    return out / dx


def periodic_d2(u, dx):
    out = np.zeros_like(u)
    for k, c in zip(range(-2, 3), _C2):
        if c:
            out += c * np.roll(u, -k)
    return out / dx ** 2


def periodic_d3(u, dx):
    out = np.zeros_like(u)
    for k, c in zip(range(-3, 4), _C3):
        if c:
            out += c * np.roll(u, -k)
    return out / dx ** 3


def interior_d1(u, dx):
    out = np.zeros_like(u)
    out[2:-2] = (u[:-4] - 8 * u[1:-3] + 8 * u[3:-1] - u[4:]) / (12 * dx)
    return out


def interior_d2(u, dx):
    out = np.zeros_like(u)
    out[2:-2] = (-u[:-4] + 16 * u[1:-3] - 30 * u[2:-2]
                 + 16 * u[3:-1] - u[4:]) / (12 * dx ** 2)
    return out


def interior_d3(u, dx):
    out = np.zeros_like(u)
    out[3:-3] = (u[:-6] - 8 * u[1:-5] + 13 * u[2:-4]
                 - 13 * u[4:-2] + 8 * u[5:-1] - u[6:]) / (8 * dx ** 3)
    return out


def five_point_dt(samples, dt):
    """Time derivative at the middle row of 5 equispaced samples."""
    if len(samples) != 5:
        raise ValueError("expected exactly 5 time samples")
    return (samples[0] - 8 * samples[1] + 8 * samples[3] - samples[4]) / (12 * dt)


def sixth_difference(u, periodic=False):
    """Seven-point sixth difference (zero on the outermost 3 points
    unless periodic).

    Symbol is -64 sin^6(theta/2), so dividing by dx**2 and adding the
    result to a right-hand side damps sawtooth content at a rate that
    scales like 1/dx**2 while touching smooth content only at O(theta^6).
    Being a local stencil it cannot leak energy across the grid the way
    a global spectral mask does.
    """
    if periodic:
        return (np.roll(u, 3) - 6 * np.roll(u, 2) + 15 * np.roll(u, 1)
                - 20 * u
                + 15 * np.roll(u, -1) - 6 * np.roll(u, -2) + np.roll(u, -3))
    out = np.zeros_like(u)
    out[3:-3] = (u[:-6] - 6 * u[1:-5] + 15 * u[2:-4] - 20 * u[3:-3]
                 + 15 * u[4:-2] - 6 * u[5:-1] + u[6:])
    return out


def spectral_wavenumbers(n, dx):
    return 2.0 * np.pi * np.fft.rfftfreq(n, d=dx)


def spectral_derivative(u, dx, order):
    k = spectral_wavenumbers(len(u), dx)
    return np.fft.irfft((1j * k) ** order * np.fft.rfft(u), n=len(u))


def dealias_mask(n, dx):
    """2/3-rule mask in rfft layout: True on retained modes."""
    k = spectral_wavenumbers(n, dx)
    return np.abs(k) <= (2.0 / 3.0) * np.abs(k).max()


def dealias(u):
    """Project a real field onto the lower 2/3 of its spectrum."""
    spec = np.fft.rfft(u)
    cut = int(np.ceil(len(spec) * 2.0 / 3.0))
    spec[cut:] = 0.0
    return np.fft.irfft(spec, n=len(u))


def _taper_mask(thetas, frac):
    """Raised-cosine low-pass response: 1 below the passband edge, 0 above
    the stopband edge, smooth in between.

    A sharp cutoff has sinc sidelobes that scatter a large localized
    deviation (the crest error of a soliton, say) across the whole grid
    at ~1/(pi * distance) relative amplitude, which is fatal wherever the
    field is exponentially small.  The cosine taper makes the impulse
    response decay faster than any power, so the filter stays local.
    """
    theta_c = frac * np.pi
    width = 0.25 * theta_c
    lo, hi = theta_c - width, theta_c + width
    mask = np.ones_like(thetas)
    mask[thetas >= hi] = 0.0
    band = (thetas > lo) & (thetas < hi)
    mask[band] = 0.5 * (1.0 + np.cos(np.pi * (thetas[band] - lo) / (hi - lo)))
    return mask


def lowpass(u, frac):
    """Tapered periodic low-pass keeping modes below frac * Nyquist.

    Used to strip the near-grid-scale band where the 7-point D3 symbol
    has zero group velocity; modes parked there sit inside the tail's
    antidiffusive zone and grow in place instead of dispersing away.
    """
    n = len(u)
    spec = np.fft.rfft(u)
    thetas = np.arange(len(spec)) * (np.pi / (n // 2))
    return np.fft.irfft(spec * _taper_mask(thetas, frac), n=n)


def lowpass_dirichlet(v, frac):
    """Tapered sine-series low-pass for a field vanishing at both ends.

    The interior is expanded in a type-I DST (odd extension, which is C1
    for a field with zero boundary values), the response above the
    passband is rolled off smoothly, and the ends stay exactly zero.
    """
    from scipy import fft as sfft

    interior = v[1:-1]
    m = len(interior)
    spec = sfft.dst(interior, type=1)
    thetas = np.arange(1, m + 1) * (np.pi / (m + 1))
    out = np.zeros_like(v)
    out[1:-1] = sfft.idst(spec * _taper_mask(thetas, frac), type=1)
    return out
