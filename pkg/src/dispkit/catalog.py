"""Closed-form solutions of the dispersive family and its companions.

Each entry knows its own parameter constraints, the member equation it
solves, and how to evaluate itself (plus low-order derivatives where a
closed formula is cheap).  residual_on_grid gives an independent numeric
check: the governing equation's residual sampled by fourth-order finite
differences, which should shrink like dx^4 for every smooth entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import airy as _airy

from . import stencils
from .equations import EquationSpec, family, kdv
from .errors import (
    ConfigError,
    NonSmoothSolution,
    OutOfDomain,
    StationaryCase,
    ZeroSpeed,
)


@dataclass(frozen=True)
class WaveParams:
    """Travelling-wave parameter of the linear-profile kinds: either an
    exponential rate or an oscillatory wavenumber, depending on the sign
    of c / (a (2 - eps))."""

    kind: str  # "exponential" | "sinusoidal"
    value: float


def exponential_params(eps, a, c):
    """Classify the travelling profile for speed c: exponential when
    c/(a(2-eps)) > 0 (returns the rate), sinusoidal when the mirrored
    radicand is positive (returns the wavenumber)."""
    eps = float(eps)
    a = float(a)
    c = float(c)
    if a == 0.0:
        raise ConfigError("a = 0 leaves no dispersive term")
    if eps == 2.0:
        raise StationaryCase("plane waves are stationary at eps = 2")
    if c == 0.0:
        raise ZeroSpeed("speed must be nonzero")
    rad = c / (a * (2.0 - eps))
    if rad > 0.0:
        return WaveParams("exponential", math.sqrt(rad))
    return WaveParams("sinusoidal", math.sqrt(-rad))


class ClosedFormSolution:
    """Base type: subclasses provide u(x, t) and optionally ux/ut."""

    kind = "abstract"
    smooth = True
    # for kernel-derived entries: w(x, t) of the linear pair; None otherwise
    system_potential = None
    governs: EquationSpec | None = None

    def u(self, x, t):
        raise NotImplementedError

    def ux(self, x, t):
        raise NotImplementedError(f"{self.kind} has no closed ux here")

    def ut(self, x, t):
        raise NotImplementedError(f"{self.kind} has no closed ut here")

    def uxx_ratio(self, x, t):
        """u_xx/u in closed form, finite across zeros of u when the entry
        crosses zero; backs the solver's anchored-quotient mode."""
        raise NotImplementedError(f"{self.kind} has no closed u_xx/u here")

    def describe(self):
        return {"kind": self.kind}


class Sech2(ClosedFormSolution):
    """u = (c/2) sech^2(sqrt(c)/2 (x - c t - x0)); solves the eps = a = 1
    member, right-moving."""

    kind = "sech2"

    def __init__(self, c, x0=0.0):
        c = float(c)
        if c <= 0:
            raise ConfigError("sech2 requires c > 0")
        self.c = c
        self.x0 = float(x0)
        self.eps = Fraction(1)
        self.a = Fraction(1)
        self.governs = family(1, 1, with_rho=False)

    def _theta(self, x, t):
        return 0.5 * math.sqrt(self.c) * (np.asarray(x) - self.c * t - self.x0)

    def u(self, x, t):
        return 0.5 * self.c / np.cosh(self._theta(x, t)) ** 2

    def ux(self, x, t):
        th = self._theta(x, t)
        al = 0.5 * math.sqrt(self.c)
        return -self.c * al * np.tanh(th) / np.cosh(th) ** 2

    def ut(self, x, t):
        return -self.c * self.ux(x, t)

    def uxx_ratio(self, x, t):
        return self.c - 1.5 * self.c / np.cosh(self._theta(x, t)) ** 2

    def describe(self):
        return {"kind": self.kind, "c": self.c, "x0": self.x0,
                "eps": 1.0, "a": 1.0}


class ExponentialWave(ClosedFormSolution):
    """u = exp(+-r (x - c t)) with r^2 = c/(a(2-eps))."""

    kind = "exponential"

    def __init__(self, eps, a, c, sign=1):
        wp = exponential_params(eps, a, c)
        if wp.kind != "exponential":
            raise ConfigError(
                "c/(a(2-eps)) <= 0: this member has sinusoidal profiles")
        if sign not in (1, -1):
            raise ConfigError("sign must be +1 or -1")
        self.eps = Fraction(eps)
        self.a = Fraction(a)
        self.c = float(c)
        self.rate = sign * wp.value
        self.governs = family(self.eps, self.a, with_rho=False)

    def u(self, x, t):
        return np.exp(self.rate * (np.asarray(x) - self.c * t))

    def ux(self, x, t):
        return self.rate * self.u(x, t)

    def ut(self, x, t):
        return -self.c * self.ux(x, t)

    def describe(self):
        return {"kind": self.kind, "eps": float(self.eps), "a": float(self.a),
                "c": self.c, "rate": self.rate}


class SinusoidalWave(ClosedFormSolution):
    """u = sin(k (x - c t) + phi0) with k^2 = c/(a(eps-2))."""

    kind = "sinusoidal"

    def __init__(self, eps, a, c, phi0=0.0):
        wp = exponential_params(eps, a, c)
        if wp.kind != "sinusoidal":
            raise ConfigError(
                "c/(a(eps-2)) <= 0: this member has exponential profiles")
        self.eps = Fraction(eps)
        self.a = Fraction(a)
        self.c = float(c)
        self.k = wp.value
        self.phi0 = float(phi0)
        self.governs = family(self.eps, self.a, with_rho=False)

    def u(self, x, t):
        return np.sin(self.k * (np.asarray(x) - self.c * t) + self.phi0)

    def ux(self, x, t):
        return self.k * np.cos(self.k * (np.asarray(x) - self.c * t) + self.phi0)

    def ut(self, x, t):
        return -self.c * self.ux(x, t)

    def describe(self):
        return {"kind": self.kind, "eps": float(self.eps), "a": float(self.a),
                "c": self.c, "k": self.k, "phi0": self.phi0}


class PlanePhase(ClosedFormSolution):
    """Complex plane wave e^{i(kx - omega t)} with omega = (eps-2) a k^3."""

    kind = "planePhase"

    def __init__(self, eps, a, k):
        if float(a) == 0.0:
            raise ConfigError("a = 0 leaves no dispersive term")
        self.eps = Fraction(eps)
        self.a = Fraction(a)
        self.k = float(k)
        self.omega = (float(eps) - 2.0) * float(a) * self.k ** 3
        self.governs = family(self.eps, self.a, with_rho=False)

    def u(self, x, t):
        return np.exp(1j * (self.k * np.asarray(x) - self.omega * t))

    def ux(self, x, t):
        return 1j * self.k * self.u(x, t)

    def ut(self, x, t):
        return -1j * self.omega * self.u(x, t)

    def describe(self):
        return {"kind": self.kind, "eps": float(self.eps), "a": float(self.a),
                "k": self.k, "omega": self.omega}


class Kink(ClosedFormSolution):
    """u = tanh(sqrt(c)/2 (x + c t)): left-moving monotone front of the
    eps = 2/3, a = 3/2 member.  Odd about x = -c t, values in (-1, 1)."""

    kind = "kink"

    def __init__(self, c):
        c = float(c)
        if c <= 0:
            raise ConfigError("kink requires c > 0")
        self.c = c
        self.eps = Fraction(2, 3)
        self.a = Fraction(3, 2)
        self.governs = family(self.eps, self.a, with_rho=False)

    def _z(self, x, t):
        return 0.5 * math.sqrt(self.c) * (np.asarray(x) + self.c * t)

    def u(self, x, t):
        return np.tanh(self._z(x, t))

    def ux(self, x, t):
        return 0.5 * math.sqrt(self.c) / np.cosh(self._z(x, t)) ** 2

    def ut(self, x, t):
        return self.c * self.ux(x, t)

    def uxx_ratio(self, x, t):
        # the KdV-soliton potential of the Miura pair behind this front
        return -0.5 * self.c / np.cosh(self._z(x, t)) ** 2

    def describe(self):
        return {"kind": self.kind, "c": self.c, "eps": float(self.eps),
                "a": float(self.a)}


class AirySolution(ClosedFormSolution):
    """u = t^{1/6} (c1 Ai + c2 Bi)(x / (6t)^{1/3}), t > 0: the similarity
    solution produced by the potential w = x/(6t) through the linear pair
    u_t + 3 w u_x = u_xxx, u_xx = w u."""

    kind = "airy"

    def __init__(self, c1=1.0, c2=0.0):
        self.c1 = float(c1)
        self.c2 = float(c2)
        self.eps = Fraction(2, 3)
        self.a = Fraction(3, 2)
        self.governs = family(self.eps, self.a, with_rho=False)

    @staticmethod
    def system_potential(x, t):
        return np.asarray(x) / (6.0 * t)

    def _check_t(self, t):
        if np.any(np.asarray(t) <= 0.0):
            raise OutOfDomain("the similarity solution needs t > 0")

    def _scaled(self, x, t):
        return np.asarray(x) / np.cbrt(6.0 * t)

    def u(self, x, t):
        self._check_t(t)
        ai, _, bi, _ = _airy(self._scaled(x, t))
        return t ** (1.0 / 6.0) * (self.c1 * ai + self.c2 * bi)

    def ux(self, x, t):
        self._check_t(t)
        _, aip, _, bip = _airy(self._scaled(x, t))
        return t ** (1.0 / 6.0) * (self.c1 * aip + self.c2 * bip) / np.cbrt(6.0 * t)

    def uxx_ratio(self, x, t):
        self._check_t(t)
        return self.system_potential(x, t)

    def describe(self):
        return {"kind": self.kind, "c1": self.c1, "c2": self.c2,
                "eps": float(self.eps), "a": float(self.a)}


class PeakonExp(ClosedFormSolution):
    """u = exp(-sqrt(c/2a) |x - c t|): peaked wave of the eps = 0 member,
    needs sgn(c) = sgn(a).  Continuous, not differentiable on x = c t."""

    kind = "peakonExp"
    smooth = False

    def __init__(self, c, a=1.0):
        c = float(c)
        a = float(a)
        if c == 0.0:
            raise ZeroSpeed("peakon speed must be nonzero")
        if c * a <= 0.0:
            raise ConfigError("exponential peakon requires sgn(c) = sgn(a)")
        self.c = c
        self.a = Fraction(a)
        self.eps = Fraction(0)
        self.rate = math.sqrt(c / (2.0 * a))
        self.governs = family(self.eps, self.a, with_rho=False)

    def u(self, x, t):
        return np.exp(-self.rate * np.abs(np.asarray(x) - self.c * t))

    def ux(self, x, t):
        """Almost-everywhere derivative (sign convention of |.|')."""
        z = np.asarray(x) - self.c * t
        return -self.rate * np.sign(z) * np.exp(-self.rate * np.abs(z))

    def nonlinear(self, x, t):
        """The a.e. product u_x u_xx / u = -rate^3 sgn(z) u; sgn(0) = 0."""
        z = np.asarray(x) - self.c * t
        return -self.rate ** 3 * np.sign(z) * np.exp(-self.rate * np.abs(z))

    def describe(self):
        return {"kind": self.kind, "c": self.c, "a": float(self.a),
                "eps": 0.0, "rate": self.rate}


class PeakonSin(ClosedFormSolution):
    """u = sin(sqrt(-c/2a) |x - c t|): the oscillatory peaked profile of
    the eps = 0 member when sgn(c) = -sgn(a)."""

    kind = "peakonSin"
    smooth = False

    def __init__(self, c, a=-1.0):
        c = float(c)
        a = float(a)
        if c == 0.0:
            raise ZeroSpeed("peakon speed must be nonzero")
        if c * a >= 0.0:
            raise ConfigError("sinusoidal peakon requires sgn(c) = -sgn(a)")
        self.c = c
        self.a = Fraction(a)
        self.eps = Fraction(0)
        self.freq = math.sqrt(-c / (2.0 * a))
        self.governs = family(self.eps, self.a, with_rho=False)

    def u(self, x, t):
        return np.sin(self.freq * np.abs(np.asarray(x) - self.c * t))

    def ux(self, x, t):
        z = np.asarray(x) - self.c * t
        return self.freq * np.sign(z) * np.cos(self.freq * np.abs(z))

    def nonlinear(self, x, t):
        """u_x u_xx / u = -freq^2 u_x a.e.; bounded across the zeros of u."""
        z = np.asarray(x) - self.c * t
        return -self.freq ** 3 * np.sign(z) * np.cos(self.freq * z)

    def describe(self):
        return {"kind": self.kind, "c": self.c, "a": float(self.a),
                "eps": 0.0, "freq": self.freq}


class KdvSoliton(ClosedFormSolution):
    """w = -(c/2) sech^2(sqrt(c)/2 (x + c t)): left-moving 1-soliton of
    w_t = w_xxx - 6 w w_x."""

    kind = "kdvSoliton"

    def __init__(self, c):
        c = float(c)
        if c <= 0:
            raise ConfigError("soliton requires c > 0")
        self.c = c
        self.governs = kdv()

    def _z(self, x, t):
        return 0.5 * math.sqrt(self.c) * (np.asarray(x) + self.c * t)

    def u(self, x, t):
        return -0.5 * self.c / np.cosh(self._z(x, t)) ** 2

    def ux(self, x, t):
        z = self._z(x, t)
        return self.c * 0.5 * math.sqrt(self.c) * np.tanh(z) / np.cosh(z) ** 2

    def ut(self, x, t):
        return self.c * self.ux(x, t)

    def uxx_ratio(self, x, t):
        return self.c - 1.5 * self.c / np.cosh(self._z(x, t)) ** 2

    def describe(self):
        return {"kind": self.kind, "c": self.c}


class KernelExp(ClosedFormSolution):
    """u = c1 e^{x-2t} + c2 e^{-x+2t}: kernel solutions over the constant
    potential w = 1.  The two rates superpose freely."""

    kind = "kernelExp"

    def __init__(self, c1=1.0, c2=1.0):
        self.c1 = float(c1)
        self.c2 = float(c2)
        self.eps = Fraction(2, 3)
        self.a = Fraction(3, 2)
        self.governs = family(self.eps, self.a, with_rho=False)

    @staticmethod
    def system_potential(x, t):
        return np.ones_like(np.asarray(x, dtype=float))

    def u(self, x, t):
        x = np.asarray(x)
        return self.c1 * np.exp(x - 2.0 * t) + self.c2 * np.exp(-x + 2.0 * t)

    def ux(self, x, t):
        x = np.asarray(x)
        return self.c1 * np.exp(x - 2.0 * t) - self.c2 * np.exp(-x + 2.0 * t)

    def uxx_ratio(self, x, t):
        return self.system_potential(x, t)

    def describe(self):
        return {"kind": self.kind, "c1": self.c1, "c2": self.c2}


class KernelTrig(ClosedFormSolution):
    """u = c1 cos(x+2t) + c2 sin(x+2t): kernel solutions over w = -1."""

    kind = "kernelTrig"

    def __init__(self, c1=1.0, c2=0.0):
        self.c1 = float(c1)
        self.c2 = float(c2)
        self.eps = Fraction(2, 3)
        self.a = Fraction(3, 2)
        self.governs = family(self.eps, self.a, with_rho=False)

    @staticmethod
    def system_potential(x, t):
        return -np.ones_like(np.asarray(x, dtype=float))

    def u(self, x, t):
        ph = np.asarray(x) + 2.0 * t
        return self.c1 * np.cos(ph) + self.c2 * np.sin(ph)

    def ux(self, x, t):
        ph = np.asarray(x) + 2.0 * t
        return -self.c1 * np.sin(ph) + self.c2 * np.cos(ph)

    def uxx_ratio(self, x, t):
        return self.system_potential(x, t)

    def describe(self):
        return {"kind": self.kind, "c1": self.c1, "c2": self.c2}


_KINDS = {
    "sech2": Sech2,
    "exponential": ExponentialWave,
    "sinusoidal": SinusoidalWave,
    "planePhase": PlanePhase,
    "kink": Kink,
    "airy": AirySolution,
    "peakonExp": PeakonExp,
    "peakonSin": PeakonSin,
    "kdvSoliton": KdvSoliton,
    "kernelExp": KernelExp,
    "kernelTrig": KernelTrig,
}


def make(kind, **params):
    """Build a catalog entry by kind name; parameters as keyword args."""
    try:
        cls = _KINDS[kind]
    except KeyError:
        raise ConfigError(f"unknown catalog kind {kind!r}") from None
    try:
        return cls(**params)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for {kind}: {exc}") from None


def kinds():
    return sorted(_KINDS)


def residual_on_grid(entry, n, x_min, x_max, t):
    """Max absolute PDE residual of a sampled entry, interior points only.

    Derivatives are fourth-order centered differences in x and a matching
    5-point stencil in t (time step equal to dx); a 4-point margin at each
    end is excluded so one-sided effects never pollute the max.  Family
    members are checked in the u-multiplied form
        u u_t + 2 a u_x u_xx - eps a u u_xxx,
    which is what the equation asserts at zeros of u; kernel-derived
    entries are checked against both equations of their linear pair.
    """
    if not entry.smooth:
        raise NonSmoothSolution(
            f"{entry.kind} is not differentiable on its crest; "
            "use the weak-form residual instead")
    if n < 16:
        raise ConfigError("need at least 16 points for the margins")
    x = np.linspace(float(x_min), float(x_max), int(n))
    dx = x[1] - x[0]
    rows = [entry.u(x, t + j * dx) for j in (-2, -1, 0, 1, 2)]
    u = rows[2]
    ut = stencils.five_point_dt(rows, dx)
    d1 = stencils.interior_d1(u, dx)
    d2 = stencils.interior_d2(u, dx)
    d3 = stencils.interior_d3(u, dx)
    if entry.system_potential is not None:
        w = entry.system_potential(x, t)
        r1 = ut + 3.0 * w * d1 - d3
        r2 = d2 - w * u
        res = np.maximum(np.abs(r1), np.abs(r2))
    elif entry.kind == "kdvSoliton":
        res = np.abs(ut - d3 + 6.0 * u * d1)
    else:
        a = float(entry.a)
        eps = float(entry.eps)
        res = np.abs(u * ut + 2.0 * a * d1 * d2 - eps * a * u * d3)
    return float(np.max(res[4:-4]))
