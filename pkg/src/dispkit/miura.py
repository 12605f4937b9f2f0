"""Miura-type bridge between the dispersive family and KdV.

Forward direction: w = u_xx/u maps any nonvanishing solution of the
eps = 2/3, a = 3/2 member onto a KdV solution.  Inverse direction: given
a KdV potential w, members of the kernel of L_w = D^2 - w evolved by the
linear flow u_t = u_xxx - 3 w u_x are solutions of the family member.
The kernel is constructed by an RK4 march of the ODE u'' = w u from the
left window edge with canonical initial data (1, 0) and (0, 1); physical
combinations (the tanh front, decaying exponentials) are picked by
least-squares projection onto that basis afterward.

Kernel membership cannot be exact on a grid, so it is certified instead:
the initial field must satisfy ||u_xx - w u|| <= 1e-6 relative, and every
snapshot of the linear evolution must stay within 1e-4 relative, else
KernelDrift reports the time and the residual.  A certified trajectory is
then a solution of the family member by the consistency theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from . import catalog, stencils
from .errors import BlowUp, ConfigError, DegenerateField, KernelDrift
from .solver import (
    GridField,
    SolveOptions,
    Trajectory,
    _MARGIN,
    _reference_dt,
    stable_dt,
)

_INITIAL_RESIDUAL = 1e-6
_EVOLVED_RESIDUAL = 1e-4


class KdvPotential:
    """A KdV potential w(x, t): closed form or grid-backed trajectory."""

    def __init__(self, fn, label):
        self._fn = fn
        self.label = label

    def __call__(self, x, t):
        return np.asarray(self._fn(x, t), dtype=float)

    def __repr__(self):
        return f"KdvPotential({self.label})"

    @classmethod
    def constant(cls, value):
        value = float(value)

        def fn(x, t):
            return np.full_like(np.asarray(x, dtype=float), value)

        return cls(fn, f"w = {value:g}")

    @classmethod
    def similarity(cls):
        def fn(x, t):
            return np.asarray(x, dtype=float) / (6.0 * t)

        return cls(fn, "w = x/(6t)")

    @classmethod
    def soliton(cls, c):
        entry = catalog.make("kdvSoliton", c=c)
        return cls(entry.u, f"w = kdv soliton c={float(c):g}")

    @classmethod
    def from_entry(cls, entry):
        """Use a closed-form solution's values as the potential."""
        return cls(entry.u, f"w = {entry.kind}")

    @classmethod
    def from_trajectory(cls, traj):
        """Interpolate a trajectory of w snapshots: cubic in x, cubic in
        t across snapshots (linear when fewer than 4 are available)."""
        fields = traj.fields
        if not fields:
            raise ConfigError("empty trajectory")
        times = np.asarray([f.time for f in fields])
        splines = [CubicSpline(f.x, f.values) for f in fields]

        def fn(x, t):
            cols = np.stack([s(x) for s in splines])
            if len(fields) >= 4:
                return CubicSpline(times, cols, axis=0)(t)
            if len(fields) == 1:
                return cols[0]
            j = np.clip(np.searchsorted(times, t) - 1, 0, len(times) - 2)
            lam = (t - times[j]) / (times[j + 1] - times[j])
            return (1.0 - lam) * cols[j] + lam * cols[j + 1]

        return cls(fn, "w = trajectory")


@dataclass
class KernelBasis:
    """Two canonical kernel members of L_w at one instant."""

    x: np.ndarray
    t0: float
    u1: np.ndarray
    du1: np.ndarray
    u2: np.ndarray
    du2: np.ndarray
    potential: KdvPotential

    @property
    def wronskian(self):
        return self.u1 * self.du2 - self.u2 * self.du1

    def wronskian_deviation(self):
        """Worst drift of the Wronskian from its left-edge value.

        Normalized pointwise by the size of the products forming it: where
        the members grow to 1e10 the difference u1 u2' - u2 u1' carries an
        unavoidable rounding error of eps times the product scale, and a
        plain relative-to-W0 test would only measure that cancellation.
        """
        w = self.wronskian
        scale = (np.abs(self.u1 * self.du2) + np.abs(self.u2 * self.du1)
                 + abs(float(w[0])) + 1e-300)
        return float(np.max(np.abs(w - w[0]) / scale))

    def project(self, target):
        """Least-squares coefficients (a, b) with a u1 + b u2 ~ target,
        plus the relative max-residual of the fit."""
        target = np.asarray(target, dtype=float)
        basis = np.stack([self.u1, self.u2], axis=1)
        coeffs, *_ = np.linalg.lstsq(basis, target, rcond=None)
        resid = np.max(np.abs(basis @ coeffs - target))
        scale = max(float(np.max(np.abs(target))), 1e-300)
        return coeffs, float(resid) / scale


def miura_map(f, opts=None):
    """w = u_xx / u on the grid of f with the active derivative scheme.

    The outermost two points of a clamped grid have no centered second
    derivative and are padded by edge replication; consumers comparing
    against closed forms should restrict to the interior.
    """
    opts = opts or SolveOptions(n=f.n)
    u = f.values
    low = float(np.min(np.abs(u)))
    if low < opts.u_floor:
        raise DegenerateField(
            f"min|u| = {low:.3g} is below uFloor; the Miura quotient "
            "is unsafe")
    if opts.scheme == "spectral":
        if f.boundary != "periodic":
            raise ConfigError("spectral Miura map needs a periodic grid")
        d2 = stencils.spectral_derivative(u, f.dx, 2)
    elif f.boundary == "periodic":
        d2 = stencils.periodic_d2(u, f.dx)
    else:
        d2 = stencils.interior_d2(u, f.dx)
    w = d2 / u
    if f.boundary == "clamped":
        w[:2] = w[2]
        w[-2:] = w[-3]
    return GridField(w, f.x_min, f.x_max, f.boundary, f.reference, f.time)


def kernel_solve(w, t0, x_min, x_max, n):
    """March u'' = w(x, t0) u across the window from canonical left data.

    Classical RK4 on the first-order system in x, one step per grid
    interval; exponential growth across the window is legitimate and only
    non-finite values abort.
    """
    if n < 8:
        raise ConfigError("kernel march needs at least 8 points")
    x = np.linspace(float(x_min), float(x_max), int(n))
    dx = x[1] - x[0]
    u = np.empty((2, n))
    du = np.empty((2, n))
    state = np.array([[1.0, 0.0], [0.0, 1.0]])  # rows: (u, u') per member

    def rhs(xi, s):
        return np.stack([s[:, 1], w(xi, t0) * s[:, 0]], axis=1)

    u[:, 0] = state[:, 0]
    du[:, 0] = state[:, 1]
    for i in range(n - 1):
        xi = x[i]
        k1 = rhs(xi, state)
        k2 = rhs(xi + 0.5 * dx, state + 0.5 * dx * k1)
        k3 = rhs(xi + 0.5 * dx, state + 0.5 * dx * k2)
        k4 = rhs(xi + dx, state + dx * k3)
        state = state + (dx / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(state)):
            raise BlowUp(f"kernel march overflow at x = {x[i + 1]:.6g}")
        u[:, i + 1] = state[:, 0]
        du[:, i + 1] = state[:, 1]
    return KernelBasis(x, float(t0), u[0], du[0], u[1], du[1],
                       w if isinstance(w, KdvPotential) else
                       KdvPotential(w, "w = callable"))


def kernel_residual(values, x, t, w, dx):
    """Relative max residual of u_xx = w u, interior points only."""
    d2 = stencils.interior_d2(values, dx)
    wu = w(x, t) * values
    r = np.abs(d2 - wu)[_MARGIN:-_MARGIN]
    scale = max(float(np.max(np.abs(wu))), 1e-300)
    return float(np.max(r)) / scale


def evolve_in_kernel(w, init, t_end, opts=None):
    """Evolve u_t = u_xxx - 3 w u_x from a certified kernel member.

    init must be a clamped GridField (the margins follow its reference
    closed form); snapshots are re-certified against the kernel residual
    bound and the trajectory is returned exactly as solver.solve does.
    """
    if init.boundary != "clamped" or init.reference is None:
        raise ConfigError("kernel evolution needs a clamped reference grid")
    opts = opts or SolveOptions(n=init.n)
    x = init.x
    dx = init.dx
    res0 = kernel_residual(init.values, x, init.time, w, dx)
    if res0 > _INITIAL_RESIDUAL:
        raise KernelDrift(
            f"initial kernel residual {res0:.3e} exceeds "
            f"{_INITIAL_RESIDUAL:g}")
    dt = stable_dt(1.0, dx, opts)
    n_steps = max(1, math.ceil(float(t_end - init.time) / dt - 1e-12))
    dt = float(t_end - init.time) / n_steps
    ref = init.reference

    def rhs(u, t):
        out = stencils.interior_d3(u, dx) - 3.0 * w(x, t) * stencils.interior_d1(u, dx)
        out[:_MARGIN] = _reference_dt(ref, x[:_MARGIN], t)
        out[-_MARGIN:] = _reference_dt(ref, x[-_MARGIN:], t)
        return out

    def certify(u, t):
        res = kernel_residual(u, x, t, w, dx)
        if res > _EVOLVED_RESIDUAL:
            raise KernelDrift(
                f"kernel residual {res:.3e} at t = {t:.6g} exceeds "
                f"{_EVOLVED_RESIDUAL:g}")

    u = init.values.copy()
    t0 = init.time
    snapshots = [GridField(u.copy(), init.x_min, init.x_max, "clamped",
                           ref, t0)]
    for step in range(n_steps):
        t = t0 + step * dt
        k1 = rhs(u, t)
        k2 = rhs(u + 0.5 * dt * k1, t + 0.5 * dt)
        k3 = rhs(u + 0.5 * dt * k2, t + 0.5 * dt)
        k4 = rhs(u + dt * k3, t + dt)
        u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(u)):
            raise BlowUp(f"non-finite value at t = {t + dt:.6g}")
        now = t0 + (step + 1) * dt
        if opts.output_every and (step + 1) % opts.output_every == 0 \
                and step + 1 < n_steps:
            certify(u, now)
            snapshots.append(GridField(u.copy(), init.x_min, init.x_max,
                                       "clamped", ref, now))
    certify(u, t0 + float(t_end - init.time))
    snapshots.append(GridField(u.copy(), init.x_min, init.x_max, "clamped",
                               ref, t0 + float(t_end - init.time)))
    return Trajectory(snapshots, f"kernel flow [{w.label}]", opts)


def airy_solution(c1, c2, n, x_min, x_max, t):
    """Sample the similarity solution u = t^{1/6}(c1 Ai + c2 Bi)(x/(6t)^{1/3})."""
    if c1 == 0.0 and c2 == 0.0:
        raise ConfigError("identically vanishing kernel member")
    entry = catalog.make("airy", c1=c1, c2=c2)
    gf = GridField(np.zeros(int(n)), float(x_min), float(x_max), "clamped",
                   entry, float(t))
    gf.values = np.asarray(entry.u(gf.x, t), dtype=float)
    return gf


def legendre_modes(c, x, t):
    """Closed kernel basis over the KdV-soliton potential.

    With z = sqrt(c)/2 (x + c t) and xi = tanh z, the associated Legendre
    pair reduces to u1 = tanh z and u2 = 1 - z tanh z.
    """
    z = 0.5 * math.sqrt(c) * (np.asarray(x, dtype=float) + float(c) * t)
    th = np.tanh(z)
    return th, 1.0 - z * th


class LegendreSecondMode:
    """Closed form of the second kernel mode over the soliton potential:
    u2 = 1 - z tanh z with z = sqrt(c)/2 (x + c t).

    Grows linearly in |x|, so it never sits in the catalog of decaying
    or bounded waves, but it is a perfectly good kernel member and the
    natural partner of the tanh mode when lifting a two-coefficient
    combination.
    """

    kind = "legendre2"

    def __init__(self, c):
        c = float(c)
        if c <= 0:
            raise ConfigError("second mode requires c > 0")
        self.c = c

    def _z(self, x, t):
        return 0.5 * math.sqrt(self.c) * (np.asarray(x, dtype=float)
                                          + self.c * t)

    def u(self, x, t):
        z = self._z(x, t)
        return 1.0 - z * np.tanh(z)

    def ux(self, x, t):
        z = self._z(x, t)
        zx = 0.5 * math.sqrt(self.c)
        return -zx * (np.tanh(z) + z / np.cosh(z) ** 2)

    def ut(self, x, t):
        return self.c * self.ux(x, t)

    def uxx_ratio(self, x, t):
        """Same Schroedinger potential as the tanh mode."""
        z = self._z(x, t)
        return -0.5 * self.c / np.cosh(z) ** 2

    def describe(self):
        return {"kind": self.kind, "c": self.c}


class LinearCombo:
    """Closed-form linear combination, usable as a clamped reference."""

    kind = "combo"

    def __init__(self, entries, coeffs):
        if len(entries) != len(coeffs) or not entries:
            raise ConfigError("combo needs matching entries and coefficients")
        self.entries = list(entries)
        self.coeffs = [float(c) for c in coeffs]

    def u(self, x, t):
        return sum(c * e.u(x, t) for c, e in zip(self.coeffs, self.entries))

    def ux(self, x, t):
        return sum(c * e.ux(x, t) for c, e in zip(self.coeffs, self.entries))

    def ut(self, x, t):
        return sum(c * e.ut(x, t) for c, e in zip(self.coeffs, self.entries))

    def describe(self):
        return {"kind": self.kind,
                "parts": [e.describe() for e in self.entries],
                "coeffs": self.coeffs}
