"""Numeric first-integral monitors for solver trajectories.

Evaluates the conserved quantities of the family on grid snapshots and
reports drift: H0 = int u^2, H1 = int u^4, H2 = int u^2 ln u (positive
fields only), H3 = int rho u^2 (needs the auxiliary density), and the Hn
hierarchy built from u^3 R^n (3t u_t + x u_x), whose symbolic density
comes from the operators module with u_t kept formal.  For Hn the caller
supplies the time-derivative array (typically solver.rhs_eval output) as
aux; derivatives of order four and above fall back to repeated first
differences, so hierarchy indices beyond n = 1 are reported rather than
asserted.

Quadrature follows the grid: uniform trapezoid on periodic grids (which
is the rectangle rule there, spectrally accurate for smooth periodic
integrands) and Simpson on clamped grids.  Clamped monitors for H0, H1,
H2 refuse fields that do not decay at the window edges: the integral of
a non-decaying profile like the kink diverges with the window and its
finite-window value means nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as _si

from . import operators, stencils
from .errors import ConfigError, DomainMismatch, MissingAux, NonPositiveField
from .expr import coord, jet

_KINDS = ("H0", "H1", "H2", "H3", "Hn")
_DECAY_FRACTION = 1e-3  # boundary magnitude refused above this times max|u|


@dataclass(frozen=True)
class IntegralSpec:
    """Which first integral to evaluate; index selects n for kind="Hn"."""

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ConfigError(f"unknown integral kind {self.kind!r}")
        if self.kind == "Hn" and not 0 <= self.index <= 6:
            raise ConfigError("hierarchy index out of the supported range")


def _quadrature(f, integrand):
    if f.boundary == "periodic":
        return f.dx * float(np.sum(integrand))
    return float(_si.simpson(integrand, x=f.x))


def _check_decay(f, kind):
    if f.boundary != "clamped":
        return
    u = f.values
    edge = max(abs(float(u[0])), abs(float(u[-1])))
    if edge > _DECAY_FRACTION * float(np.max(np.abs(u))):
        raise DomainMismatch(
            f"{kind} needs decaying boundary data; the window edges hold "
            f"|u| = {edge:.3g}")


def _derivative_ladder(arr, f, max_order):
    """x-derivatives 0..max_order; orders beyond 3 by repeated d1."""
    per = f.boundary == "periodic"
    dx = f.dx
    out = [np.asarray(arr, dtype=float)]
    if max_order >= 1:
        out.append(stencils.periodic_d1(out[0], dx) if per
                   else stencils.interior_d1(out[0], dx))
    if max_order >= 2:
        out.append(stencils.periodic_d2(out[0], dx) if per
                   else stencils.interior_d2(out[0], dx))
    if max_order >= 3:
        out.append(stencils.periodic_d3(out[0], dx) if per
                   else stencils.interior_d3(out[0], dx))
    for _ in range(3, max_order):
        out.append(stencils.periodic_d1(out[-1], dx) if per
                   else stencils.interior_d1(out[-1], dx))
    return out


def _hierarchy_value(n, f, ut):
    density = operators.hierarchy_density(n)
    max_u = 0
    max_ut = -1
    for v in density.vars():
        if v[0] != "j":
            continue
        if v[2] == 0:
            max_u = max(max_u, v[3])
        else:
            max_ut = max(max_ut, v[3])
    du = _derivative_ladder(f.values, f, max_u)
    env = {jet("u", k): du[k] for k in range(max_u + 1)}
    if max_ut >= 0:
        dut = _derivative_ladder(ut, f, max_ut)
        for k in range(max_ut + 1):
            env[jet("u", k, t_order=1)] = dut[k]
    env[coord("x")] = f.x
    env[coord("t")] = f.time
    return _quadrature(f, density.evalf(env))


def evaluate(spec, f, aux=None):
    """One integral on one snapshot.

    aux carries the rho field for H3 and the u_t array for Hn; other
    kinds ignore it.
    """
    u = f.values
    if spec.kind == "H0":
        _check_decay(f, "H0")
        return _quadrature(f, u ** 2)
    if spec.kind == "H1":
        _check_decay(f, "H1")
        return _quadrature(f, u ** 4)
    if spec.kind == "H2":
        _check_decay(f, "H2")
        if np.min(u) <= 0.0:
            raise NonPositiveField("H2 = int u^2 ln u needs positive fields")
        return _quadrature(f, u ** 2 * np.log(u))
    if spec.kind == "H3":
        if aux is None:
            raise MissingAux("H3 = int rho u^2 needs the rho field as aux")
        rho = np.asarray(aux, dtype=float)
        if rho.shape != u.shape:
            raise ConfigError("rho grid does not match the field")
        return _quadrature(f, rho * u ** 2)
    if aux is None:
        raise MissingAux("Hn needs the u_t array (rhs_eval output) as aux")
    ut = np.asarray(aux, dtype=float)
    if ut.shape != u.shape:
        raise ConfigError("u_t grid does not match the field")
    return _hierarchy_value(spec.index, f, ut)


@dataclass
class DriftReport:
    times: list = field(default_factory=list)
    values: list = field(default_factory=list)
    max_drift: float = 0.0
    relative: bool = True   # False: initial value was zero, drift absolute


def drift_report(spec, trajectory, aux=None):
    """Evaluate the integral along a trajectory and report worst drift.

    aux may be None, one array shared by all snapshots, a list aligned
    with the snapshots, or a callable mapping a snapshot to its array.
    """
    fields = trajectory.fields
    if not fields:
        raise ConfigError("empty trajectory")

    def aux_for(i, snap):
        if aux is None or isinstance(aux, np.ndarray):
            return aux
        if callable(aux):
            return aux(snap)
        return aux[i]

    report = DriftReport()
    for i, snap in enumerate(fields):
        report.times.append(snap.time)
        report.values.append(evaluate(spec, snap, aux_for(i, snap)))
    v0 = report.values[0]
    deltas = [abs(v - v0) for v in report.values]
    if v0 == 0.0:
        report.relative = False
        report.max_drift = max(deltas)
    else:
        report.max_drift = max(deltas) / abs(v0)
    return report
