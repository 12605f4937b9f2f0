"""Shared fixtures: seeded random generators for the property suites and
the two expensive acceptance trajectories (computed once per session)."""

import random
from fractions import Fraction

import numpy as np
import pytest

from dispkit import catalog, solver
from dispkit.equations import family
from dispkit.expr import DiffExpr, coord, jet

_JETS = [jet("u"), jet("u", 1), jet("u", 2), jet("u", 3)]
_COORDS = [coord("x"), coord("t")]


def random_jet_poly(rng, terms=3, coords=True):
    """Random differential polynomial; every term carries a jet factor."""
    pool = _JETS + (_COORDS if coords else [])
    e = DiffExpr.const(0)
    for _ in range(rng.randint(1, terms)):
        c = Fraction(rng.choice([k for k in range(-6, 7) if k]),
                     rng.randint(1, 4))
        term = DiffExpr.const(c) * DiffExpr.var(rng.choice(_JETS))
        for _ in range(rng.randint(0, 2)):
            term = term * DiffExpr.var(rng.choice(pool))
        e = e + term
    return e


def random_positive_profile(rng, x, span):
    """Smooth periodic profile bounded well away from zero."""
    vals = np.full(x.shape, 1.5)
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(1, 4)
        amp = rng.uniform(-0.25, 0.25)
        ph = rng.uniform(0.0, 2.0 * np.pi)
        vals = vals + amp * np.sin(2.0 * np.pi * k * x / span + ph)
    return vals


@pytest.fixture(scope="session")
def rng_expr():
    return random.Random(20240817)


@pytest.fixture(scope="session")
def sech2_convergence_runs():
    """The criterion-7 grid triplet: eps=a=1 from sech2(c=1) to t=5.

    Returns {n: (linf_error, h0_drift)} plus the trajectory at n=512.
    The configuration is the validated decaying-profile one: clamped
    margins, no positivity floor, mild hyperviscosity on the deviation.
    """
    from dispkit import conserve

    eq = family(1, 1, with_rho=False)
    entry = catalog.make("sech2", c=1.0)
    out = {}
    traj512 = None
    for n in (128, 256, 512):
        opts = solver.SolveOptions(n=n, t_end=5.0, u_floor=0.0, reg_rel=0.0,
                                   hyper_mu=0.35)
        init = solver.grid_from_entry(entry, n, -20.0, 20.0,
                                      boundary="clamped")
        traj = solver.solve(eq, init, opts)
        f = traj.final
        err = float(np.max(np.abs(f.values - entry.u(f.x, f.time))))
        rep = conserve.drift_report(conserve.IntegralSpec("H0"), traj)
        out[n] = (err, rep.max_drift)
        if n == 512:
            traj512 = traj
    return {"errors": out, "traj512": traj512, "entry": entry}


@pytest.fixture(scope="session")
def kink_run():
    """The criterion-8 trajectory: eps=2/3, a=3/2 from kink(c=2) to t=1.

    N=1024 on [-12,12]; the sign crossing needs the anchored quotient and
    stronger hyperviscosity.  This is by far the slowest fixture (~4 min),
    shared by both halves of the criterion.
    """
    eq = family(Fraction(2, 3), Fraction(3, 2), with_rho=False)
    entry = catalog.make("kink", c=2.0)
    n = 1024
    opts = solver.SolveOptions(n=n, t_end=1.0, u_floor=0.0, reg_rel=0.0,
                               hyper_mu=2.0, anchor_quotient=True)
    init = solver.grid_from_entry(entry, n, -12.0, 12.0, boundary="clamped")
    traj = solver.solve(eq, init, opts)
    return {"traj": traj, "entry": entry}
