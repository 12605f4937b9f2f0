"""Closed-form solution catalog: construction, residuals, validity."""

import numpy as np
import pytest

from dispkit import catalog
from dispkit.errors import (ConfigError, NonSmoothSolution, OutOfDomain,
                            ZeroSpeed)


def test_kinds_listing():
    ks = catalog.kinds()
    assert ks == sorted(ks)
    for k in ("sech2", "kink", "airy", "peakonExp", "peakonSin",
              "kdvSoliton", "kernelExp", "kernelTrig", "planePhase",
              "exponential", "sinusoidal"):
        assert k in ks


def test_make_errors():
    with pytest.raises(ConfigError):
        catalog.make("solitonwave")
    with pytest.raises(ConfigError):
        catalog.make("sech2", speed=1.0)


@pytest.mark.parametrize("kind, params, n, lo, hi, t, tol", [
    ("sech2", dict(c=1.0), 512, -15, 15, 0.7, 5e-5),
    ("sech2", dict(c=2.0, x0=1.0), 512, -15, 15, 0.7, 2e-3),
    ("kink", dict(c=2.0), 512, -10, 10, 0.5, 1e-4),
    ("kdvSoliton", dict(c=2.0), 512, -10, 10, 0.5, 1e-3),
    ("exponential", dict(eps=1.0, a=1.0, c=1.0), 512, -3, 3, 0.5, 5e-6),
    ("exponential", dict(eps=3.0, a=1.0, c=-1.0), 512, -3, 3, 0.5, 1e-4),
    ("sinusoidal", dict(eps=1.0, a=-1.0, c=1.0), 512, -10, 10, 0.5, 1e-7),
    ("sinusoidal", dict(eps=4.0, a=1.0, c=2.0), 512, -10, 10, 0.5, 5e-5),
    ("kernelExp", dict(c1=1.0, c2=1.0), 512, -4, 4, 0.5, 5e-4),
    ("kernelTrig", dict(c1=1.0, c2=2.0), 512, -10, 10, 0.5, 5e-4),
    ("airy", dict(c1=1.0, c2=0.0), 1024, -5, 5, 0.75, 5e-6),
    ("planePhase", dict(eps=1.0, a=1.0, k=1.0), 512, -10, 10, 0.5, 1e-6),
])
def test_residual_on_grid(kind, params, n, lo, hi, t, tol):
    entry = catalog.make(kind, **params)
    assert catalog.residual_on_grid(entry, n, lo, hi, t) <= tol


def test_describe_round_trips_through_make():
    for kind, params in [("sech2", dict(c=2.0)), ("kink", dict(c=1.0)),
                         ("kernelExp", dict(c1=2.0, c2=-1.0))]:
        entry = catalog.make(kind, **params)
        d = entry.describe()
        rebuilt = catalog.make(d.pop("kind"),
                               **{k: v for k, v in d.items()
                                  if k in params})
        x = np.linspace(-3, 3, 7)
        assert np.allclose(entry.u(x, 0.3), rebuilt.u(x, 0.3))


def test_sech2_profile_values():
    e = catalog.make("sech2", c=2.0)
    # crest height c/2 at x = c t + x0
    assert e.u(2.0 * 0.7, 0.7) == pytest.approx(1.0, abs=1e-14)
    assert e.ux(2.0 * 0.7, 0.7) == pytest.approx(0.0, abs=1e-14)
    # travels right: ut = -c * ux
    x = np.linspace(-4, 4, 33)
    assert np.allclose(e.ut(x, 0.1), -2.0 * e.ux(x, 0.1))


def test_uxx_ratio_matches_difference_quotient():
    d = 1e-4
    x = np.linspace(-3.0, 3.0, 101)
    for kind, params in [("sech2", dict(c=1.0)), ("kink", dict(c=2.0)),
                         ("kdvSoliton", dict(c=1.0))]:
        e = catalog.make(kind, **params)
        u = e.u(x, 0.2)
        uxx = (e.u(x + d, 0.2) - 2 * u + e.u(x - d, 0.2)) / d ** 2
        keep = np.abs(u) > 0.05
        assert np.max(np.abs((uxx / u - e.uxx_ratio(x, 0.2))[keep])) < 1e-5


def test_kink_is_the_fixed_member():
    e = catalog.make("kink", c=2.0)
    d = e.describe()
    assert d["eps"] == pytest.approx(2.0 / 3.0)
    assert d["a"] == pytest.approx(1.5)
    # monotone front between -1 and 1
    x = np.linspace(-12, 12, 201)
    u = e.u(x, 0.0)
    assert np.all(np.diff(u) > 0)
    assert u[0] == pytest.approx(-1.0, abs=1e-8)
    assert u[-1] == pytest.approx(1.0, abs=1e-8)


def test_airy_domain():
    e = catalog.make("airy", c1=1.0, c2=0.0)
    with pytest.raises(OutOfDomain):
        e.u(0.0, 0.0)
    with pytest.raises(OutOfDomain):
        e.u(0.0, -0.5)
    assert np.isfinite(e.u(0.0, 0.5))


def test_peakon_constraints():
    with pytest.raises(ConfigError):
        catalog.make("peakonExp", c=-2.0)  # needs sgn(c) = sgn(a)
    with pytest.raises(ConfigError):
        catalog.make("peakonSin", c=2.0, a=1.0)  # needs sgn(c) != sgn(a)
    with pytest.raises(ZeroSpeed):
        catalog.make("peakonExp", c=0.0)


def test_peakons_are_not_smooth():
    for kind, params in [("peakonExp", dict(c=2.0)),
                         ("peakonSin", dict(c=2.0))]:
        entry = catalog.make(kind, **params)
        assert not entry.smooth
        with pytest.raises(NonSmoothSolution):
            catalog.residual_on_grid(entry, 128, -5, 5, 0.0)


def test_peakon_closed_nonlinear_product():
    """nonlinear() equals the raw a.e. quotient u_x u_xx / u off the crest."""
    d = 1e-5
    x = np.linspace(0.5, 4.0, 200)  # right of the t=0 crest
    pk = catalog.make("peakonExp", c=2.0)
    uxx = (pk.u(x + d, 0) - 2 * pk.u(x, 0) + pk.u(x - d, 0)) / d ** 2
    quot = pk.ux(x, 0) * uxx / pk.u(x, 0)
    assert np.max(np.abs(quot - pk.nonlinear(x, 0))) < 1e-4

    ps = catalog.make("peakonSin", c=2.0)
    uxx = (ps.u(x + d, 0) - 2 * ps.u(x, 0) + ps.u(x - d, 0)) / d ** 2
    keep = np.abs(ps.u(x, 0)) > 0.2
    quot = ps.ux(x, 0)[keep] * uxx[keep] / ps.u(x, 0)[keep]
    assert np.max(np.abs(quot - ps.nonlinear(x, 0)[keep])) < 1e-4
    # and the closed form stays bounded across the zeros of u
    z = np.linspace(-6, 6, 1001)
    assert np.all(np.isfinite(ps.nonlinear(z, 0.0)))
    assert np.max(np.abs(ps.nonlinear(z, 0.0))) <= ps.freq ** 3 + 1e-12


def test_plane_phase_dispersion():
    e = catalog.make("planePhase", eps=2.0, a=1.0, k=3.0)
    assert e.omega == pytest.approx(0.0)  # stationary at eps = 2
    e2 = catalog.make("planePhase", eps=1.0, a=1.0, k=2.0)
    assert e2.omega == pytest.approx(-8.0)


def test_kernel_entries_solve_their_pair():
    x = np.linspace(-2, 2, 41)
    ke = catalog.make("kernelExp", c1=1.0, c2=3.0)
    assert np.allclose(ke.system_potential(x, 0.1), 1.0)
    d = 1e-4
    uxx = (ke.u(x + d, 0.1) - 2 * ke.u(x, 0.1) + ke.u(x - d, 0.1)) / d ** 2
    assert np.max(np.abs(uxx - ke.u(x, 0.1))) < 1e-5
    kt = catalog.make("kernelTrig", c1=0.5, c2=0.5)
    assert np.allclose(kt.system_potential(x, 0.1), -1.0)
    uxx = (kt.u(x + d, 0.1) - 2 * kt.u(x, 0.1) + kt.u(x - d, 0.1)) / d ** 2
    assert np.max(np.abs(uxx + kt.u(x, 0.1))) < 1e-5
