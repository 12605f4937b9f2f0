"""Total derivatives, variational calculus and exact antidifferentiation."""

import random

import pytest

from dispkit.calculus import (EvolutionRule, euler_operator, frechet,
                              integrate_x, substitute_tders, total_dt,
                              total_dx, total_dx_n)
from dispkit.errors import MissingRule, NotExact, SecondTimeDerivative
from dispkit.expr import DiffExpr, coord, jet, jet_expr, parse

from conftest import random_jet_poly

U = jet_expr("u")
UX = jet_expr("u", 1)
UXX = jet_expr("u", 2)
UT = jet_expr("u", 0, 1)
X = DiffExpr.var(coord("x"))
T = DiffExpr.var(coord("t"))


def test_total_dx_images():
    assert total_dx(U) == UX
    assert total_dx(X) == DiffExpr.const(1)
    assert total_dx(T) == DiffExpr.const(0)
    assert total_dx(X * U) == U + X * UX
    assert total_dx(jet_expr("lnu")) == UX / U


def test_total_dx_leibniz_random(rng_expr):
    rng = random.Random(rng_expr.randint(0, 10 ** 9))
    for _ in range(60):
        a = random_jet_poly(rng)
        b = random_jet_poly(rng)
        assert total_dx(a * b) == total_dx(a) * b + a * total_dx(b)


def test_total_dx_n():
    assert total_dx_n(U, 3) == jet_expr("u", 3)
    assert total_dx_n(U ** 2, 2) == 2 * UX ** 2 + 2 * U * UXX


def test_total_dt_formal():
    assert total_dt(U, formal=True) == UT
    assert total_dt(X * UX, formal=True) == X * jet_expr("u", 1, 1)
    with pytest.raises(SecondTimeDerivative):
        total_dt(UT, formal=True)


def test_total_dt_substitution():
    rule = EvolutionRule("u", jet_expr("u", 3))
    assert total_dt(U, rule) == jet_expr("u", 3)
    # substitution mode first eliminates the t-derivatives already present
    e = U * UT
    assert total_dt(e.subs({jet("u", 0, 1): jet_expr("u", 3)}), rule) \
        == total_dt(U * jet_expr("u", 3), rule)
    with pytest.raises(MissingRule):
        total_dt(U)
    with pytest.raises(MissingRule):
        total_dt(jet_expr("rho", 0, 1), rule)


def test_substitute_tders():
    rule = EvolutionRule("u", -2 * U * UX)
    e = jet_expr("u", 1, 1)  # u_tx -> D_x(-2 u u_x)
    assert substitute_tders(e, rule) == -2 * UX ** 2 - 2 * U * UXX


def test_evolution_rule_validation():
    with pytest.raises(ValueError):
        EvolutionRule("v", U)
    with pytest.raises(ValueError):
        EvolutionRule("u", UT)


def test_euler_operator_known_values():
    assert euler_operator(UX ** 2 / 2) == -UXX
    assert euler_operator(U ** 3) == 3 * U ** 2
    assert euler_operator(U * UX).is_zero  # a total derivative
    assert euler_operator(U * UXX + UX ** 2).is_zero  # D_x(u u_x)
    # quotient density, exactly the family's nonlinear term shape
    assert euler_operator(UX ** 2 / U) \
        == -2 * UXX / U + UX ** 2 / U ** 2


def test_euler_kills_total_derivatives_random(rng_expr):
    rng = random.Random(rng_expr.randint(0, 10 ** 9))
    for _ in range(60):
        e = random_jet_poly(rng)
        assert euler_operator(total_dx(e), "u").is_zero


def test_frechet_linearity_and_product():
    K = U * UX
    Q = UXX
    assert frechet(K, Q) == Q * UX + U * total_dx(Q)
    K2 = parse("u_3x - 6*u*u_x")
    assert frechet(K2, U) == jet_expr("u", 3) - 12 * U * UX
    with pytest.raises(SecondTimeDerivative):
        frechet(UT, U)


def test_integrate_x_known_values():
    assert integrate_x(U * UX) == U ** 2 / 2
    assert integrate_x(UX * UXX) == UX ** 2 / 2
    assert integrate_x(U + X * UX) == X * U
    assert integrate_x(DiffExpr.const(0)).is_zero
    # trailing pure-x remainder
    assert integrate_x(UX + X) == U + X ** 2 / 2


def test_integrate_x_not_exact():
    with pytest.raises(NotExact):
        integrate_x(UX / U)  # logarithmic
    with pytest.raises(NotExact):
        integrate_x(UX ** 2)
    with pytest.raises(NotExact):
        integrate_x(U * UXX)


def test_integrate_x_round_trip_random(rng_expr):
    rng = random.Random(rng_expr.randint(0, 10 ** 9))
    for _ in range(60):
        e = random_jet_poly(rng)
        assert integrate_x(total_dx(e)) == e


def test_integrate_x_rational_round_trip():
    for text in ("u_x/u^2", "u_x*u_xx/u", "x*u_xx/u"):
        e = parse(text)
        assert integrate_x(total_dx(e)) == e
