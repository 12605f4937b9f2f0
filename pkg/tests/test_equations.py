"""Equation family construction and the relations between its forms."""

from fractions import Fraction

import pytest

from dispkit.calculus import total_dx
from dispkit.equations import (family, kdv, kernel_flow_rhs, log_form,
                               variant71, variant72)
from dispkit.expr import jet, jet_expr, parse


def test_family_symbolic():
    eq = family()
    assert eq.name == "family(eps=sym,a=sym)"
    assert eq.rhs == parse("eps*a*u_3x - 2*a*u_x*u_xx/u")
    assert eq.eps is None and eq.a is None


@pytest.mark.parametrize("eps, a, expected", [
    (1, 1, "u_3x - 2*u_x*u_xx/u"),
    (Fraction(2, 3), Fraction(3, 2), "u_3x - 3*u_x*u_xx/u"),
    (-2, 1, "-2*u_3x - 2*u_x*u_xx/u"),
])
def test_family_fixed_members(eps, a, expected):
    eq = family(eps, a)
    assert eq.rhs == parse(expected)
    assert eq.eps == Fraction(eps)
    assert eq.a == Fraction(a)


def test_family_rho_rule():
    eq = family(1, 1)
    assert len(eq.aux_rules) == 1
    rho_rule = eq.aux_rules[0]
    assert rho_rule.subject == "rho"
    assert rho_rule.rhs == parse("-2/3*rho_3x")
    assert family(1, 1, with_rho=False).aux_rules == ()


def test_rules_tuple():
    eq = family(1, 1)
    rules = eq.rules
    assert rules[0].subject == "u"
    assert rules[0].rhs == eq.rhs
    assert rules[1].subject == "rho"


def test_log_form_matches_family_on_positive_solutions():
    # If u = e^w solves the family then w_t = rhs_log(w).  Substituting the
    # chain rule images u_x = w_x u, u_xx = (w_xx + w_x^2) u,
    # u_3x = (w_3x + 3 w_x w_xx + w_x^3) u into u_t / u must reproduce the
    # logarithmic right-hand side with u-jets renamed to w-jets.
    wx, wxx, w3x = jet_expr("u", 1), jet_expr("u", 2), jet_expr("u", 3)
    fam = family().rhs  # eps*a*u_3x - 2a*u_x*u_xx/u
    u = jet_expr("u")
    subs = {
        jet("u", 1): wx * u,
        jet("u", 2): (wxx + wx ** 2) * u,
        jet("u", 3): (w3x + 3 * wx * wxx + wx ** 3) * u,
    }
    lhs = fam.subs(subs) / u
    assert lhs == log_form().rhs


def test_variants_delta_endpoints():
    # delta=1 of the first variant is the eps=a=1 family member
    assert variant71(1).rhs == family(1, 1).rhs
    # delta=-1 is KdV up to the sign convention of the coefficient
    assert variant71(-1).rhs == parse("-u_3x - 6*u*u_x")
    assert variant72(1).rhs == parse("u_3x + 2*u*u_x - 2*u_x^3/u^2")
    assert "delta=1/2" in variant71(Fraction(1, 2)).name


def test_kdv_and_kernel_flow():
    assert kdv().rhs == parse("u_3x - 6*u*u_x")
    assert kernel_flow_rhs() == parse("u_3x - 3*c*u_x")


def test_family_rhs_is_a_valid_rule():
    # the evolution rule layer accepts the quotient right-hand side
    eq = family(1, 1)
    r = eq.rule
    assert r.subject == "u"
    # u-multiplied form is a total derivative at eps = a = 1:
    # u u_t = D_x(u u_xx - (3/2) u_x^2), which is why H0 = int u^2 is
    # conserved for this member
    u, ux, uxx = jet_expr("u"), jet_expr("u", 1), jet_expr("u", 2)
    u3x = jet_expr("u", 3)
    assert u * r.rhs == u * u3x - 2 * ux * uxx
    assert total_dx(u * uxx - Fraction(3, 2) * ux ** 2) == u * r.rhs
