"""Equation family definitions shared by the symbolic and numeric layers.

The main family is u_t + 2a u_x u_xx / u = eps*a*u_xxx, written internally
as the evolution rule u_t = eps*a*u_3x - 2a*u_x*u_xx/u.  Fixed members are
obtained by substituting exact rationals for eps and a.  The auxiliary
field rho obeys the linear flow rho_t = -(2/3)a*rho_3x, which is what the
weighted conservation rows require at eps = -2/3.

Also provided: the logarithmic form for positive solutions (u = e^w) and
the two one-parameter variants that share the sech^2 profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import EvolutionRule
from .expr import DiffExpr, parse


def _fix_params(e, eps, a, **extra):
    vals = dict(extra)
    if eps is not None:
        vals["eps"] = Fraction(eps)
    if a is not None:
        vals["a"] = Fraction(a)
    return e.subs_params(**vals) if vals else e


@dataclass(frozen=True)
class EquationSpec:
    """An evolution equation u_t = rhs plus any auxiliary rules."""

    name: str
    rhs: DiffExpr
    eps: Fraction | None = None
    a: Fraction | None = None
    aux_rules: tuple = field(default_factory=tuple)

    @property
    def rule(self):
        return EvolutionRule("u", self.rhs)

    @property
    def rules(self):
        return (self.rule,) + tuple(self.aux_rules)

    def __repr__(self):
        return f"EquationSpec({self.name}: u_t = {self.rhs})"


_FAMILY_RHS = parse("eps*a*u_3x - 2*a*u_x*u_xx/u")
_RHO_RHS = parse("-2/3*a*rho_3x")
_LOG_RHS = parse("eps*a*u_3x + (3*eps - 2)*a*u_x*u_xx + (eps - 2)*a*u_x^3")
_V71_RHS = parse("delta*u_3x - 3*(1 - delta)*u*u_x - (1 + delta)*u_x*u_xx/u")
_V72_RHS = parse("delta*u_3x - 2*(1 - 2*delta)*u*u_x - (1 + delta)*u_x^3/u^2")


def family(eps=None, a=None, with_rho=True):
    """The dispersive family member with given (exact rational) eps and a.

    Passing None keeps the corresponding parameter symbolic.  The rho rule
    rides along by default so weighted densities can be checked.
    """
    eps_f = None if eps is None else Fraction(eps)
    a_f = None if a is None else Fraction(a)
    rhs = _fix_params(_FAMILY_RHS, eps_f, a_f)
    aux = ()
    if with_rho:
        aux = (EvolutionRule("rho", _fix_params(_RHO_RHS, None, a_f)),)
    bits = []
    bits.append("eps=%s" % (eps_f if eps_f is not None else "sym"))
    bits.append("a=%s" % (a_f if a_f is not None else "sym"))
    return EquationSpec("family(%s)" % ",".join(bits), rhs, eps_f, a_f, aux)


def log_form(eps=None, a=None):
    """Evolution of w = ln u for positive solutions of the family."""
    rhs = _fix_params(_LOG_RHS, None if eps is None else Fraction(eps),
                      None if a is None else Fraction(a))
    return EquationSpec("logform", rhs,
                        None if eps is None else Fraction(eps),
                        None if a is None else Fraction(a))


def variant71(delta):
    """One-parameter deformation preserving the L2 norm; delta=1 is the
    eps=a=1 family member, delta=-1 is KdV."""
    rhs = _V71_RHS.subs_params(delta=Fraction(delta))
    return EquationSpec(f"variant71(delta={Fraction(delta)})", rhs)


def variant72(delta):
    """Second sech^2-sharing deformation."""
    rhs = _V72_RHS.subs_params(delta=Fraction(delta))
    return EquationSpec(f"variant72(delta={Fraction(delta)})", rhs)


def kdv():
    """w_t = w_xxx - 6 w w_x, target of the second-derivative-ratio map."""
    return EquationSpec("kdv", parse("u_3x - 6*u*u_x"))


def kernel_flow_rhs():
    """u_t = u_xxx - 3 w u_x with w supplied numerically; symbolic form is
    only used for documentation and tests of the residual wiring."""
    return parse("u_3x - 3*c*u_x")
