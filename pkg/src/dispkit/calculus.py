"""Total derivatives, variational calculus and exact antidifferentiation.

Everything here acts on DiffExpr values from .expr.  Total t-derivatives
come in two modes: formal (u_t stays a symbol, second t-derivatives are a
hard error) and substitution (u_t and friends are eliminated through an
evolution rule u_t = rhs and its x-derivatives).

integrate_x inverts total_dx on exact integrands by peeling the highest
x-derivative variable; non-exact input raises NotExact rather than
returning a nonlocal object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingRule, NotExact, SecondTimeDerivative
from .expr import (
    DiffExpr,
    JET_SYMBOLS,
    ONE,
    U,
    UX,
    ZERO,
    coord,
    jet,
    _p_vars,
)


@dataclass(frozen=True)
class EvolutionRule:
    """u_t = rhs (or rho_t = rhs); rhs may contain only t-order-0 jets."""

    subject: str
    rhs: DiffExpr

    def __post_init__(self):
        if self.subject not in ("u", "rho"):
            raise ValueError(f"evolution rule for unknown symbol {self.subject!r}")
        for v in self.rhs.jet_vars():
            if v[2] != 0:
                raise ValueError("evolution rule rhs must be free of t-derivatives")


def rules_map(rules):
    """Normalize an iterable of EvolutionRule into {subject: rhs}."""
    if rules is None:
        return {}
    if isinstance(rules, dict):
        return rules
    if isinstance(rules, EvolutionRule):
        rules = (rules,)
    return {r.subject: r.rhs for r in rules}


# ---------------------------------------------------------------------------
# total derivatives

_LNU = jet("lnu")
_X = coord("x")
_T = coord("t")


def _dx_image(v):
    kind = v[0]
    if kind == "j":
        if v[1] == "lnu":
            return UX / U
        return DiffExpr.var(jet(v[1], v[3] + 1, v[2]))
    if kind == "c":
        return ONE if v[1] == "x" else ZERO
    return ZERO


def total_dx(e):
    """Total x-derivative: chain rule over every variable present."""
    out = ZERO
    for v in e.vars():
        img = _dx_image(v)
        if img.is_zero:
            continue
        d = e.diff_var(v)
        if not d.is_zero:
            out = out + d * img
    return out


def total_dx_n(e, n):
    for _ in range(n):
        e = total_dx(e)
    return e


def _dt_image_formal(v):
    kind = v[0]
    if kind == "j":
        if v[1] == "lnu":
            return DiffExpr.var(jet("u", 0, 1)) / U
        if v[2] == 1:
            raise SecondTimeDerivative(
                f"formal D_t would raise {v[1]} to two t-derivatives")
        return DiffExpr.var(jet(v[1], v[3], 1))
    if kind == "c":
        return ONE if v[1] == "t" else ZERO
    return ZERO


def _total_dt_formal(e):
    out = ZERO
    for v in e.vars():
        d = e.diff_var(v)
        if d.is_zero:
            continue
        img = _dt_image_formal(v)
        if not img.is_zero:
            out = out + d * img
    return out


def substitute_tders(e, rules):
    """Replace every t-order-1 jet variable via its rule's x-derivatives."""
    rmap = rules_map(rules)
    mapping = {}
    for v in e.jet_vars():
        if v[2] == 1:
            rhs = rmap.get(v[1])
            if rhs is None:
                raise MissingRule(
                    f"no evolution rule for {v[1]} in substitution mode")
            mapping[v] = total_dx_n(rhs, v[3])
    return e.subs(mapping) if mapping else e


def total_dt(e, rules=None, formal=False):
    """Total t-derivative.

    Formal mode keeps u_t symbolic and errors on a second t-derivative.
    Substitution mode first eliminates any t-derivatives already present in
    e, differentiates formally, then eliminates again, so the result is in
    t-order-0 variables only.
    """
    if formal:
        return _total_dt_formal(e)
    rmap = rules_map(rules)
    if not rmap:
        raise MissingRule("substitution mode requires at least one rule")
    reduced = substitute_tders(e, rmap)
    return substitute_tders(_total_dt_formal(reduced), rmap)


# ---------------------------------------------------------------------------
# variational calculus

def euler_operator(e, sym="u"):
    """Variational derivative delta e / delta sym.

    Sums (-1)^(j+m) D_x^j D_t^m of the partials with respect to every jet
    variable of `sym` occurring in e; D_t is formal, so e may be at most
    linear in t-derivative variables.
    """
    out = ZERO
    for v in sorted(e.jet_vars()):
        if v[1] != sym:
            continue
        m, j = v[2], v[3]
        term = e.diff_var(v)
        if term.is_zero:
            continue
        term = total_dx_n(term, j)
        if m:
            term = _total_dt_formal(term)
        if (j + m) % 2:
            term = -term
        out = out + term
    return out


def frechet(K, Q, sym="u"):
    """Directional (Frechet) derivative of K along Q: d/ds K[u + sQ] at 0."""
    out = ZERO
    for v in sorted(K.jet_vars()):
        if v[1] != sym:
            continue
        if v[2] != 0:
            raise SecondTimeDerivative(
                "frechet expects t-order-0 arguments; substitute rules first")
        d = K.diff_var(v)
        if not d.is_zero:
            out = out + d * total_dx_n(Q, v[3])
    return out


# ---------------------------------------------------------------------------
# exact antidifferentiation

def _euler_x_only(e, field):
    """x-only Euler operator for one field = (sym, t_order)."""
    sym, to = field
    out = ZERO
    for v in sorted(e.jet_vars()):
        if v[1] != sym or v[2] != to:
            continue
        d = e.diff_var(v)
        if d.is_zero:
            continue
        d = total_dx_n(d, v[3])
        if v[3] % 2:
            d = -d
        out = out + d
    return out


def _antiderivative_in_var(A, w):
    """Antiderivative of A with respect to the single variable w.

    A must be a Laurent polynomial in w over w-free rational coefficients:
    the denominator is required to be w-free or carry w as a pure monomial
    factor.  A w^-1 net power (a logarithm) raises NotExact.
    """
    den_pows = set()
    for m in A.den:
        ew = 0
        for vv, e in m:
            if vv == w:
                ew = e
                break
        den_pows.add(ew)
    if len(den_pows) > 1:
        raise NotExact(f"coefficient is not Laurent in {w}")
    k = den_pows.pop() if den_pows else 0
    out = ZERO
    wvar = DiffExpr.var(w)
    # multiplying by w^k clears w from the denominator entirely
    shifted = A * wvar ** k if k else A
    for exp, coeff in shifted.coeffs_in(w).items():
        p = exp - k
        if p == -1:
            raise NotExact("antiderivative would be logarithmic")
        out = out + coeff * wvar ** (p + 1) / (p + 1)
    return out


_MAX_PEEL = 500


def integrate_x(e):
    """Return F with total_dx(F) == e, or raise NotExact.

    Exactness is prechecked with per-field x-only Euler operators (skipped
    when the formal log symbol is present, since it is not an independent
    field), then F is built by integration by parts on the highest
    x-derivative variable.
    """
    jvs = e.jet_vars()
    if not any(v[1] == "lnu" for v in jvs):
        for field in sorted({(v[1], v[2]) for v in jvs}):
            if not _euler_x_only(e, field).is_zero:
                raise NotExact(
                    f"nonzero variational derivative with respect to {field[0]}")
    r = e
    F = ZERO
    for _ in range(_MAX_PEEL):
        jvs = sorted(r.jet_vars(), key=lambda v: (v[3], v[2], JET_SYMBOLS.index(v[1])))
        if not jvs:
            break
        v = jvs[-1]
        if v[3] == 0:
            raise NotExact("underivated jet variable remains in the integrand")
        if v in _p_vars(r.den):
            raise NotExact("highest-derivative variable occurs in a denominator")
        buckets = r.coeffs_in(v)
        if any(k > 1 for k in buckets):
            raise NotExact("integrand is nonlinear in its highest-derivative variable")
        A = buckets.get(1)
        if A is None or A.is_zero:
            raise NotExact("vanishing leading coefficient")
        n = v[3]
        for vv in A.vars():
            if vv[0] == "j" and vv[3] >= n:
                raise NotExact("leading coefficient is not of lower order")
        w = jet(v[1], n - 1, v[2])
        H = _antiderivative_in_var(A, w)
        F = F + H
        r = r - total_dx(H)
    else:
        raise NotExact("integration by parts did not terminate")
    # remainder depends on x, t, parameters only
    if _X in _p_vars(r.den):
        raise NotExact("remainder has x in a denominator")
    tail = ZERO
    for exp, coeff in r.coeffs_in(_X).items():
        tail = tail + coeff * DiffExpr.var(_X) ** (exp + 1) / (exp + 1)
    F = F + tail
    if total_dx(F) != e:
        raise NotExact("peeling left a non-integrable remainder")
    return F
