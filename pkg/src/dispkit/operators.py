"""Integrability structures: recursion operators, symmetry and conservation
checks, the conserved-density hierarchy, zero-curvature matrices, the
third-order integrability test and the plane-wave dispersion identity.

Everything is exact.  The check suites at the bottom return CheckRecord
lists so the command line can render uniform reports.  Where the source
formulas are suspected of typographic damage, the suites test the printed
form first and then nearby corrections, reporting which verifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .calculus import (
    EvolutionRule,
    euler_operator,
    frechet,
    integrate_x,
    substitute_tders,
    total_dt,
    total_dx,
    total_dx_n,
)
from .equations import EquationSpec, family
from .errors import NotExact
from .expr import (
    A,
    DiffExpr,
    EPS,
    IUNIT,
    KSYM,
    LAM,
    OMEGA,
    ONE,
    U,
    UT,
    UX,
    UXX,
    U3X,
    ZERO,
    jet,
    parse,
    reduce_i,
    to_text,
)

# ---------------------------------------------------------------------------
# pseudo-differential operators


@dataclass(frozen=True)
class PseudoDiffOp:
    """Sum of coeff*D_x^power terms plus at most one nonlocal term of the
    shape left_mul * D_x^{-1} (factor * .)."""

    name: str
    terms: tuple
    nonlocal_term: tuple | None = None

    def __repr__(self):
        bits = [f"({c})*D^{p}" if p else f"({c})" for c, p in self.terms]
        if self.nonlocal_term:
            l, f = self.nonlocal_term
            bits.append(f"({l})*Dinv*(({f})*.)")
        return f"PseudoDiffOp[{self.name}: " + " + ".join(bits) + "]"


def apply_op(R, Q):
    """Apply a pseudo-differential operator to an expression.

    The nonlocal piece goes through integrate_x, so a NotExact escape means
    the hierarchy left the local algebra on this input.
    """
    max_pow = max((p for _, p in R.terms), default=0)
    dq = [Q]
    for _ in range(max_pow):
        dq.append(total_dx(dq[-1]))
    out = ZERO
    for coeff, p in R.terms:
        out = out + coeff * dq[p]
    if R.nonlocal_term is not None:
        left, factor = R.nonlocal_term
        out = out + left * integrate_x(factor * Q)
    return out


def r_minus():
    """Recursion operator of the third-order flow with the +3 u_x u_xx / u
    nonlinearity: D^2 + 2 u^-1 u_x D + u^-1 u_xx."""
    return PseudoDiffOp(
        "r_minus",
        ((ONE, 2), (2 * UX / U, 1), (UXX / U, 0)),
    )


def r_plus(variant="derived"):
    """Recursion operator candidates for the -3 u_x u_xx / u flow.

    variant: "printed" is the typeset form (zeroth-order tail +u^-2 u_x and
    unit nonlocal weight); "corrected" patches the anomalous tail to
    u^-2 u_x^2; "derived" is the operator produced by expanding the factored
    ansatz (D + f u_x + 2 u_x D^-1 h u_x)(D + f u_x) with f = -1/u and
    h = -2 u^-2, which has tail -2 u^-2 u_x^2 and nonlocal weight 4.
    """
    base = ((ONE, 2), (-2 * UX / U, 1), (-UXX / U, 0))
    integrand = UXX / U ** 2 - UX ** 2 / U ** 3
    if variant == "printed":
        tail = UX / U ** 2
        nl = (UX, integrand)
    elif variant == "corrected":
        tail = UX ** 2 / U ** 2
        nl = (UX, integrand)
    elif variant == "derived":
        tail = -2 * UX ** 2 / U ** 2
        nl = (4 * UX, integrand)
    else:
        raise ValueError(f"unknown r_plus variant {variant!r}")
    return PseudoDiffOp(f"r_plus[{variant}]", base + ((tail, 0),), nl)


# ---------------------------------------------------------------------------
# symmetry and conservation checks


def check_symmetry(eq, Q):
    """Residual of the symmetry condition D_t Q = K_*[Q] on solutions.

    Q may contain t-derivatives (they are substituted through the rule
    first); zero residual means Q generates a symmetry.
    """
    Qs = substitute_tders(Q, eq.rules)
    return total_dt(Qs, eq.rules) - frechet(eq.rhs, Qs)


def check_conservation(density, flux, rules):
    """Residual D_t density + D_x flux, both taken modulo the rules."""
    return total_dt(density, rules) + substitute_tders(total_dx(flux), rules)


def log_density_check(density, flux, rules):
    """Divergence check for rows whose density involves ln|u|.

    The algebra already carries the formal log symbol with D_x lnu = u_x/u
    and D_t lnu = u_t/u, so this is the plain divergence residual; the
    separate name documents that the check runs in the extended algebra.
    """
    return check_conservation(density, flux, rules)


# ---------------------------------------------------------------------------
# conserved-density hierarchy


_V3_GENERATOR = parse("3*t*u_t + x*u_x")


def hierarchy_density(n):
    """u^3 * R^n (3t u_t + x u_x) with u_t kept formal, R the local
    recursion operator of the +3 u_x u_xx / u flow."""
    if not 0 <= n <= 6:
        raise ValueError("hierarchy index out of the supported range")
    R = r_minus()
    Q = _V3_GENERATOR
    for _ in range(n):
        Q = apply_op(R, Q)
    return U ** 3 * Q


# ---------------------------------------------------------------------------
# zero curvature


def _w():
    return UXX / U


def zero_curvature_pair(printed=False):
    """The 2x2 matrices (U, V) of the spectral/temporal linear problem.

    printed=True reproduces the typeset V verbatim; the default corrects
    the (1,2) entry's sign (the typeset 2w - 4*lam does not satisfy the
    temporal equation; deriving phi_t = B phi in the (phi, phi_x) basis
    gives -2w - 4*lam).
    """
    w = _w()
    wx = total_dx(w)
    wxx = total_dx(wx)
    lam = LAM
    Umat = ((ZERO, ONE), (w - lam, ZERO))
    v12 = (2 * w - 4 * lam) if printed else (-2 * w - 4 * lam)
    # the typeset (2,1) entry w_xx + 6(lam-w)w + 4(lam-w)^2 expands to the
    # same polynomial as w_xx + (-2w-4lam)(w-lam)
    v21 = wxx + (-2 * w - 4 * lam) * (w - lam)
    Vmat = ((wx, v12), (v21, -wx))
    return Umat, Vmat


def zero_curvature_residual(Umat, Vmat):
    """Entrywise U_t - V_x + [U, V] with u_t kept formal."""
    def dt(e):
        return total_dt(e, formal=True)

    def dx(e):
        return total_dx(e)

    def matmul(Amat, Bmat):
        return tuple(
            tuple(
                sum((Amat[i][k] * Bmat[k][j] for k in range(2)), ZERO)
                for j in range(2)
            )
            for i in range(2)
        )

    UV = matmul(Umat, Vmat)
    VU = matmul(Vmat, Umat)
    return tuple(
        tuple(
            dt(Umat[i][j]) - dx(Vmat[i][j]) + UV[i][j] - VU[i][j]
            for j in range(2)
        )
        for i in range(2)
    )


def miura_factorization():
    """(u^-1 D_x^2 - u_xx u^-2) applied to (u_t + 3 u_x u_xx / u - u_xxx);
    the claim is that this equals the (2,1) zero-curvature residual."""
    G = UT + 3 * UX * UXX / U - U3X
    return total_dx_n(G, 2) / U - (UXX / U ** 2) * G


# ---------------------------------------------------------------------------
# integrability test for u_t = u_xxx + F(x, u, u_x, u_xx)


@dataclass
class MikhailovReport:
    equation: str
    conditions: list
    passed: bool
    sigmas: list

    def condition_status(self):
        return [ok for _, ok in self.conditions]


def mikhailov_test(eq):
    """Exactness test of the four compatibility conditions for equations
    of the shape u_t = u_xxx + F(x, u, u_x, u_xx).

    Each left-hand side must be a total x-derivative; the sigmas returned
    are the integrals when they exist (None otherwise).
    """
    F = eq.rhs - U3X
    for v in F.jet_vars():
        if v[1] != "u" or v[2] != 0 or v[3] > 2:
            raise ValueError(
                "integrability test requires u_t = u_xxx + F(x,u,u_x,u_xx)")
    rules = (EvolutionRule("u", eq.rhs),)
    dF_uxx = F.diff_var(jet("u", 2))
    dF_ux = F.diff_var(jet("u", 1))
    dF_u = F.diff_var(jet("u"))

    lhs = []
    sigmas = []
    conditions = []

    def attempt(name, e):
        try:
            s = integrate_x(e)
            ok = True
        except NotExact:
            s = None
            ok = False
        lhs.append(e)
        sigmas.append(s)
        conditions.append((name, ok))
        return s

    s1 = attempt("condition1", total_dt(dF_uxx, rules))
    attempt("condition2", total_dt(3 * dF_ux - dF_uxx ** 2, rules))
    if s1 is not None:
        third = 9 * s1 + 2 * dF_uxx ** 3 - 9 * dF_uxx * dF_ux + 27 * dF_u
        attempt("condition3", total_dt(third, rules))
    else:
        conditions.append(("condition3", False))
        sigmas.append(None)
    s2 = sigmas[1]
    if s2 is not None:
        attempt("condition4", total_dt(s2, rules))
    else:
        conditions.append(("condition4", False))
        sigmas.append(None)
    passed = all(ok for _, ok in conditions)
    return MikhailovReport(eq.name, conditions, passed, sigmas)


# ---------------------------------------------------------------------------
# dispersion


def plane_wave_image(e):
    """Map every u-jet through the plane-wave ansatz: an n-th x-derivative
    contributes (i k)^n and a t-derivative contributes (-i omega), with a
    surviving amplitude factor u; i is folded via i^2 = -1."""
    mapping = {}
    for v in e.jet_vars():
        if v[1] != "u":
            raise ValueError("plane-wave substitution expects u-jets only")
        m, n = v[2], v[3]
        img = IUNIT ** (n + m) * OMEGA ** m * KSYM ** n * U
        if m % 2:
            img = -img
        mapping[v] = img
    return reduce_i(e.subs(mapping))


def dispersion_residual(eps=None, a=None):
    """Residual of the claim omega = (eps - 2) a k^3 for plane waves.

    Returns the canonical difference between the substituted equation and
    -i u (omega - (eps-2) a k^3); zero means the relation is exactly the
    solvability condition.
    """
    eq = family(eps, a, with_rho=False)
    lhs = UT - eq.rhs
    pw = plane_wave_image(lhs)
    eps_e = EPS if eps is None else DiffExpr.const(Fraction(eps))
    a_e = A if a is None else DiffExpr.const(Fraction(a))
    target = -IUNIT * U * (OMEGA - (eps_e - 2) * a_e * KSYM ** 3)
    return reduce_i(pw - target)


def dispersion_omega(eps, a, k):
    """Numeric omega for a fixed member: (eps-2) a k^3 as an exact Fraction."""
    return (Fraction(eps) - 2) * Fraction(a) * Fraction(k) ** 3


# ---------------------------------------------------------------------------
# check records and suites


@dataclass
class CheckRecord:
    check_id: str
    status: str  # pass | fail | typo-suspect | info
    residual: str
    note: str = ""

    def line(self):
        tail = f"  [{self.note}]" if self.note else ""
        return f"{self.check_id}: {self.status} (residual {self.residual}){tail}"


def _record(check_id, residual, note=""):
    return CheckRecord(
        check_id,
        "pass" if residual.is_zero else "fail",
        to_text(residual) if not residual.is_zero else "0",
        note,
    )


def _typo_record(check_id, printed_residual, corrections, rules, density):
    """Try corrected fluxes in order; report the first that verifies."""
    for label, flux in corrections:
        res = check_conservation(density, flux, rules)
        if res.is_zero:
            return CheckRecord(
                check_id, "typo-suspect", "0",
                f"printed flux fails; corrected variant verifies: {label}")
    return CheckRecord(
        check_id, "fail", to_text(printed_residual),
        "printed flux fails and no tested correction verifies")


TABLE1_ROW1_C0 = "u^2"
TABLE1_ROW1_C1 = "(2+eps)*a*u_x^2 - 2*eps*a*u*u_xx"

TABLE1_LOG_ROWS = (
    # (id, eps, C0, C1)
    ("table1.eps=-2.v3", Fraction(-2), "2*u^2*lnu - u^2",
     "8*a*u*lnu*u_xx - 4*a*u_x^2"),
    ("table1.eps=-2.v4", Fraction(-2), "u^2*lnu",
     "-2*a*u_x^2 + 2*a*u*u_xx + 4*a*u*lnu*u_xx"),
    ("table1.eps=2.v3", Fraction(2), "lnu", "-2*a*u_xx/u"),
)

TABLE1_RHO_ROWS = (
    ("table1.eps=-2/3.v1", "rho_x*u^2",
     "-rho_t*u^2 + 4/3*rho_x*u_x^2 - 4/3*a*rho_xx*u*u_x + 4/3*a*rho_x*u*u_xx",
     (("a inserted in the rho_x*u_x^2 term",
       "-rho_t*u^2 + 4/3*a*rho_x*u_x^2 - 4/3*a*rho_xx*u*u_x + 4/3*a*rho_x*u*u_xx"),)),
    ("table1.eps=-2/3.v2", "rho_3x*u^2",
     None,  # the typeset flux contains the unreadable token u^2_x2
     (("unreadable token read as -2*rho_t*u_x^2",
       "-2*rho_t*u_x^2 - 2*rho_t*u*u_xx + 2*rho_tx*u*u_x - rho_txx*u^2"),)),
    ("table1.eps=-2/3.v4", "rho*u^2",
     "-4/3*a*rho_x*u*u_x + 4/3*a*rho*u_x^2 + 2/3*a*rho_xx*u^2 + 4/3*a*rho*u*u_xx",
     ()),
)

TABLE2_PRINTED = {
    1: ("2*u^3*u_xx + 3*t*u^3*u_txx + x*u^3*u_3x + 2*u^2*u_x^2"
        " + 6*t*u^2*u_x*u_tx + 3*t*u^2*u_t*u_xx + 3*x*u^2*u_x*u_xx"),
    2: ("4*u^3*u_4x + 3*t*u^3*u_t4x + x*u^3*u_5x + 12*u^2*u_xx^2"
        " + 18*t*u^2*u_xx*u_txx + 16*u^2*u_x*u_3x + 12*t*u^2*u_tx*u_3x"
        " + 10*x*u^2*u_xx*u_3x + 12*t*u^2*u_x*u_t3x + 3*t*u^2*u_t*u_t4x"
        " + 5*x*u^2*u_x*u_4x"),
    3: ("6*u^3*u_6x + 3*t*u^3*u_t6x + x*u^3*u_7x + 60*u^2*u_3x^2"
        " + 60*t*u^2*u_3x*u_t3x + 90*u^2*u_xx*u_4x + 45*t*u^2*u_txx*u_4x"
        " + 35*x*u^2*u_3x*u_4x + 45*t*u^2*u_xx*u_t4x + 36*u^2*u_x*u_5x"
        " + 18*t*u^2*u_tx*u_5x + 21*x*u^2*u_xx*u_5x + 18*t*u^2*u_x*u_t5x"
        " + 3*t*u^2*u_t*u_6x + 7*x*u^2*u_x*u_6x"),
    4: ("8*u^3*u_8x + 3*t*u^3*u_t8x + x*u^3*u_9x + 280*u^2*u_4x^2"
        " + 210*t*u^2*u_4x*u_t4x + 448*u^2*u_3x*u_5x + 168*t*u^2*u_t3x*u_5x"
        " + 126*x*u^2*u_4x*u_5x + 168*t*u^2*u_3x*u_t5x + 224*u^2*u_xx*u_6x"
        " + 84*t*u^2*u_txx*u_6x + 84*x*u^2*u_3x*u_6x + 84*t*u^2*u_xx*u_t6x"
        " + 64*u^2*u_x*u_7x + 24*t*u^2*u_tx*u_7x + 36*x*u^2*u_xx*u_7x"
        " + 24*t*u^2*u_x*u_t7x + 3*t*u^2*u_t*u_8x + 9*x*u^2*u_x*u_8x"),
}

# the n=2 row as typeset contains 3t u^2 u_t u_{t,4x}, which is quadratic in
# t-derivatives and cannot arise from the construction (linear in u_t);
# the plausible intent, matching the n=1,3,4 pattern, is 3t u^2 u_t u_4x
TABLE2_N2_CORRECTED = TABLE2_PRINTED[2].replace("3*t*u^2*u_t*u_t4x",
                                                "3*t*u^2*u_t*u_4x")

TABLE2_EULER = {
    1: "-4*u*(u_x^2 + u*u_xx)",
    2: "0",
    3: "4*u*(10*u_3x^2 + 15*u_xx*u_4x + 6*u_x*u_5x + u*u_6x)",
    4: "8*u*(35*u_4x^2 + 56*u_3x*u_5x + 28*u_xx*u_6x) + 8*u*(8*u_x*u_7x + u*u_8x)",
}


def run_table1():
    records = []
    # row 1, fully symbolic eps and a
    eq = family()
    res = check_conservation(parse(TABLE1_ROW1_C0), parse(TABLE1_ROW1_C1), eq.rules)
    records.append(_record("table1.row1[symbolic eps]", res))
    # row 2 at rational eps giving integer exponents
    for eps in (Fraction(-2), Fraction(-2, 3), Fraction(2, 5)):
        p = (eps - 2) / eps
        q = Fraction(-2) / eps
        assert p.denominator == 1 and q.denominator == 1
        c0 = U ** int(p)
        c1 = (2 - eps) * A * U ** int(q) * UXX
        res = check_conservation(c0, c1, family(eps).rules)
        records.append(_record(f"table1.row2[eps={eps}]", res))
    # logarithmic rows
    for check_id, eps, c0, c1 in TABLE1_LOG_ROWS:
        res = log_density_check(parse(c0), parse(c1), family(eps).rules)
        records.append(_record(check_id, res))
    # weighted rows at eps=-2/3 with the auxiliary linear flow
    rules = family(Fraction(-2, 3)).rules
    for check_id, c0, c1, corrections in TABLE1_RHO_ROWS:
        density = parse(c0)
        if c1 is not None:
            res = check_conservation(density, parse(c1), rules)
            if res.is_zero:
                records.append(_record(check_id, res))
                continue
        else:
            res = ONE  # placeholder nonzero residual: flux is unreadable
        records.append(_typo_record(
            check_id, res,
            [(label, parse(text)) for label, text in corrections],
            rules, density))
    return records


def run_table2():
    records = []
    for n in (1, 2, 3, 4):
        computed = hierarchy_density(n)
        printed = parse(TABLE2_PRINTED[n])
        if computed == printed:
            records.append(CheckRecord(f"table2.n={n}.density", "pass", "0"))
        elif n == 2 and computed == parse(TABLE2_N2_CORRECTED):
            records.append(CheckRecord(
                f"table2.n={n}.density", "typo-suspect", "0",
                "printed term 3t u^2 u_t u_t4x is quadratic in t-derivatives;"
                " computed density matches with u_t4x read as u_4x"))
        else:
            records.append(CheckRecord(
                f"table2.n={n}.density", "fail",
                to_text(computed - printed)))
        delta = euler_operator(computed)
        res = delta - parse(TABLE2_EULER[n])
        records.append(_record(f"table2.n={n}.euler", res))
    return records


def run_lax():
    records = []
    Umat, Vmat = zero_curvature_pair()
    R = zero_curvature_residual(Umat, Vmat)
    for (i, j) in ((0, 0), (0, 1), (1, 1)):
        records.append(_record(f"lax.zero-entry({i + 1},{j + 1})", R[i][j]))
    records.append(_record("lax.factorization(2,1)",
                           R[1][0] - miura_factorization()))
    # residual vanishes on solutions of the eps=2/3, eps*a=1 member
    member = family(Fraction(2, 3), Fraction(3, 2), with_rho=False)
    on_shell = substitute_tders(R[1][0], member.rules)
    records.append(_record("lax.on-shell(2,1)", on_shell))
    # typeset V has the (1,2) sign slip; document it
    Up, Vp = zero_curvature_pair(printed=True)
    Rp = zero_curvature_residual(Up, Vp)
    if not Rp[0][0].is_zero and R[0][0].is_zero:
        records.append(CheckRecord(
            "lax.printed-V12", "typo-suspect", to_text(Rp[0][0]),
            "typeset entry 2w-4lam breaks the (1,1) identity;"
            " -2w-4lam verifies"))
    else:
        records.append(_record("lax.printed-V12", Rp[0][0]))
    return records


def run_recursion():
    records = []
    sidv = family(Fraction(-2, 3), Fraction(-3, 2), with_rho=False)
    Rm = r_minus()
    # the first application must reproduce the equation's own flow
    flow1 = apply_op(Rm, UX)
    records.append(_record("recursion.r_minus(u_x)=rhs", flow1 - sidv.rhs))
    # two further hierarchy members must be symmetries
    Q = flow1
    for k in (2, 3):
        Q = apply_op(Rm, Q)
        res = check_symmetry(sidv, Q)
        records.append(_record(f"recursion.flow{k * 2 + 1}x-symmetry", res,
                               note=f"order {2 * k + 1} flow"))
    # candidate forms of the positive-case operator.  Which candidate is
    # right is reported, never asserted: every row is informational and
    # the verdict lives in the note.
    plus_eq = family(Fraction(2, 3), Fraction(3, 2), with_rho=False)
    for variant in ("printed", "corrected", "derived"):
        Rp = r_plus(variant)
        try:
            img = apply_op(Rp, UX)
            res = check_symmetry(plus_eq, img)
            if res.is_zero:
                note = "verifies: maps u_x to the equation's own flow" \
                    if img == plus_eq.rhs else "verifies: image is a symmetry"
            else:
                note = f"does not verify; image: {to_text(img)}"
            records.append(CheckRecord(
                f"recursion.r_plus[{variant}](u_x)", "info",
                "0" if res.is_zero else to_text(res), note))
        except NotExact as exc:
            records.append(CheckRecord(
                f"recursion.r_plus[{variant}](u_x)", "info", "nonlocal",
                f"does not verify; nonlocal term failed to localize: {exc}"))
    # second application of the verified form (informational)
    try:
        Rp = r_plus("derived")
        Q5 = apply_op(Rp, apply_op(Rp, UX))
        res = check_symmetry(plus_eq, Q5)
        records.append(CheckRecord(
            "recursion.r_plus[derived]^2(u_x)", "info",
            "0" if res.is_zero else to_text(res),
            "verifies: order 5 flow is a symmetry" if res.is_zero
            else "does not verify"))
    except NotExact as exc:
        records.append(CheckRecord(
            "recursion.r_plus[derived]^2(u_x)", "info", "nonlocal",
            f"does not verify: {exc}"))
    return records


def run_mikhailov():
    records = []
    # the -2/3 case with eps*a = 1
    eq = family(Fraction(-2, 3), Fraction(-3, 2), with_rho=False)
    rep = mikhailov_test(eq)
    for (name, ok), sigma in zip(rep.conditions, rep.sigmas):
        records.append(CheckRecord(
            f"mikhailov.eps=-2/3.{name}", "pass" if ok else "fail",
            "0" if ok else "not exact"))
    # the sigmas quoted for this case: sigma1 = Dt(3 ln u) etc.
    K = eq.rhs
    rules = eq.rules
    ku = K / U
    sigma_paper = [
        3 * ku,
        9 * total_dx(ku),
        27 * total_dx_n(ku, 2),
        9 * total_dt(ku, rules),
    ]
    for idx, (sp, lhs_sigma) in enumerate(zip(sigma_paper, rep.sigmas), start=1):
        if lhs_sigma is None:
            records.append(CheckRecord(
                f"mikhailov.eps=-2/3.sigma{idx}", "fail", "missing"))
            continue
        # quoted sigma must integrate the same left-hand side
        res = total_dx(sp) - total_dx(lhs_sigma)
        records.append(_record(f"mikhailov.eps=-2/3.sigma{idx}", res,
                               note="quoted sigma matches up to a constant"))
    # the mirror case (informational; the source does not state the outcome)
    eq_plus = family(Fraction(2, 3), Fraction(3, 2), with_rho=False)
    rep_plus = mikhailov_test(eq_plus)
    records.append(CheckRecord(
        "mikhailov.eps=2/3.exactness", "pass" if rep_plus.passed else "fail",
        "all exact" if rep_plus.passed else
        "; ".join(name for name, ok in rep_plus.conditions if not ok),
        "informational: outcome not asserted by the source"))
    # the linear equation passes trivially
    airy_eq = EquationSpec("airy-flow", U3X)
    rep_lin = mikhailov_test(airy_eq)
    records.append(CheckRecord(
        "mikhailov.linear", "pass" if rep_lin.passed else "fail",
        "0" if rep_lin.passed else "unexpected"))
    return records


def run_dispersion():
    records = []
    records.append(_record("dispersion.symbolic", dispersion_residual()))
    records.append(_record("dispersion.eps=2.stationary",
                           dispersion_residual(eps=Fraction(2))))
    w = dispersion_omega(2, 1, 1)
    records.append(CheckRecord(
        "dispersion.eps=2.omega", "pass" if w == 0 else "fail", str(w),
        "plane waves reduce to stationary profiles"))
    w0 = dispersion_omega(0, 1, 1)
    records.append(CheckRecord(
        "dispersion.eps=0.omega(k=1)", "pass" if w0 == -2 else "fail", str(w0)))
    # odd in k: omega(-k) = -omega(k) for the symbolic law
    law = (EPS - 2) * A * KSYM ** 3
    odd = law.subs({("p", "k"): -KSYM}) + law
    records.append(_record("dispersion.odd-in-k", odd))
    return records


SUITES = {
    "table1": run_table1,
    "table2": run_table2,
    "lax": run_lax,
    "recursion": run_recursion,
    "mikhailov": run_mikhailov,
    "dispersion": run_dispersion,
}
