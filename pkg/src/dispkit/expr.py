"""Exact rational arithmetic for differential polynomials on jet space.

Variables come in three kinds and are encoded as plain tuples so they can
serve directly as dict keys:

    ("j", sym, t_order, x_order)   jet variable: u, u_x, u_txx, rho_x, ...
    ("c", name)                    a coordinate, x or t
    ("p", name)                    a scalar parameter: eps, a, c, lam, ...

A polynomial is a dict {monomial: Fraction}; a monomial is a sorted tuple of
(variable, positive exponent) pairs.  A DiffExpr is a quotient of two such
polynomials kept in a light canonical form: fully expanded, common monomial
content cancelled, denominator leading coefficient normalized to 1.
Equality is decided by cross-multiplied expansion, never by a gcd.

t-order is capped at 1.  The formal symbol `lnu` stands for ln|u| and
carries no derivative orders of its own (the calculus layer substitutes
D_x lnu = u_x/u).  The parameter `i` is the formal imaginary unit used by
the plane-wave bookkeeping; `reduce_i` folds i^2 -> -1.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, SecondTimeDerivative

JET_SYMBOLS = ("u", "rho", "lnu")
PARAM_NAMES = ("eps", "a", "c", "lam", "k", "omega", "i", "delta")
COORD_NAMES = ("x", "t")

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# variables

def jet(sym, x_order=0, t_order=0):
    """Jet variable for `sym` differentiated t_order times in t, x_order in x."""
    if sym not in JET_SYMBOLS:
        raise ValueError(f"unknown jet symbol {sym!r}")
    if sym == "lnu" and (x_order or t_order):
        raise ValueError("lnu carries no derivative orders of its own")
    if t_order not in (0, 1):
        raise SecondTimeDerivative(
            f"t-order {t_order} requested for {sym}; the algebra caps t-order at 1")
    if x_order < 0:
        raise ValueError("negative x-order")
    return ("j", sym, t_order, x_order)


def coord(name):
    if name not in COORD_NAMES:
        raise ValueError(f"unknown coordinate {name!r}")
    return ("c", name)


def param(name):
    if name not in PARAM_NAMES:
        raise ValueError(f"unknown parameter {name!r}")
    return ("p", name)


def is_jet(v):
    return v[0] == "j"


def var_name(v):
    """Printable (and re-parseable) name of a variable tuple."""
    kind = v[0]
    if kind != "j":
        return v[1]
    _, sym, to, xo = v
    if to == 0 and xo == 0:
        return sym
    suffix = "t" if to else ""
    if xo == 1:
        suffix += "x"
    elif xo == 2:
        suffix += "xx"
    elif xo >= 3:
        suffix += f"{xo}x"
    return f"{sym}_{suffix}"


_NAME_SUFFIX = re.compile(r"^(t)?(?:(\d+)x|(x{1,2}))?$")


def var_from_name(name):
    """Inverse of var_name.  Raises ParseError on unknown names."""
    if name in COORD_NAMES:
        return coord(name)
    if name in PARAM_NAMES:
        return param(name)
    base, _, suffix = name.partition("_")
    if base in JET_SYMBOLS:
        if not suffix and "_" not in name:
            return jet(base)
        m = _NAME_SUFFIX.match(suffix)
        if m and (m.group(1) or m.group(2) or m.group(3)):
            to = 1 if m.group(1) else 0
            if m.group(2):
                xo = int(m.group(2))
            elif m.group(3):
                xo = len(m.group(3))
            else:
                xo = 0
            return jet(base, xo, to)
    raise ParseError(f"unknown name {name!r}")


# ---------------------------------------------------------------------------
# polynomial layer (dict monomial -> Fraction)

def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_key(m):
    return (sum(e for _, e in m), m)


def _p_add_into(acc, p, scale=_ONE):
    for m, c in p.items():
        cs = c * scale
        cur = acc.get(m)
        if cur is None:
            if cs:
                acc[m] = cs
        else:
            cur = cur + cs
            if cur:
                acc[m] = cur
            else:
                del acc[m]
    return acc


def _p_mul(p, q):
    if not p or not q:
        return {}
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            c = c1 * c2
            cur = out.get(m)
            if cur is None:
                out[m] = c
            else:
                cur = cur + c
                if cur:
                    out[m] = cur
                else:
                    del out[m]
    return out


def _p_scale(p, s):
    if not s:
        return {}
    return {m: c * s for m, c in p.items()}


def _p_diff(p, v):
    """Partial derivative of a polynomial with respect to one variable."""
    out = {}
    for m, c in p.items():
        for i, (w, e) in enumerate(m):
            if w == v:
                rest = m[:i] + m[i + 1:]
                if e > 1:
                    rest = _mono_mul(rest, ((w, e - 1),))
                _p_add_into(out, {rest: c * e})
                break
    return out


def _p_vars(p):
    s = set()
    for m in p:
        for v, _ in m:
            s.add(v)
    return s


def _mono_divide(m, div):
    """Divide monomial by {var: exp} dict (must divide exactly)."""
    out = []
    for v, e in m:
        r = e - div.get(v, 0)
        if r:
            out.append((v, r))
    return tuple(out)


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator polynomial")
    if not num:
        return {}, {(): _ONE}
    # common monomial content of numerator and denominator
    def content(keys):
        it = iter(keys)
        acc = dict(next(it))
        for m in it:
            if not acc:
                break
            dm = dict(m)
            for v in list(acc):
                e = dm.get(v, 0)
                if e == 0:
                    del acc[v]
                elif e < acc[v]:
                    acc[v] = e
        return acc

    cn = content(num.keys())
    if cn:
        cd = content(den.keys())
        common = {}
        for v, e in cn.items():
            ed = cd.get(v, 0)
            if ed:
                common[v] = min(e, ed)
        if common:
            num = {_mono_divide(m, common): c for m, c in num.items()}
            den = {_mono_divide(m, common): c for m, c in den.items()}
    lc = den[max(den, key=_mono_key)]
    if lc != 1:
        inv = 1 / lc
        num = _p_scale(num, inv)
        den = _p_scale(den, inv)
    return num, den


# ---------------------------------------------------------------------------
# expression layer

class DiffExpr:
    """Quotient of two expanded jet-space polynomials over Q."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = {(): _ONE}
        self.num, self.den = _normalize(num, den)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(value):
        value = Fraction(value)
        return DiffExpr({(): value} if value else {})

    @staticmethod
    def var(v):
        return DiffExpr({((v, 1),): _ONE})

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_polynomial(self):
        return self.den == {(): _ONE}

    def vars(self):
        return _p_vars(self.num) | _p_vars(self.den)

    def jet_vars(self):
        return {v for v in self.vars() if v[0] == "j"}

    def as_fraction(self):
        """The value as a Fraction if the expression is constant, else None."""
        if self.num and set(self.num) != {()}:
            return None
        if set(self.den) != {()}:
            return None
        return (self.num.get((), _ZERO)) / self.den[()]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return DiffExpr(_p_add_into(dict(self.num), other.num), dict(self.den))
        num = _p_add_into(_p_mul(self.num, other.den), _p_mul(other.num, self.den))
        return DiffExpr(num, _p_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return DiffExpr(_p_scale(self.num, -_ONE), dict(self.den))

    def __sub__(self, other):
        other = as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        return DiffExpr(_p_mul(self.num, other.num), _p_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        return DiffExpr(_p_mul(self.num, other.den), _p_mul(self.den, other.num))

    def __rtruediv__(self, other):
        other = as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            base = DiffExpr(dict(self.den), dict(self.num))
            n = -n
        else:
            base = self
        out = DiffExpr.const(1)
        for _ in range(n):
            out = out * base
        return out

    def __eq__(self, other):
        other = as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return _p_mul(self.num, other.den) == _p_mul(other.num, self.den)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    # -- calculus helpers ---------------------------------------------------

    def diff_var(self, v):
        """Partial derivative with respect to a single variable (quotient rule)."""
        dn = _p_diff(self.num, v)
        if self.is_polynomial:
            return DiffExpr(dn)
        dd = _p_diff(self.den, v)
        if not dd:
            return DiffExpr(dn, dict(self.den))
        num = _p_add_into(_p_mul(dn, self.den), _p_mul(self.num, dd), -_ONE)
        return DiffExpr(num, _p_mul(self.den, self.den))

    def coeffs_in(self, v):
        """Split into {exponent of v: DiffExpr coefficient}; v must not occur
        in the denominator."""
        if v in _p_vars(self.den):
            raise ValueError(f"{var_name(v)} occurs in the denominator")
        buckets = {}
        for m, c in self.num.items():
            e = 0
            rest = m
            for idx, (w, we) in enumerate(m):
                if w == v:
                    e = we
                    rest = m[:idx] + m[idx + 1:]
                    break
            buckets.setdefault(e, {})[rest] = c
        den = dict(self.den)
        return {e: DiffExpr(p, dict(den)) for e, p in buckets.items()}

    def subs(self, mapping):
        """Substitute variables by expressions (or numbers)."""
        mp = {v: as_expr(val) for v, val in mapping.items()}

        def eval_poly(p):
            plain = {}
            acc = None
            for m, c in p.items():
                if not any(v in mp for v, _ in m):
                    plain[m] = c
                    continue
                term = DiffExpr.const(c)
                for v, e in m:
                    repl = mp.get(v)
                    term = term * (repl ** e if repl is not None
                                   else DiffExpr({((v, e),): _ONE}))
                acc = term if acc is None else acc + term
            plain_expr = DiffExpr(plain)
            return plain_expr if acc is None else acc + plain_expr

        return eval_poly(self.num) / eval_poly(self.den)

    def subs_params(self, **values):
        return self.subs({param(name): Fraction(v) for name, v in values.items()})

    def evalf(self, env):
        """Numeric evaluation; env maps variable tuples to floats/arrays."""
        def poly_val(p):
            total = 0.0
            for m, c in p.items():
                term = float(c)
                for v, e in m:
                    term = term * env[v] ** e
                total = total + term
            return total

        return poly_val(self.num) / poly_val(self.den)

    # -- text ---------------------------------------------------------------

    def __repr__(self):
        return f"DiffExpr({to_text(self)})"

    def __str__(self):
        return to_text(self)


def as_expr(obj):
    if isinstance(obj, DiffExpr):
        return obj
    if isinstance(obj, (int, Fraction)):
        return DiffExpr.const(obj)
    return NotImplemented


def reduce_i(e):
    """Fold powers of the formal imaginary unit: i^2 -> -1."""
    iv = param("i")

    def fold(p):
        out = {}
        for m, c in p.items():
            d = dict(m)
            e_i = d.pop(iv, 0)
            if e_i >= 2:
                c = c * (-1) ** (e_i // 2)
                e_i = e_i % 2
            if e_i:
                d[iv] = e_i
            _p_add_into(out, {tuple(sorted(d.items())): c})
        return out

    return DiffExpr(fold(e.num), fold(e.den))


# ---------------------------------------------------------------------------
# convenient atoms

ZERO = DiffExpr.const(0)
ONE = DiffExpr.const(1)

X = DiffExpr.var(coord("x"))
T = DiffExpr.var(coord("t"))
U = DiffExpr.var(jet("u"))
UX = DiffExpr.var(jet("u", 1))
UXX = DiffExpr.var(jet("u", 2))
U3X = DiffExpr.var(jet("u", 3))
UT = DiffExpr.var(jet("u", 0, 1))
RHO = DiffExpr.var(jet("rho"))
LNU = DiffExpr.var(jet("lnu"))
EPS = DiffExpr.var(param("eps"))
A = DiffExpr.var(param("a"))
C = DiffExpr.var(param("c"))
LAM = DiffExpr.var(param("lam"))
KSYM = DiffExpr.var(param("k"))
OMEGA = DiffExpr.var(param("omega"))
IUNIT = DiffExpr.var(param("i"))


def jet_expr(sym, x_order=0, t_order=0):
    return DiffExpr.var(jet(sym, x_order, t_order))


# ---------------------------------------------------------------------------
# printer

def _poly_text(p):
    if not p:
        return "0"
    pieces = []
    for m in sorted(p, key=_mono_key, reverse=True):
        c = p[m]
        factors = []
        for v, e in sorted(m, key=lambda t: var_name(t[0])):
            factors.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    text = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def to_text(e):
    """Render an expression; parse(to_text(e)) == e."""
    num = _poly_text(e.num)
    if e.is_polynomial:
        return num
    return f"({num})/({_poly_text(e.den)})"


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*(?:_[A-Za-z0-9]+)?)|(\*\*|[()+\-*/^]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"cannot tokenize {text[pos:]!r}")
            break
        if m.group(1):
            out.append(("num", m.group(1)))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def parse_expr(self):
        e = self.parse_term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.parse_term()
                e = e + rhs if val == "+" else e - rhs
            else:
                return e

    def parse_term(self):
        e = self.parse_factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.parse_factor()
                e = e * rhs if val == "*" else e / rhs
            else:
                return e

    def parse_factor(self):
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.parse_factor()
        if kind == "op" and val == "+":
            self.take()
            return self.parse_factor()
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            return base ** self.parse_exponent()
        return base

    def parse_exponent(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val == "(":
            self.take()
            n = self.parse_exponent()
            self.expect_op(")")
            return n
        if kind == "op" and val == "-":
            self.take()
            sign = -1
            kind, val = self.peek()
        if kind != "num":
            raise ParseError("exponent must be an integer")
        self.take()
        return sign * int(val)

    def parse_atom(self):
        kind, val = self.take()
        if kind == "num":
            return DiffExpr.const(int(val))
        if kind == "name":
            return DiffExpr.var(var_from_name(val))
        if kind == "op" and val == "(":
            e = self.parse_expr()
            self.expect_op(")")
            return e
        raise ParseError(f"unexpected token {val!r}")


def parse(text):
    """Parse expression text into a DiffExpr.

    Syntax: names like u, u_x, u_xx, u_3x, u_t, u_tx, u_t2x, rho, rho_x, lnu,
    the coordinates x and t, parameters eps, a, c, lam (and k, omega, i),
    integer literals, rationals via /, and the operators + - * / ^.
    """
    p = _Parser(_tokenize(text))
    e = p.parse_expr()
    kind, val = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input at {val!r}")
    return e
