"""Polynomials in k[x,y], rational functions in k(x,y), and the operator
actions (shift, q-shift, y-shift, d/dy and their difference forms).

Values are immutable; every operation returns a fresh canonicalized object.
Canonical form: over Q the numerator and denominator are integer polynomials
with coprime contents and positive leading denominator coefficient (lex
order y > x); over Q(q) and Q(zeta_m) the denominator is monic instead.
"""

from dataclasses import dataclass

import sympy as sp

from .errors import QModeMismatch, ZeroDenominator
from .qmodes import PLAIN, TRANSCENDENTAL, QMode, q, x, y


def _cancel(expr, mode):
    ext = mode.extension
    if ext is not None:
        return sp.cancel(expr, extension=ext)
    return sp.cancel(expr)


def _reduce_ground(expr, mode):
    """Expand a polynomial expression, reducing coefficients in the ground
    field (in particular mod the cyclotomic relation when q = zeta_m)."""
    if expr == 0:
        return sp.Integer(0)
    if mode.coeff_domain() == sp.QQ:
        # rational coefficients: plain expansion is exact and cheap
        e = sp.expand(expr)
        return sp.Integer(0) if e == 0 else e
    p = sp.Poly(expr, x, y, domain=mode.coeff_domain())
    return sp.Integer(0) if p.is_zero else p.as_expr()


class BiPoly:
    """A polynomial in k[x, y] (either variable may be absent)."""

    __slots__ = ("expr", "mode")

    def __init__(self, expr, mode, _normalized=False):
        if not _normalized:
            expr = _reduce_ground(sp.together(sp.sympify(expr)), mode)
        object.__setattr__(self, "expr", expr)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *a):
        raise AttributeError("BiPoly is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self):
        return self.expr == 0

    def degree(self, var):
        if self.is_zero:
            return -sp.oo
        p = sp.Poly(self.expr, var, *(v for v in (x, y) if v != var))
        return p.degree(var)

    def total_degree(self):
        if self.is_zero:
            return -sp.oo
        return sp.Poly(self.expr, x, y).total_degree()

    def as_poly(self, *gens, **kwargs):
        return sp.Poly(self.expr, *gens, **kwargs)

    def free_of(self, var):
        return var not in self.expr.free_symbols

    # -- arithmetic ----------------------------------------------------

    def _lift(self, other):
        if isinstance(other, BiPoly):
            return other
        return BiPoly(other, self.mode)

    def __add__(self, other):
        return BiPoly(self.expr + self._lift(other).expr, self.mode)

    __radd__ = __add__

    def __sub__(self, other):
        return BiPoly(self.expr - self._lift(other).expr, self.mode)

    def __neg__(self):
        return BiPoly(-self.expr, self.mode)

    def __mul__(self, other):
        return BiPoly(self.expr * self._lift(other).expr, self.mode)

    __rmul__ = __mul__

    def __pow__(self, n):
        return BiPoly(self.expr ** int(n), self.mode)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly(other, self.mode)
        return BiPoly(self.expr - other.expr, self.mode).is_zero

    def __hash__(self):
        return hash(sp.srepr(self.expr))

    def __repr__(self):
        return "BiPoly(%s)" % self.expr

    def divides(self, other):
        """Exact divisibility in k[x, y]."""
        if self.is_zero:
            return other.is_zero
        r = _cancel(other.expr / self.expr, self.mode)
        return not r.as_numer_denom()[1].free_symbols & {x, y}

    def exact_div(self, other):
        """self / other, which must divide exactly."""
        r = _cancel(self.expr / self._lift(other).expr, self.mode)
        num, den = r.as_numer_denom()
        if den.free_symbols & {x, y}:
            raise ValueError("inexact polynomial division")
        return BiPoly(r, self.mode)

    # -- canonical normalization --------------------------------------

    def leading_unit(self):
        """Scalar u in k* such that self/u is canonical (primitive with
        positive leading coefficient over Q, monic otherwise)."""
        if self.is_zero:
            return sp.Integer(1)
        mode = self.mode
        p = sp.Poly(self.expr, y, x, domain=mode.coeff_domain())
        if mode.coeff_domain() == sp.QQ:
            # integer-primitive with positive leading coefficient
            cont = sp.Integer(0)
            for c in p.coeffs():
                cont = sp.gcd(cont, sp.Rational(c))
            lc = p.LC()
            return cont if lc > 0 else -cont
        return p.LC()

    def canonical(self):
        """(unit, primitive) with self = unit * primitive."""
        if self.is_zero:
            return sp.Integer(1), self
        u = self.leading_unit()
        prim = BiPoly(_cancel(self.expr / u, self.mode), self.mode)
        return u, prim

    # -- operator actions ---------------------------------------------

    def shift(self, var, n):
        return BiPoly(self.expr.subs(var, var + n), self.mode)

    def qshift_x(self, n):
        qv = self.mode.q_value
        return BiPoly(self.expr.subs(x, qv ** int(n) * x), self.mode)


class RatFunc:
    """A rational function in k(x, y), stored as a reduced canonical
    numerator/denominator pair of BiPolys."""

    __slots__ = ("num", "den", "mode")

    def __init__(self, expr, mode, _parts=None):
        if _parts is not None:
            # internal fast path: n, d polynomial over the ground field,
            # cancelled at the Poly level instead of via expression rewriting
            n, d = _parts
            try:
                n, d = self._poly_cancel(n, d, mode)
            except (sp.PolynomialError,
                    sp.polys.polyerrors.CoercionFailed,
                    sp.polys.polyerrors.GeneratorsError):
                if d == 0:
                    raise ZeroDenominator("denominator is zero")
                expr = _cancel(sp.together(n / d), mode)
                n, d = expr.as_numer_denom()
        else:
            expr = _cancel(sp.together(sp.sympify(expr)), mode)
            n, d = expr.as_numer_denom()
        if mode.coeff_domain() == sp.QQ:
            np_, dp = self._normalize_qq(n, d, mode, (y, x))
        elif mode.kind == TRANSCENDENTAL:
            # store integer-cleared pairs in Z[q, x, y]; the monic-in-q(q)
            # canonical representative is only needed for orbit
            # comparisons, which go through BiPoly.canonical()
            np_, dp = self._normalize_qq(n, d, mode, (y, x, q))
        else:
            dp = BiPoly(d, mode)
            if dp.is_zero:
                raise ZeroDenominator("denominator is zero")
            np_ = BiPoly(n, mode)
            if np_.is_zero:
                dp = BiPoly(sp.Integer(1), mode, _normalized=True)
            else:
                u = dp.leading_unit()
                dp = BiPoly(_cancel(dp.expr / u, mode), mode)
                np_ = BiPoly(_cancel(np_.expr / u, mode), mode)
        object.__setattr__(self, "num", np_)
        object.__setattr__(self, "den", dp)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _poly_cancel(n, d, mode):
        """Reduce the pair n/d to lowest terms by polynomial gcd.

        Over Q(q) the stored forms are integer in q, so q joins the
        generators and the gcd runs over Q instead of a fraction field.
        """
        if mode.kind == TRANSCENDENTAL:
            gens, dom = (x, y, q), sp.QQ
        else:
            gens, dom = (x, y), mode.coeff_domain()
        pd = sp.Poly(d, *gens, domain=dom)
        if pd.is_zero:
            raise ZeroDenominator("denominator is zero")
        pn = sp.Poly(n, *gens, domain=dom)
        if pn.is_zero:
            return sp.Integer(0), sp.Integer(1)
        g = pn.gcd(pd)
        if g.total_degree() > 0 or not g.is_one:
            pn, pd = pn.exquo(g), pd.exquo(g)
        return pn.as_expr(), pd.as_expr()

    @staticmethod
    def _normalize_qq(n, d, mode, gens):
        """Canonical pair with rational coefficients scaled to integer
        polynomials with coprime contents and positive leading
        denominator coefficient (lex order on gens)."""
        pn = sp.Poly(n, *gens, domain=sp.QQ)
        pd = sp.Poly(d, *gens, domain=sp.QQ)
        if pd.is_zero:
            raise ZeroDenominator("denominator is zero")
        if pn.is_zero:
            return (BiPoly(sp.Integer(0), mode, _normalized=True),
                    BiPoly(sp.Integer(1), mode, _normalized=True))
        cn = sp.Integer(0)
        for c in pn.coeffs():
            cn = sp.gcd(cn, sp.Rational(c))
        cd = sp.Integer(0)
        for c in pd.coeffs():
            cd = sp.gcd(cd, sp.Rational(c))
        r = cn / cd
        scale_n = r.p / cn
        scale_d = r.q / cd
        if pd.LC() < 0:
            scale_n, scale_d = -scale_n, -scale_d
        return (BiPoly(sp.expand(pn.as_expr() * scale_n), mode,
                       _normalized=True),
                BiPoly(sp.expand(pd.as_expr() * scale_d), mode,
                       _normalized=True))

    @classmethod
    def from_pair(cls, num, den, mode):
        nexpr = num.expr if isinstance(num, BiPoly) else sp.sympify(num)
        dexpr = den.expr if isinstance(den, BiPoly) else sp.sympify(den)
        if dexpr == 0:
            raise ZeroDenominator("denominator is zero")
        return cls(None, mode, _parts=(nexpr, dexpr))

    def as_expr(self):
        return self.num.expr / self.den.expr

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_polynomial(self, *vars_):
        if not vars_:
            vars_ = (x, y)
        return not (self.den.expr.free_symbols & set(vars_))

    def free_of(self, var):
        return var not in self.num.expr.free_symbols \
            and var not in self.den.expr.free_symbols

    # -- arithmetic ----------------------------------------------------

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        return RatFunc(other, self.mode)

    def __add__(self, other):
        other = self._lift(other)
        n = self.num.expr * other.den.expr + other.num.expr * self.den.expr
        return RatFunc(None, self.mode,
                       _parts=(n, self.den.expr * other.den.expr))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        n = self.num.expr * other.den.expr - other.num.expr * self.den.expr
        return RatFunc(None, self.mode,
                       _parts=(n, self.den.expr * other.den.expr))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return RatFunc(None, self.mode,
                       _parts=(-self.num.expr, self.den.expr))

    def __mul__(self, other):
        other = self._lift(other)
        return RatFunc(None, self.mode,
                       _parts=(self.num.expr * other.num.expr,
                               self.den.expr * other.den.expr))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other.is_zero:
            raise ZeroDenominator("division by zero")
        return RatFunc(None, self.mode,
                       _parts=(self.num.expr * other.den.expr,
                               self.den.expr * other.num.expr))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return RatFunc(None, self.mode,
                           _parts=(self.den.expr ** -n, self.num.expr ** -n))
        return RatFunc(None, self.mode,
                       _parts=(self.num.expr ** n, self.den.expr ** n))

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other, self.mode)
        diff = self.num.expr * other.den.expr - other.num.expr * self.den.expr
        return BiPoly(sp.expand(diff), self.mode).is_zero

    def __hash__(self):
        return hash(sp.srepr(self.as_expr()))

    def __repr__(self):
        return "RatFunc(%s)" % self.as_expr()

    # -- operator actions ---------------------------------------------

    def shift_x(self, n=1):
        return RatFunc(None, self.mode,
                       _parts=(self.num.expr.subs(x, x + n),
                               self.den.expr.subs(x, x + n)))

    def shift_y(self, n=1):
        return RatFunc(None, self.mode,
                       _parts=(self.num.expr.subs(y, y + n),
                               self.den.expr.subs(y, y + n)))

    def qshift_x(self, n=1):
        qv = self.mode.q_value
        return RatFunc(None, self.mode,
                       _parts=(self.num.expr.subs(x, qv ** int(n) * x),
                               self.den.expr.subs(x, qv ** int(n) * x)))

    def deriv_y(self):
        n, d = self.num.expr, self.den.expr
        return RatFunc(None, self.mode,
                       _parts=(sp.diff(n, y) * d - n * sp.diff(d, y),
                               d ** 2))

    def delta_x(self):
        return self.shift_x(1) - self

    def delta_qx(self):
        return self.qshift_x(1) - self

    def delta_y(self):
        return self.shift_y(1) - self


# -- operator symbols and the generic apply ---------------------------

@dataclass(frozen=True)
class OperatorSymbol:
    """One of the shift/derivative operators acting on k(x, y)."""

    kind: str  # shift_x | qshift_x | shift_y | deriv_y | delta_x | delta_qx | delta_y
    power: int = 1

    def __str__(self):
        if self.kind in ("shift_x", "qshift_x", "shift_y"):
            return "%s^%d" % (self.kind, self.power)
        return self.kind


def ShiftX(i=1):
    return OperatorSymbol("shift_x", i)


def QShiftX(i=1):
    return OperatorSymbol("qshift_x", i)


def ShiftY(j=1):
    return OperatorSymbol("shift_y", j)


DerivY = OperatorSymbol("deriv_y")
DeltaX = OperatorSymbol("delta_x")
DeltaQX = OperatorSymbol("delta_qx")
DeltaY = OperatorSymbol("delta_y")


def apply(f, op):
    """Apply an operator symbol to a rational function."""
    if op.kind in ("qshift_x", "delta_qx") and not f.mode.has_q:
        raise QModeMismatch("q-shift requires a q-mode with a value for q")
    if op.kind == "shift_x":
        return f.shift_x(op.power)
    if op.kind == "qshift_x":
        return f.qshift_x(op.power)
    if op.kind == "shift_y":
        return f.shift_y(op.power)
    if op.kind == "deriv_y":
        return f.deriv_y()
    if op.kind == "delta_x":
        return f.delta_x()
    if op.kind == "delta_qx":
        return f.delta_qx()
    if op.kind == "delta_y":
        return f.delta_y()
    raise ValueError("unknown operator %r" % (op,))


def normalize(num, den, mode=None):
    """Canonical reduced rational function from a numerator/denominator
    pair of BiPolys (or raw expressions plus an explicit mode)."""
    if mode is None:
        mode = num.mode if isinstance(num, BiPoly) else den.mode
    return RatFunc.from_pair(num, den, mode)
