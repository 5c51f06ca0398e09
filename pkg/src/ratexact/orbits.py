"""Shift-, q-shift-, and joint-orbit equivalence of polynomials.

Two polynomials are equivalent when an integer power of the relevant
operator maps one onto a scalar multiple of the other.  Every candidate
exponent is recovered deterministically from coefficient structure (no
searching except in the finite root-of-unity case) and every witness is
re-verified by explicit substitution before being returned.
"""

from dataclasses import dataclass

import sympy as sp

from .core import BiPoly
from .errors import QModeMismatch
from .qmodes import (PLAIN, RATIONAL, ROOT_OF_UNITY, TRANSCENDENTAL,
                     q, x, y)


@dataclass(frozen=True)
class OrbitWitness:
    """tau_{x,q}^m sigma_y^n (source) == scale * target, scale in k*."""

    m: int
    n: int
    scale: sp.Expr


def is_free_of_x(p: BiPoly) -> bool:
    """True iff the primitive representative does not involve x."""
    return p.free_of(x)


def _is_ground(expr, mode):
    syms = expr.free_symbols - ({q} if mode.kind == TRANSCENDENTAL else set())
    return not (syms & {x, y}) and not syms


def _ground_zero(expr, mode):
    return BiPoly(expr, mode).is_zero


def shift_equivalent(p: BiPoly, p2: BiPoly, var):
    """(n, scale) with shift_var^n(p) == scale * p2, or None.

    Works for var = y (sigma_y-equivalence) and var = x alike.
    """
    mode = p.mode
    other = x if var == y else y
    dom = mode.field_with(other)
    P = sp.Poly(p.expr, var, domain=dom)
    P2 = sp.Poly(p2.expr, var, domain=dom)
    d = P.degree()
    if d != P2.degree():
        return None
    if d <= 0:
        ratio = sp.cancel(p.expr / p2.expr)
        if _is_ground(ratio, mode):
            return 0, ratio
        return None
    c1, c2 = P.LC(), P2.LC()
    s1 = P.nth(d - 1) / c1
    s2 = P2.nth(d - 1) / c2
    n = sp.cancel(dom.to_sympy(s2 - s1) / d)
    if not (n.is_Rational and n.is_integer):
        return None
    n = int(n)
    scale = sp.cancel(dom.to_sympy(c1 / c2))
    if not _is_ground(scale, mode):
        return None
    if _ground_zero(sp.expand(p.expr.subs(var, var + n) - scale * p2.expr),
                   mode):
        return n, scale
    return None


def sigma_equivalent(p: BiPoly, p2: BiPoly):
    """sigma_y-equivalence: shift equivalence in the y direction."""
    return shift_equivalent(p, p2, y)


def _solve_q_power(ratio, delta, mode):
    """Integer m with q^(m*delta) == ratio in the ground field, or None."""
    if mode.kind == TRANSCENDENTAL:
        num, den = sp.fraction(sp.cancel(ratio))
        pn = sp.Poly(num, q)
        pd = sp.Poly(den, q)
        if len(pn.monoms()) != 1 or len(pd.monoms()) != 1:
            return None
        if pn.LC() != pd.LC():
            return None
        e = pn.degree() - pd.degree()
        if e % delta:
            return None
        return e // delta
    if mode.kind == RATIONAL:
        v = mode.value
        r = sp.Rational(sp.cancel(ratio))
        if r == 0:
            return None
        import math
        lr, lv = math.log(abs(r)), math.log(abs(v))
        m_delta = 0 if lr == 0 else int(round(lr / lv))
        if v ** m_delta != r or m_delta % delta:
            # exponent may be negative with |v|<1 rounding issues; retry
            for cand in range(m_delta - 2, m_delta + 3):
                if cand % delta == 0 and v ** cand == r:
                    return cand // delta
            return None
        return m_delta // delta
    if mode.kind == ROOT_OF_UNITY:
        zeta = mode.q_value
        for m in range(mode.order):
            if _ground_zero(sp.expand(zeta ** (m * delta) - ratio), mode):
                return m
        return None
    raise QModeMismatch("q-orbit test requires a q-mode")


def q_equivalent(p: BiPoly, p2: BiPoly):
    """(m, scale) with tau_{x,q}^m(p) == scale * p2, or None.

    A single-x-support polynomial is its own orbit (tau acts by a scalar);
    the degenerate witness m = 0 is returned when the two are associates.
    """
    mode = p.mode
    if not mode.has_q:
        raise QModeMismatch("q-orbit test requires a q-mode")
    P = sp.Poly(p.expr, x)
    P2 = sp.Poly(p2.expr, x)
    sup = sorted(mon[0] for mon in P.monoms())
    sup2 = sorted(mon[0] for mon in P2.monoms())
    if sup != sup2:
        return None
    ratios = {}
    for i in sup:
        r = sp.cancel(P2.nth(i) / P.nth(i))
        if not _is_ground(r, mode):
            return None
        ratios[i] = r
    i0 = sup[0]
    if len(sup) == 1:
        return _verify_q(p, p2, 0, mode)
    i1 = sup[1]
    m = _solve_q_power(sp.cancel(ratios[i1] / ratios[i0]), i1 - i0, mode)
    if m is None:
        return None
    return _verify_q(p, p2, m, mode)


def _verify_q(p, p2, m, mode):
    qv = mode.q_value
    shifted = sp.expand(p.expr.subs(x, qv ** m * x))
    # scale from any nonzero coefficient
    P2 = sp.Poly(p2.expr, x, y)
    mon = P2.monoms()[0]
    c2 = P2.coeff_monomial(mon)
    c1 = sp.Poly(shifted, x, y).coeff_monomial(mon)
    if c1 is None or c1 == 0:
        return None
    scale = sp.cancel(c1 / c2)
    if _ground_zero(sp.expand(shifted - scale * p2.expr), mode):
        return m, scale
    return None


def joint_equivalent(p: BiPoly, p2: BiPoly):
    """OrbitWitness for the joint (tau_{x,q}, sigma_y)-orbit, or None.

    The sigma-power n is recovered first from the y-structure of an
    x-coefficient, then the tau-power m as in q_equivalent; the combined
    witness is verified by full substitution.
    """
    mode = p.mode
    if mode.kind == PLAIN:
        raise QModeMismatch("joint orbit test requires a q-mode")
    P = sp.Poly(p.expr, x)
    P2 = sp.Poly(p2.expr, x)
    sup = sorted(mon[0] for mon in P.monoms())
    if sup != sorted(mon[0] for mon in P2.monoms()):
        return None
    n = 0
    for i in reversed(sup):
        ai = BiPoly(P.nth(i), mode)
        ai2 = BiPoly(P2.nth(i), mode)
        if ai.degree(y) != ai2.degree(y):
            return None
        if ai.degree(y) >= 1:
            res = shift_equivalent(ai, ai2, y)
            if res is None:
                return None
            n = res[0]
            break
    p2_back = p2.shift(y, -n)
    res = q_equivalent(p, p2_back)
    if res is None:
        return None
    m, scale = res
    qv = mode.q_value
    moved = sp.expand(p.expr.subs({x: qv ** m * x, y: y + n},
                                  simultaneous=True))
    if _ground_zero(sp.expand(moved - scale * p2.expr), mode):
        return OrbitWitness(m, n, scale)
    return None  # pragma: no cover - candidate always verifies or None earlier
