"""Univariate rational summability in x with certificates.

The shift case runs the y-direction Abramov reduction on the variable-
swapped input; the q-shift case is handled directly: powers of x are
certified by the scalar identity delta_q(c x^j / (q^j - 1)) = c x^j (the
constant term being the sole obstruction there), all other denominators by
q-orbit collapse and vanishing of the aligned residue sums.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import sympy as sp

from .core import BiPoly, RatFunc
from .errors import QModeMismatch, RatexactError
from .orbits import q_equivalent
from .qmodes import RATIONAL, TRANSCENDENTAL, x, y
from .reductions import abramov_reduce_y


@dataclass(frozen=True)
class SummabilityResult:
    summable: bool
    certificate: Optional[RatFunc] = None
    obstruction: Tuple = ()


def _swap_xy(f: RatFunc) -> RatFunc:
    return RatFunc(f.as_expr().subs({x: y, y: x}, simultaneous=True), f.mode)


def _swap_poly(p: BiPoly) -> BiPoly:
    return BiPoly(p.expr.subs({x: y, y: x}, simultaneous=True), p.mode)


def abramov_summable_x(f: RatFunc) -> SummabilityResult:
    """Decide f = g(x+1) - g(x) for rational f of x; the certificate or
    the nonzero orbit residues are returned."""
    if not f.free_of(y):
        raise ValueError("input must be univariate in x")
    h, terms = _swapped_reduction(f)
    if not terms:
        if not (h.shift_x(1) - h == f):  # pragma: no cover - internal check
            raise RatexactError("summation certificate failed to verify")
        return SummabilityResult(True, h)
    obstruction = tuple((_swap_poly(t.den), t.j, _swap_xy(t.num))
                        for t in terms)
    return SummabilityResult(False, None, obstruction)


def _swapped_reduction(f):
    h, terms = abramov_reduce_y(_swap_xy(f))
    return _swap_xy(h), terms


def q_summable_x(f: RatFunc) -> SummabilityResult:
    """Decide f = g(qx) - g(x) for rational f of x, q not a root of
    unity."""
    mode = f.mode
    if mode.kind not in (TRANSCENDENTAL, RATIONAL):
        raise QModeMismatch("q-summability requires q not a root of unity")
    if not f.free_of(y):
        raise ValueError("input must be univariate in x")
    qv = mode.q_value
    # reuse the y-direction partial fraction machinery on swapped input
    from .residues import partial_fractions
    dec = partial_fractions(_swap_xy(f))
    g = RatFunc(0, mode)
    obstruction = []
    # Laurent part: polynomial in x plus poles at x = 0
    poly = sp.Poly(_swap_xy(dec.poly_part).as_expr(), x) \
        if not dec.poly_part.is_zero else None
    if poly is not None:
        for (j,), c in poly.terms():
            if j == 0:
                obstruction.append((BiPoly(1, mode), 0, RatFunc(c, mode)))
            else:
                g = g + RatFunc(c * x ** j / (qv ** j - 1), mode)
    xpow_terms = []
    orbit_terms = []
    for t in dec.terms:
        d = _swap_poly(t.den)
        a = _swap_xy(t.num)
        if d == BiPoly(x, mode):
            xpow_terms.append((a, t.j))
        else:
            orbit_terms.append((a, d, t.j))
    for a, j in xpow_terms:
        # a is ground; delta_q(a x^-j / (q^-j - 1)) = a x^-j
        g = g + a * RatFunc(x ** (-j) / (qv ** (-j) - 1), mode)
    # group the remaining denominators into tau-orbits
    groups = []
    for a, d, j in orbit_terms:
        placed = False
        for grp in groups:
            res = q_equivalent(grp["rep"], d)
            if res is not None:
                grp["members"].append((a, d, j, res[0]))
                placed = True
                break
        if not placed:
            groups.append({"rep": d, "members": [(a, d, j, 0)]})
    for grp in groups:
        mmin = min(m for _, _, _, m in grp["members"])
        rep = grp["rep"].qshift_x(mmin)
        _, rep = rep.canonical()
        buckets = {}
        for a, d, j, _ in grp["members"]:
            m, scale = q_equivalent(rep, d)
            A = a * RatFunc(scale ** j, mode)
            denj = RatFunc(rep.expr ** j, mode)
            for t_ in range(m):
                g = g + A.qshift_x(t_ - m) / denj.qshift_x(t_)
            buckets[j] = buckets.get(j, RatFunc(0, mode)) + A.qshift_x(-m)
        for j, res in sorted(buckets.items()):
            if not res.is_zero:
                obstruction.append((rep, j, res))
    if obstruction:
        return SummabilityResult(False, None, tuple(obstruction))
    if not (g.qshift_x(1) - g == f):  # pragma: no cover - internal check
        raise RatexactError("q-summation certificate failed to verify")
    return SummabilityResult(True, g)
