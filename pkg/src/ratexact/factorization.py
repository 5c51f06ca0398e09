"""Content/primitive splitting, squarefree decomposition, and irreducible
factorization of polynomials in k[x, y].

Factorization is delegated to sympy's multivariate machinery, which is
complete over Q, over Q(q) (by treating q as an extra ring variable, whose
pure-q factors are units), and over Q(zeta_m) via an algebraic extension.
The ``FactorizationIncomplete`` escape hatch is kept for API stability and
raised only if the backend fails unexpectedly.
"""

from dataclasses import dataclass
from functools import reduce
from typing import List, Tuple

import sympy as sp

from .core import BiPoly
from .errors import FactorizationIncomplete, ZeroPolynomial
from .qmodes import TRANSCENDENTAL, q, x, y


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor**multiplicity) == the factored polynomial."""

    unit: sp.Expr
    factors: Tuple[Tuple[BiPoly, int], ...]

    def recompose(self, mode):
        acc = BiPoly(self.unit, mode)
        for f, m in self.factors:
            acc = acc * f ** m
        return acc


def _sort_factors(factors):
    return tuple(sorted(factors, key=lambda fm: sp.default_sort_key(fm[0].expr)))


def factor(p: BiPoly) -> Factorization:
    """Irreducible factorization over the coefficient field.

    Factors are primitive canonical representatives in k[x, y]; mixed
    factors are irreducible in k(x)[y] as well (Gauss). Output order is
    the deterministic canonical sort.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    mode = p.mode
    try:
        if mode.kind == TRANSCENDENTAL:
            num, den = sp.together(p.expr).as_numer_denom()
            const, raw = sp.factor_list(num, q, x, y)
            unit = const / den
        elif mode.extension is not None:
            const, raw = sp.factor_list(p.expr, x, y, extension=mode.extension)
            unit = const
        else:
            const, raw = sp.factor_list(p.expr, x, y)
            unit = const
    except (sp.PolynomialError, sp.polys.polyerrors.DomainError) as exc:
        raise FactorizationIncomplete(str(exc), p) from exc
    factors = []
    for fexpr, mult in raw:
        if not (fexpr.free_symbols & {x, y}):
            unit *= fexpr ** mult
            continue
        u, prim = BiPoly(fexpr, mode).canonical()
        unit *= u ** mult
        factors.append((prim, int(mult)))
    return Factorization(sp.cancel(unit), _sort_factors(factors))


def content_primitive(p: BiPoly, var) -> Tuple[BiPoly, BiPoly]:
    """Split p = content * primitive with the content free of var."""
    if p.is_zero:
        raise ZeroPolynomial("content of the zero polynomial")
    mode = p.mode
    coeffs = sp.Poly(p.expr, var).all_coeffs()
    ext = mode.extension
    if ext is not None:
        g = reduce(lambda a, b: sp.gcd(a, b, extension=ext), coeffs)
    else:
        g = reduce(sp.gcd, coeffs)
    prim_raw = p.exact_div(BiPoly(g, mode))
    _, prim = prim_raw.canonical()
    if prim.is_zero:  # pragma: no cover
        raise ZeroPolynomial("primitive part vanished")
    content = p.exact_div(prim)
    return content, prim


def squarefree(p: BiPoly, var) -> List[Tuple[BiPoly, int]]:
    """Squarefree decomposition with respect to var over the field of the
    remaining symbols. The var-free content, when nontrivial, appears as a
    multiplicity-1 entry so that the product recomposes exactly."""
    if p.is_zero:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    mode = p.mode
    other = x if var == y else y
    dom = mode.field_with(other)
    poly = sp.Poly(p.expr, var, domain=dom)
    _, raw = poly.sqf_list()
    out = []
    rest = p
    for f, mult in raw:
        # sqf over the fraction field can yield monic factors with
        # denominators in the other variable; clear them first
        cleared = sp.fraction(sp.together(f.as_expr()))[0]
        u, prim = BiPoly(cleared, mode).canonical()
        if prim.degree(var) == 0 and prim.expr == 1:
            continue
        out.append((prim, int(mult)))
        rest = BiPoly(sp.cancel(rest.expr / prim.expr ** mult), mode)
    if rest.expr != 1:
        out.insert(0, (rest, 1))
    return out
