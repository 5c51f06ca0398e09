"""Partial-fraction decompositions with respect to y and the two residue
notions attached to them.

The plain decomposition writes f as a y-polynomial part plus terms
a/(d^j) over the distinct irreducible y-factors d of the denominator, with
coefficients in k(x).  The sigma decomposition additionally groups the d's
into sigma_y-orbits, indexing each term by its shift offset from the orbit
representative; the orbit-summed, shift-aligned numerator at a fixed
multiplicity is the sigma_y-residue.
"""

from dataclasses import dataclass, field
from typing import List, Tuple

import sympy as sp

from .core import BiPoly, RatFunc
from .factorization import factor
from .orbits import shift_equivalent
from .qmodes import x, y

PLAIN_MODE = "plain"
SIGMA_MODE = "sigma"


@dataclass(frozen=True)
class PfdTerm:
    """One simple-fraction term a / sigma_y^ell(d)^j.

    The numerator is stored as a rational function whose denominator is
    free of y (an element of k(x)[y] with deg_y < deg_y d).
    """

    num: RatFunc
    den: BiPoly
    j: int
    ell: int = 0

    def shifted_den(self) -> BiPoly:
        return self.den.shift(y, self.ell)

    def value(self) -> RatFunc:
        return self.num / RatFunc(self.shifted_den().expr ** self.j,
                                  self.num.mode)


@dataclass(frozen=True)
class Decomposition:
    poly_part: RatFunc
    terms: Tuple[PfdTerm, ...]
    kind: str = PLAIN_MODE

    def recompose(self) -> RatFunc:
        acc = self.poly_part
        for t in self.terms:
            acc = acc + t.value()
        return acc


def _y_factor_split(den: BiPoly):
    """(scalar, [(d_i, e_i)]) with den = scalar * prod d_i^e_i, the d_i the
    irreducible factors of positive y-degree and scalar in k[x]."""
    fac = factor(den)
    yfactors = [(d, e) for d, e in fac.factors if d.degree(y) >= 1]
    prod = BiPoly(1, den.mode)
    for d, e in yfactors:
        prod = prod * d ** e
    scalar = den.exact_div(prod)
    return scalar, yfactors


def partial_fractions(f: RatFunc) -> Decomposition:
    """Unique irreducible partial-fraction decomposition of f in y over
    k(x)."""
    mode = f.mode
    Kx = mode.field_with(x)
    D = sp.Poly(f.den.expr, y, domain=Kx)
    N = sp.Poly(f.num.expr, y, domain=Kx)
    if D.degree() <= 0:
        return Decomposition(f, ())
    quo, rem = N.div(D)
    poly_part = RatFunc(quo.as_expr(), mode)
    if rem.is_zero:
        return Decomposition(poly_part, ())
    scalar, yfactors = _y_factor_split(f.den)
    rem = sp.Poly(rem.as_expr() / scalar.expr, y, domain=Kx)
    terms = []
    for i, (d, e) in enumerate(yfactors):
        Dp = sp.Poly(d.expr, y, domain=Kx)
        De = Dp ** e
        cof = sp.Poly(1, y, domain=Kx)
        for jj, (d2, e2) in enumerate(yfactors):
            if jj != i:
                cof = cof * sp.Poly(d2.expr, y, domain=Kx) ** e2
        s, _, h = cof.gcdex(De)
        # h == 1 since the factors are pairwise coprime over k(x)
        Ni = (rem * s).rem(De)
        cur = Ni
        level = 0
        while level < e and not cur.is_zero:
            cur, digit = cur.div(Dp)
            if not digit.is_zero:
                terms.append(PfdTerm(RatFunc(digit.as_expr(), mode),
                                     d, e - level))
            level += 1
    return Decomposition(poly_part, tuple(terms))


def _orbit_groups(terms, dens):
    """Group the distinct denominators into sigma_y-orbits.

    Returns a list of (rep, members) where rep is the minimal-shift
    canonical representative and members maps each denominator to its
    (offset, scale) with sigma_y^offset(rep) == scale * den."""
    groups = []
    for d in dens:
        placed = False
        for grp in groups:
            res = shift_equivalent(grp["rep"], d, y)
            if res is not None:
                grp["members"].append((d, res[0], res[1]))
                placed = True
                break
        if not placed:
            groups.append({"rep": d, "members": [(d, 0, sp.Integer(1))]})
    out = []
    for grp in groups:
        nmin = min(n for _, n, _ in grp["members"])
        rep = grp["rep"].shift(y, nmin)
        _, rep = rep.canonical()
        members = {}
        for d, _, _ in grp["members"]:
            res = shift_equivalent(rep, d, y)
            members[d] = (res[0], res[1])
        out.append((rep, members))
    return out


def sigma_decomposition(f: RatFunc) -> Decomposition:
    """Partial fractions with denominators grouped into sigma_y-orbits:
    every term denominator is sigma_y^ell(rep)^j for one of the pairwise
    sigma_y-inequivalent representatives rep."""
    plain = partial_fractions(f)
    dens = []
    for t in plain.terms:
        if all(not (t.den == d) for d in dens):
            dens.append(t.den)
    groups = _orbit_groups(plain.terms, dens)
    terms = []
    for rep, members in groups:
        for t in plain.terms:
            if t.den in members or any(t.den == d for d in members):
                ell, scale = next(v for d, v in members.items() if d == t.den)
                # sigma^ell(rep) = scale * den  =>  a/den^j = a*scale^j/sigma^ell(rep)^j
                num = t.num * RatFunc(scale ** t.j, f.mode)
                terms.append(PfdTerm(num, rep, t.j, ell))
    return Decomposition(plain.poly_part, tuple(terms), SIGMA_MODE)


def residue_dy(f: RatFunc, d: BiPoly) -> RatFunc:
    """The numerator over the first power of d in the plain decomposition
    (zero when d is not a simple denominator of f)."""
    u, dcan = d.canonical()
    dec = partial_fractions(f)
    for t in dec.terms:
        if t.j == 1 and t.den == dcan:
            return t.num * RatFunc(u, f.mode)
    return RatFunc(0, f.mode)


def residue_sigma(f: RatFunc, d: BiPoly, j: int) -> RatFunc:
    """Sum of sigma_y^(-ell)(a_ell) over the sigma_y-orbit of d at
    multiplicity j (offsets taken relative to d itself)."""
    mode = f.mode
    u, dcan = d.canonical()
    dec = sigma_decomposition(f)
    acc = RatFunc(0, mode)
    seen_reps = []
    for t in dec.terms:
        if t.j != j:
            continue
        res = shift_equivalent(dcan, t.den, y)
        if res is None:
            continue
        n0, scale0 = res
        # sigma^n0(dcan) = scale0 * rep; term den sigma^ell(rep) = sigma^(ell+n0)(dcan)/scale0
        L = t.ell + n0
        a = t.num * RatFunc(scale0 ** j * u ** j, mode)
        acc = acc + a.shift_y(-L)
        seen_reps.append(t.den)
    return acc
