"""Constructive reductions: Ostrogradsky-Hermite in y, Abramov reduction
in y, orbit collapse onto a representative denominator, the two mixed
reduced forms, and the root-of-unity trace reduction.

Every routine returns certificates alongside residuals and is validated by
exact recomposition; nothing here is numeric.
"""

from dataclasses import dataclass
from typing import List, Tuple

import sympy as sp

from .core import BiPoly, RatFunc
from .errors import QModeMismatch, RatexactError
from .orbits import joint_equivalent, q_equivalent, shift_equivalent
from .qmodes import RATIONAL, ROOT_OF_UNITY, TRANSCENDENTAL, x, y
from .residues import PfdTerm, partial_fractions, sigma_decomposition

PHI_SHIFT = "shift_x"
PHI_QSHIFT = "qshift_x"

FLAVOR_SX_DY = "sx-dy"
FLAVOR_TQ_DY = "tq-dy"
FLAVOR_TQ_SY = "tq-sy"


@dataclass(frozen=True)
class ReducedForm:
    """f == phi(g) - g + dy(h) + sum(terms), with the operator pair fixed
    by the flavor tag (dy means d/dy for the *-dy flavors and the forward
    y-difference for tq-sy)."""

    g: RatFunc
    h: RatFunc
    terms: Tuple[PfdTerm, ...]
    flavor: str

    def residual(self) -> RatFunc:
        acc = RatFunc(0, self.g.mode)
        for t in self.terms:
            acc = acc + t.value()
        return acc

    def recompose(self) -> RatFunc:
        if self.flavor == FLAVOR_SX_DY:
            dx = self.g.shift_x(1) - self.g
            dy = self.h.deriv_y()
        elif self.flavor == FLAVOR_TQ_DY:
            dx = self.g.qshift_x(1) - self.g
            dy = self.h.deriv_y()
        elif self.flavor == FLAVOR_TQ_SY:
            dx = self.g.qshift_x(1) - self.g
            dy = self.h.shift_y(1) - self.h
        else:
            raise ValueError("unknown flavor %r" % (self.flavor,))
        return dx + dy + self.residual()


def hermite_reduce_y(f: RatFunc):
    """(h, terms): f = Dy(h) + sum of simple fractions in y.

    Multiplicities are peeled off term by term with a Bezout relation
    between each irreducible denominator and its y-derivative; the
    y-polynomial part is absorbed into h by exact integration.
    """
    mode = f.mode
    Kx = mode.field_with(x)
    dec = partial_fractions(f)
    h = RatFunc(sp.integrate(dec.poly_part.as_expr(), y), mode) \
        if not dec.poly_part.is_zero else RatFunc(0, mode)
    simple = {}
    order = []
    for t in dec.terms:
        d = t.den
        Dp = sp.Poly(d.expr, y, domain=Kx)
        dDp = Dp.diff(y)
        a = sp.Poly(t.num.as_expr(), y, domain=Kx)
        j = t.j
        while j > 1:
            uB, vB, one = Dp.gcdex(dDp)
            # a = s*d + t*d' with deg t < deg d
            tB = (a * vB).rem(Dp)
            sB = (a - tB * dDp).quo(Dp)
            h = h + RatFunc(-tB.as_expr() / ((j - 1) * d.expr ** (j - 1)),
                            mode)
            a = sB + tB.diff(y) * sp.Poly(sp.Rational(1, j - 1), y, domain=Kx)
            j -= 1
        key = next((k for k in order if k == d), None)
        if key is None:
            order.append(d)
            key = d
        simple[key] = simple.get(key, RatFunc(0, mode)) \
            + RatFunc(a.as_expr(), mode)
    terms = tuple(PfdTerm(simple[d], d, 1) for d in order
                  if not simple[d].is_zero)
    return h, terms


def discrete_antiderivative(expr, var, mode) -> RatFunc:
    """P with P(var+1) - P(var) == expr, for expr polynomial in var."""
    other = x if var == y else y
    dom = mode.field_with(other)
    poly = sp.Poly(sp.together(expr), var, domain=dom)
    acc = sp.Integer(0)
    while not poly.is_zero:
        n = poly.degree()
        c = dom.to_sympy(poly.LC())
        acc += c * sp.expand(sp.ff(var, n + 1)) / (n + 1)
        poly = poly - sp.Poly(c * sp.expand(sp.ff(var, n)), var, domain=dom)
    return RatFunc(acc, mode)


def abramov_reduce_y(f: RatFunc):
    """(h, terms): f = (sigma_y - 1)(h) + sum a/(d^j) with the d's in
    distinct sigma_y-orbits; terms vanish iff f is sigma_y-summable."""
    mode = f.mode
    dec = sigma_decomposition(f)
    h = discrete_antiderivative(dec.poly_part.as_expr(), y, mode)
    buckets = []  # (den, j, num) with nums accumulated

    def bucket_add(d, j, a):
        for i, (d2, j2, a2) in enumerate(buckets):
            if j2 == j and d2 == d:
                buckets[i] = (d2, j2, a2 + a)
                return
        buckets.append((d, j, a))

    for t in dec.terms:
        a, rep, j, ell = t.num, t.den, t.j, t.ell
        denj = RatFunc(rep.expr ** j, mode)
        for k in range(ell):
            h = h + a.shift_y(k - ell) / denj.shift_y(k)
        bucket_add(rep, j, a.shift_y(-ell))
    terms = tuple(PfdTerm(a, d, j) for d, j, a in buckets if not a.is_zero)
    return h, terms


def _op_pow(value, kind, n):
    """Apply the n-th power of a shift operator to a RatFunc or BiPoly."""
    if n == 0:
        return value
    if isinstance(value, BiPoly):
        if kind == PHI_SHIFT:
            return value.shift(x, n)
        if kind == PHI_QSHIFT:
            return value.qshift_x(n)
        if kind == "shift_y":
            return value.shift(y, n)
    else:
        if kind == PHI_SHIFT:
            return value.shift_x(n)
        if kind == PHI_QSHIFT:
            return value.qshift_x(n)
        if kind == "shift_y":
            return value.shift_y(n)
    raise ValueError("unknown operator kind %r" % (kind,))


def orbit_collapse(a: RatFunc, d: BiPoly, j: int, m: int, n: int,
                   phi1: str, phi2: str):
    """Telescoping reduction of a/(phi1^m phi2^n(d^j)) onto the orbit
    representative d:

        a/phi1^m phi2^n(d^j) = phi1(u) - u + phi2(v) - v + collapsed

    for commuting shifts phi1, phi2 and m, n >= 0.
    """
    if m < 0 or n < 0:
        raise ValueError("offsets must be nonnegative (re-base the orbit)")
    mode = a.mode
    dj = RatFunc(d.expr ** j, mode)
    u = RatFunc(0, mode)
    for t in range(m):
        u = u + _op_pow(a, phi1, t - m) / _op_pow(_op_pow(dj, phi2, n),
                                                  phi1, t)
    am = _op_pow(a, phi1, -m)
    v = RatFunc(0, mode)
    for k in range(n):
        v = v + _op_pow(am, phi2, k - n) / _op_pow(dj, phi2, k)
    collapsed = PfdTerm(_op_pow(am, phi2, -n), d, j)
    return u, v, collapsed


def _x_orbit_groups(dens, phi, mode):
    """Group denominators into phi-orbits in the x-direction; returns
    (rep, {den: (offset >= 0, scale)}) pairs with phi^offset(rep) ==
    scale * den."""
    equiv = (lambda p, p2: shift_equivalent(p, p2, x)) \
        if phi == PHI_SHIFT else q_equivalent
    groups = []
    for d in dens:
        placed = False
        for grp in groups:
            res = equiv(grp["rep"], d)
            if res is not None:
                grp["members"].append((d, res[0]))
                placed = True
                break
        if not placed:
            groups.append({"rep": d, "members": [(d, 0)]})
    out = []
    for grp in groups:
        mmin = min(n for _, n in grp["members"])
        rep = _op_pow(grp["rep"], phi, mmin)
        _, rep = rep.canonical()
        members = []
        for d, _ in grp["members"]:
            res = equiv(rep, d)
            members.append((d, res[0], res[1]))
        out.append((rep, members))
    return out


def _y_coefficients(a: RatFunc):
    """[(power of y, coefficient in k(x))] for a in k(x)[y]."""
    expr = sp.together(a.as_expr())
    num, den = expr.as_numer_denom()
    if y in den.free_symbols:
        raise RatexactError("residue numerator not polynomial in y")
    poly = sp.Poly(num, y)
    return [(int(j), c / den) for (j,), c in poly.terms()]


def _lift_coefficientwise(a: RatFunc, summable, mode):
    """b in k(x)[y] with phi(b) - b == a, lifting the univariate
    summability certificate through each y-coefficient; None when some
    coefficient is not summable."""
    b = RatFunc(0, mode)
    for j, c in _y_coefficients(a):
        res = summable(RatFunc(c, mode))
        if not res.summable:
            return None
        b = b + res.certificate * RatFunc(y ** j, mode)
    return b


def _absorb_summable(terms, phi, mode):
    """Split residual terms over x-free denominators whose numerators
    are phi-summable in x into an extra phi-difference part.

    Such a term a/d^j equals phi(b/d^j) - b/d^j because phi fixes d;
    moving it out makes the residual vanish on every pure difference."""
    from .summation import abramov_summable_x, q_summable_x
    summable = abramov_summable_x if phi == PHI_SHIFT else q_summable_x
    g_extra = RatFunc(0, mode)
    rest = []
    for t in terms:
        b = None
        if t.den.free_of(x):
            b = _lift_coefficientwise(t.num, summable, mode)
        if b is None:
            rest.append(t)
        else:
            g_extra = g_extra + b / RatFunc(t.den.expr ** t.j, mode)
    return g_extra, tuple(rest)


def phi_dy_reduced_form(f: RatFunc, phi: str = PHI_SHIFT) -> ReducedForm:
    """Hermite reduction followed by x-direction orbit collapse of the
    simple residual; phi is the shift or (non-root-of-unity) q-shift."""
    mode = f.mode
    if phi == PHI_QSHIFT:
        if mode.kind not in (TRANSCENDENTAL, RATIONAL):
            raise QModeMismatch(
                "q-shift reduced form requires q not a root of unity")
        flavor = FLAVOR_TQ_DY
    else:
        flavor = FLAVOR_SX_DY
    h, simple = hermite_reduce_y(f)
    dens = []
    for t in simple:
        if all(not (t.den == d) for d in dens):
            dens.append(t.den)
    groups = _x_orbit_groups(dens, phi, mode)
    g = RatFunc(0, mode)
    buckets = []

    def bucket_add(d, a):
        for i, (d2, a2) in enumerate(buckets):
            if d2 == d:
                buckets[i] = (d2, a2 + a)
                return
        buckets.append((d, a))

    for rep, members in groups:
        for t in simple:
            match = next(((off, sc) for d, off, sc in members
                          if d == t.den), None)
            if match is None:
                continue
            off, sc = match
            A = t.num * RatFunc(sc, mode)
            u, _, collapsed = orbit_collapse(A, rep, 1, off, 0, phi, "shift_y")
            g = g + u
            bucket_add(rep, collapsed.num)
    terms = tuple(PfdTerm(a, d, 1) for d, a in buckets if not a.is_zero)
    g_extra, terms = _absorb_summable(terms, phi, mode)
    return ReducedForm(g + g_extra, h, terms, flavor)


def tau_sigma_reduced_form(f: RatFunc) -> ReducedForm:
    """Abramov reduction in y followed by joint (tau_{x,q}, sigma_y)-orbit
    collapse; requires q not a root of unity."""
    mode = f.mode
    if mode.kind not in (TRANSCENDENTAL, RATIONAL):
        raise QModeMismatch(
            "(tau, sigma_y)-reduced form requires q not a root of unity")
    h, terms0 = abramov_reduce_y(f)
    dens = []
    for t in terms0:
        if all(not (t.den == d) for d in dens):
            dens.append(t.den)
    groups = []
    for d in dens:
        placed = False
        for grp in groups:
            w = joint_equivalent(grp["rep"], d)
            if w is not None:
                grp["members"].append((d, w))
                placed = True
                break
        if not placed:
            groups.append({"rep": d,
                           "members": [(d, joint_equivalent(d, d))]})
    g = RatFunc(0, mode)
    buckets = []

    def bucket_add(d, j, a):
        for i, (d2, j2, a2) in enumerate(buckets):
            if j2 == j and d2 == d:
                buckets[i] = (d2, j2, a2 + a)
                return
        buckets.append((d, j, a))

    for grp in groups:
        m0 = min(w.m for _, w in grp["members"])
        n0 = min(w.n for _, w in grp["members"])
        rep = grp["rep"].qshift_x(m0).shift(y, n0)
        _, rep = rep.canonical()
        for t in terms0:
            if all(not (t.den == d) for d, _ in grp["members"]):
                continue
            w = joint_equivalent(rep, t.den)
            if w is None or w.m < 0 or w.n < 0:  # pragma: no cover
                raise RatexactError("orbit re-basing failed")
            A = t.num * RatFunc(w.scale ** t.j, mode)
            u, v, collapsed = orbit_collapse(A, rep, t.j, w.m, w.n,
                                             PHI_QSHIFT, "shift_y")
            g = g + u
            h = h + v
            bucket_add(rep, t.j, collapsed.num)
    terms = tuple(PfdTerm(a, d, j) for d, j, a in buckets if not a.is_zero)
    g_extra, terms = _absorb_summable(terms, PHI_QSHIFT, mode)
    return ReducedForm(g + g_extra, h, terms, FLAVOR_TQ_SY)


def trace_xm(f: RatFunc, m: int) -> RatFunc:
    """Sum of the m q-shift conjugates of f when q is a primitive m-th
    root of unity; the result is tau-invariant."""
    mode = f.mode
    if mode.kind != ROOT_OF_UNITY or mode.order != m:
        raise QModeMismatch("trace requires QMode root_of_unity(%d)" % m)
    acc = f
    for i in range(1, m):
        acc = acc + f.qshift_x(i)
    return acc


def tau_reduced_root_of_unity(f: RatFunc, m: int):
    """(g, c) with f = tau(g) - g + c, c tau-invariant (= trace/m); f is
    tau-summable iff c = 0.  The certificate is the explicit averaging
    g = (1/m) sum_{i=1}^{m-1} i * tau^i(f - c), re-verified before return.
    """
    c = trace_xm(f, m) / m
    f0 = f - c
    g = RatFunc(0, f.mode)
    for i in range(1, m):
        g = g + f0.qshift_x(i) * sp.Rational(i, m)
    if not (g.qshift_x(1) - g + c == f):  # pragma: no cover - construction
        raise RatexactError("root-of-unity reduction failed to recompose")
    return g, c
