"""Exactness deciders for the mixed operator pairs, certificate
verification, and a bounded linear-algebra search oracle.

A rational function f is exact for a pair (dx, dy) when f = dx(g) + dy(h)
has a rational solution.  Each decider computes the matching reduced form,
inspects the residual (denominators must be free of x, residues must be
univariately (q-)summable), assembles the full certificate when exact, and
re-verifies it by exact recomposition before returning.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import sympy as sp

from .core import BiPoly, RatFunc
from .errors import QModeMismatch, RatexactError
from .qmodes import (PLAIN, RATIONAL, ROOT_OF_UNITY, TRANSCENDENTAL,
                     q, x, y)
from .reductions import (PHI_QSHIFT, PHI_SHIFT, _lift_coefficientwise,
                         abramov_reduce_y, hermite_reduce_y,
                         phi_dy_reduced_form, tau_sigma_reduced_form,
                         tau_reduced_root_of_unity)
from .residues import PfdTerm
from .summation import abramov_summable_x, q_summable_x

SHIFT_X_DERIV_Y = "shift_x:deriv_y"
QSHIFT_X_DERIV_Y = "qshift_x:deriv_y"
QSHIFT_X_SHIFT_Y = "qshift_x:shift_y"
ROU_DERIV_Y = "rou:deriv_y"
ROU_SHIFT_Y = "rou:shift_y"

_PAIRS = (SHIFT_X_DERIV_Y, QSHIFT_X_DERIV_Y, QSHIFT_X_SHIFT_Y,
          ROU_DERIV_Y, ROU_SHIFT_Y)


def operator_pair(token, mode):
    """Resolve a CLI pair token against the q-mode.

    dx-dy needs no q; dqx-dy and dqx-sy route to the root-of-unity
    deciders when q is a root of unity.
    """
    rou = mode.kind == ROOT_OF_UNITY
    if token == "dx-dy":
        return SHIFT_X_DERIV_Y
    if token == "dqx-dy":
        if not mode.has_q:
            raise QModeMismatch("pair dqx-dy requires a q")
        return ROU_DERIV_Y if rou else QSHIFT_X_DERIV_Y
    if token == "dqx-sy":
        if not mode.has_q:
            raise QModeMismatch("pair dqx-sy requires a q")
        return ROU_SHIFT_Y if rou else QSHIFT_X_SHIFT_Y
    raise ValueError("unknown pair %r" % (token,))


@dataclass(frozen=True)
class MixedDenominator:
    """Residual denominator genuinely involving x: never exact."""

    den: BiPoly

    kind = "mixed_denominator"


@dataclass(frozen=True)
class NonSummableResidue:
    """A y-free residual denominator whose residue fails the univariate
    (q-)summability test."""

    den: BiPoly
    j: int
    residue: RatFunc

    kind = "non_summable_residue"


@dataclass(frozen=True)
class Decision:
    exact: bool
    certificate: Optional[Tuple[RatFunc, RatFunc]] = None
    witness: Optional[object] = None
    pair: Optional[str] = None


def verify_certificate(f: RatFunc, g: RatFunc, h: RatFunc, pair) -> bool:
    """True iff dx(g) + dy(h) == f by exact rational arithmetic."""
    if pair == SHIFT_X_DERIV_Y:
        lhs = (g.shift_x(1) - g) + h.deriv_y()
    elif pair in (QSHIFT_X_DERIV_Y, ROU_DERIV_Y):
        lhs = (g.qshift_x(1) - g) + h.deriv_y()
    elif pair in (QSHIFT_X_SHIFT_Y, ROU_SHIFT_Y):
        lhs = (g.qshift_x(1) - g) + (h.shift_y(1) - h)
    else:
        raise ValueError("unknown pair %r" % (pair,))
    return lhs == f


def _decide_reduced_terms(f, terms, reduction_g, reduction_h, pair,
                          summable, mode):
    """Shared residual inspection for the (phi, Dy) and (tau, sigma_y)
    deciders."""
    g = reduction_g
    for t in terms:
        if not t.den.free_of(x):
            return Decision(False, witness=MixedDenominator(t.den),
                            pair=pair)
        b = _lift_coefficientwise(t.num, summable, mode)
        if b is None:
            return Decision(False,
                            witness=NonSummableResidue(t.den, t.j, t.num),
                            pair=pair)
        g = g + b / RatFunc(t.den.expr ** t.j, mode)
    if not verify_certificate(f, g, reduction_h, pair):  # pragma: no cover
        raise RatexactError("assembled certificate failed verification")
    return Decision(True, certificate=(g, reduction_h), pair=pair)


def _invariant_to_w(c: RatFunc, m: int) -> RatFunc:
    """Rewrite a tau-invariant rational function as a function of w = x^m,
    returned with x standing for w."""
    mode = c.mode
    if m == 1:
        return c
    num, den = c.num.expr, c.den.expr
    for i in range(1, m):
        conj = BiPoly(den, mode).qshift_x(i).expr
        num = sp.expand(num * conj)
        den = sp.expand(den * conj)
    out = []
    for expr in (num, den):
        p = sp.Poly(expr, x, y, domain=mode.coeff_domain())
        acc = sp.Integer(0)
        for (i, j), coeff in p.terms():
            if i % m:
                raise RatexactError("trace is not a function of x^%d" % m)
            acc += coeff * x ** (i // m) * y ** j
        out.append(acc)
    return RatFunc.from_pair(out[0], out[1], mode)


def _pull_back(r: RatFunc, m: int) -> RatFunc:
    return RatFunc(r.as_expr().subs(x, x ** m), r.mode) if m != 1 else r


def _decide_root_of_unity(f: RatFunc, pair) -> Decision:
    mode = f.mode
    m = mode.order
    g0, c = tau_reduced_root_of_unity(f, m)
    cw = _invariant_to_w(c, m)
    if pair == ROU_DERIV_Y:
        hw, terms = hermite_reduce_y(cw)
    else:
        hw, terms = abramov_reduce_y(cw)
    if terms:
        t = terms[0]
        return Decision(False,
                        witness=NonSummableResidue(
                            BiPoly(t.den.expr.subs(x, x ** m), mode), t.j,
                            _pull_back(t.num, m)),
                        pair=pair)
    h = _pull_back(hw, m)
    if not verify_certificate(f, g0, h, pair):  # pragma: no cover
        raise RatexactError("root-of-unity certificate failed verification")
    return Decision(True, certificate=(g0, h), pair=pair)


def decide_exact(f: RatFunc, pair) -> Decision:
    """Decide exactness of f for the given operator pair, returning a
    verified certificate or a non-exactness witness."""
    mode = f.mode
    if pair not in _PAIRS:
        raise ValueError("unknown pair %r" % (pair,))
    if pair == SHIFT_X_DERIV_Y:
        rf = phi_dy_reduced_form(f, PHI_SHIFT)
        return _decide_reduced_terms(f, rf.terms, rf.g, rf.h, pair,
                                     abramov_summable_x, mode)
    if pair == QSHIFT_X_DERIV_Y:
        rf = phi_dy_reduced_form(f, PHI_QSHIFT)
        return _decide_reduced_terms(f, rf.terms, rf.g, rf.h, pair,
                                     q_summable_x, mode)
    if pair == QSHIFT_X_SHIFT_Y:
        rf = tau_sigma_reduced_form(f)
        return _decide_reduced_terms(f, rf.terms, rf.g, rf.h, pair,
                                     q_summable_x, mode)
    if mode.kind != ROOT_OF_UNITY:
        raise QModeMismatch("root-of-unity pair requires q = zeta_m")
    return _decide_root_of_unity(f, pair)


# -- bounded brute-force oracle ---------------------------------------

def _hull_candidates(factors, equiv, translate, R):
    """Candidate denominator factors for one certificate component.

    Factors of the input denominator are grouped into operator orbits;
    for each orbit every translate between the smallest and largest
    occurring offset (clipped to radius R) is a candidate, at one above
    the orbit's largest multiplicity.  A certificate whose poles stay
    within radius R of the input's can always be rewritten with poles in
    this hull, since applying the operator to any pole produces both the
    pole and its immediate translate.
    """
    groups = []
    for p, e in factors:
        for grp in groups:
            w = equiv(grp[0], p)
            if w is not None:
                grp[1].add(w[0])
                grp[2] = max(grp[2], e)
                break
        else:
            groups.append([p, {0}, e])
    out = []
    for rep, offs, top in groups:
        lo, hi = max(min(offs), -R), min(max(offs), R)
        for t in range(lo, hi + 1):
            _, cand = translate(rep, t).canonical()
            out.append((cand, top + 1))
    return out


def _solve_linear(rows, ncols, K):
    """Particular solution of the augmented system rows (each a list of
    K-elements, last entry the rhs), or None if inconsistent."""
    from sympy.polys.matrices import DomainMatrix
    A = DomainMatrix(rows, (len(rows), ncols + 1), K)
    rref, pivots = A.rref()
    if ncols in pivots:
        return None
    sol = [K.zero] * ncols
    rref_list = rref.to_list()
    for r, c in enumerate(pivots):
        sol[c] = rref_list[r][ncols]
    return sol


def brute_force_exact(f: RatFunc, pair, R=4, D=4):
    """Search for a certificate with denominators built from operator
    translates (radius R) of the denominator's factors at multiplicity
    one above the input's, and numerators of total degree <= D, by
    solving the resulting linear system exactly.  Independent of the
    theorem-based deciders; returns a verified (g, h) or None.
    """
    from .factorization import factor as factor_poly
    from .orbits import q_equivalent, shift_equivalent
    mode = f.mode
    if pair == SHIFT_X_DERIV_Y:
        equiv_x = lambda a, b: shift_equivalent(a, b, x)
        op_x = lambda p, t: p.shift(x, t)
        dx = lambda r: r.shift_x(1) - r
    else:
        equiv_x = q_equivalent
        op_x = lambda p, t: p.qshift_x(t)
        dx = lambda r: r.qshift_x(1) - r
    deriv_flavor = pair in (SHIFT_X_DERIV_Y, QSHIFT_X_DERIV_Y, ROU_DERIV_Y)
    if deriv_flavor:
        dy = lambda r: r.deriv_y()
    elif pair in (QSHIFT_X_SHIFT_Y, ROU_SHIFT_Y):
        dy = lambda r: r.shift_y(1) - r
    else:
        raise ValueError("unknown pair %r" % (pair,))

    den_g = BiPoly(1, mode)
    den_h = BiPoly(1, mode)
    if not f.den == BiPoly(1, mode):
        factors = factor_poly(f.den).factors
        for cand, mult in _hull_candidates(factors, equiv_x, op_x, R):
            den_g = den_g * cand ** mult
        if deriv_flavor:
            for p, e in factors:
                den_h = den_h * p ** (e + 1)
        else:
            for cand, mult in _hull_candidates(
                    factors, lambda a, b: shift_equivalent(a, b, y),
                    lambda p, t: p.shift(y, t), R):
                den_h = den_h * cand ** mult

    def _monoms(den):
        bound = D + sp.Poly(den.expr, x, y).total_degree()
        return [x ** i * y ** j
                for i in range(bound + 1) for j in range(bound + 1 - i)]

    monoms_g, monoms_h = _monoms(den_g), _monoms(den_h)
    basis = []
    for mu in monoms_g:
        basis.append(dx(RatFunc.from_pair(mu, den_g.expr, mode)))
    for mu in monoms_h:
        basis.append(dy(RatFunc.from_pair(mu, den_h.expr, mode)))

    # common denominator across the basis and f
    ext = mode.extension
    L = sp.Integer(1)
    for r in basis + [f]:
        d = r.den.expr
        gcd = sp.gcd(L, d, extension=ext) if ext is not None \
            else sp.gcd(L, d)
        L = sp.expand(sp.cancel(L * d / gcd))
    gens_domain = mode.coeff_domain()
    cleared = []
    for r in basis + [f]:
        p = sp.cancel(r.num.expr * sp.cancel(L / r.den.expr))
        cleared.append(sp.Poly(p, x, y, domain=gens_domain))
    target = cleared.pop()

    support = set()
    for p in cleared + [target]:
        support.update(p.monoms())
    support = sorted(support)
    K = gens_domain
    rows = []
    for mon in support:
        row = [p.coeff_monomial(mon) or sp.Integer(0) for p in cleared]
        row.append(target.coeff_monomial(mon) or sp.Integer(0))
        rows.append([K.from_sympy(sp.sympify(e)) for e in row])

    if mode.kind == TRANSCENDENTAL:
        # cheap generic-specialization pre-check over Q
        from sympy import QQ
        for q0 in (sp.Rational(9, 7), sp.Rational(5, 3)):
            try:
                spec_rows = [[QQ.from_sympy(K.to_sympy(e).subs(q, q0))
                              for e in row] for row in rows]
            except Exception:  # q0 hits a coefficient pole; try the next
                continue
            if _solve_linear(spec_rows, len(basis), QQ) is None:
                return None
            break

    sol = _solve_linear(rows, len(basis), K)
    if sol is None:
        return None
    ng = len(monoms_g)
    gnum = sum((K.to_sympy(sol[i]) * monoms_g[i] for i in range(ng)),
               sp.Integer(0))
    hnum = sum((K.to_sympy(sol[ng + i]) * monoms_h[i]
                for i in range(len(monoms_h))), sp.Integer(0))
    g = RatFunc.from_pair(gnum, den_g.expr, mode)
    h = RatFunc.from_pair(hnum, den_h.expr, mode)
    if not verify_certificate(f, g, h, pair):  # pragma: no cover
        raise RatexactError("oracle certificate failed verification")
    return g, h
