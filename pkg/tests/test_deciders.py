"""Exactness decisions, witness shapes, certificate verification, and
agreement with the linear-algebra search oracle."""

import random

import sympy as sp

from ratexact import (RatFunc, decide_exact, verify_certificate,
                      brute_force_exact, plain, transcendental,
                      root_of_unity, rational)
from ratexact.deciders import (SHIFT_X_DERIV_Y, QSHIFT_X_DERIV_Y,
                               QSHIFT_X_SHIFT_Y, ROU_DERIV_Y, ROU_SHIFT_Y,
                               MixedDenominator, NonSummableResidue)
from ratexact.qmodes import q, x, y

P = plain()
T = transcendental()


def _apply(pair, g, h):
    if pair == SHIFT_X_DERIV_Y:
        return (g.shift_x(1) - g) + h.deriv_y()
    if pair == QSHIFT_X_DERIV_Y or pair == ROU_DERIV_Y:
        return (g.qshift_x(1) - g) + h.deriv_y()
    return (g.qshift_x(1) - g) + (h.shift_y(1) - h)


# -- the four decisions with explicit witnesses -----------------------

def test_mixed_pole_blocks_shift_deriv():
    d = decide_exact(RatFunc.from_pair(1, x + y, P), SHIFT_X_DERIV_Y)
    assert not d.exact
    assert isinstance(d.witness, MixedDenominator)


def test_split_pole_blocks_on_residue():
    d = decide_exact(RatFunc.from_pair(1, x * y, P), SHIFT_X_DERIV_Y)
    assert not d.exact
    assert isinstance(d.witness, NonSummableResidue)
    assert d.witness.residue == RatFunc.from_pair(1, x, P)


def test_mixed_pole_blocks_qshift_shift():
    d = decide_exact(RatFunc.from_pair(1, x + y, T), QSHIFT_X_SHIFT_Y)
    assert not d.exact


def test_split_pole_exact_in_q_world():
    f = RatFunc.from_pair(1, x * y, T)
    d = decide_exact(f, QSHIFT_X_SHIFT_Y)
    assert d.exact
    g, h = d.certificate
    assert verify_certificate(f, g, h, QSHIFT_X_SHIFT_Y)
    # the closed-form certificate with h = 0 also verifies
    g0 = RatFunc(q / ((1 - q) * x * y), T)
    assert verify_certificate(f, g0, RatFunc(0, T), QSHIFT_X_SHIFT_Y)


def test_shift_deriv_exact_example():
    f = RatFunc.from_pair(1, x * (x + 1) * y, P)
    d = decide_exact(f, SHIFT_X_DERIV_Y)
    assert d.exact
    assert verify_certificate(f, *d.certificate, SHIFT_X_DERIV_Y)


def test_wrong_certificate_rejected():
    f = RatFunc.from_pair(1, x * (x + 1) * y, P)
    bad = RatFunc.from_pair(1, x, P)
    assert not verify_certificate(f, bad, RatFunc(0, P), SHIFT_X_DERIV_Y)


# -- invariance properties -------------------------------------------

def _constructed(rng, mode, pair):
    pool = [x, y, x + 1, y + 1, x + y, x * y - 1, x * y + 1]
    def rand():
        den = sp.prod([rng.choice(pool) for _ in range(rng.randint(1, 2))])
        num = rng.randint(-9, 9) or 1
        return RatFunc.from_pair(num, den, mode)
    g, h = rand(), rand()
    return _apply(pair, g, h), g, h


def test_constructed_exact_decided_exact():
    rng = random.Random(21)
    for pair, mode in ((SHIFT_X_DERIV_Y, P), (QSHIFT_X_DERIV_Y, T),
                       (QSHIFT_X_SHIFT_Y, T)):
        for _ in range(5):
            f, _, _ = _constructed(rng, mode, pair)
            d = decide_exact(f, pair)
            assert d.exact
            assert verify_certificate(f, *d.certificate, pair)


def test_decision_invariant_under_x_translation():
    f = RatFunc.from_pair(1, x * y, P)
    for n in (1, -2, 5):
        shifted = f.shift_x(n)
        assert not decide_exact(shifted, SHIFT_X_DERIV_Y).exact


def test_exactness_linear():
    # exact + exact stays exact; exact + non-exact stays non-exact
    f1 = RatFunc.from_pair(1, x * (x + 1) * y, P)
    f2 = RatFunc.from_pair(1, x * y ** 2, P)
    bad = RatFunc.from_pair(1, x * y, P)
    assert decide_exact(f1 + f2, SHIFT_X_DERIV_Y).exact
    assert not decide_exact(f1 + bad, SHIFT_X_DERIV_Y).exact


def test_multiplicity_slices_independent():
    # a non-summable residue at multiplicity 2 blocks exactness even
    # when the multiplicity-1 slice is clean (1/(xy) is exact here)
    f = RatFunc.from_pair(1, y ** 2, T) \
        + RatFunc.from_pair(1, x * y, T)
    d = decide_exact(f, QSHIFT_X_SHIFT_Y)
    assert not d.exact
    assert isinstance(d.witness, NonSummableResidue)
    assert d.witness.j == 2


# -- root-of-unity decisions -----------------------------------------

def test_rou_monomial_exact():
    M = root_of_unity(2)
    f = RatFunc.from_pair(x, y, M)
    d = decide_exact(f, ROU_DERIV_Y)
    assert d.exact
    assert verify_certificate(f, *d.certificate, ROU_DERIV_Y)


def test_rou_invariant_not_exact():
    M = root_of_unity(2)
    assert not decide_exact(RatFunc.from_pair(1, y, M), ROU_DERIV_Y).exact


def test_rou_shift_y_exact():
    M = root_of_unity(2)
    f = RatFunc.from_pair(1, y * (y + 1), M)
    d = decide_exact(f, ROU_SHIFT_Y)
    assert d.exact
    assert verify_certificate(f, *d.certificate, ROU_SHIFT_Y)


def test_rou_m4_power_exact():
    M = root_of_unity(4)
    f = RatFunc.from_pair(x ** 2, y, M)
    d = decide_exact(f, ROU_DERIV_Y)
    assert d.exact
    assert verify_certificate(f, *d.certificate, ROU_DERIV_Y)
    assert not decide_exact(RatFunc.from_pair(x ** 4, y, M),
                            ROU_DERIV_Y).exact


def test_rational_q_mode():
    M = rational(sp.Rational(2, 3))
    f = RatFunc.from_pair(1, x * y, M)
    d = decide_exact(f, QSHIFT_X_SHIFT_Y)
    assert d.exact
    assert verify_certificate(f, *d.certificate, QSHIFT_X_SHIFT_Y)


# -- oracle agreement ------------------------------------------------

def test_brute_force_agrees_on_examples():
    cases = [
        (RatFunc.from_pair(1, x + y, P), SHIFT_X_DERIV_Y),
        (RatFunc.from_pair(1, x * y, P), SHIFT_X_DERIV_Y),
        (RatFunc.from_pair(1, x * (x + 1) * y, P), SHIFT_X_DERIV_Y),
        (RatFunc.from_pair(1, x * y, T), QSHIFT_X_SHIFT_Y),
    ]
    for f, pair in cases:
        found = brute_force_exact(f, pair)
        decided = decide_exact(f, pair)
        assert (found is not None) == decided.exact
        if found is not None:
            assert verify_certificate(f, *found, pair)


def test_brute_force_certificate_verifies():
    f = RatFunc.from_pair(1, x * y ** 2, T)
    found = brute_force_exact(f, QSHIFT_X_DERIV_Y)
    assert found is not None
    assert verify_certificate(f, *found, QSHIFT_X_DERIV_Y)
