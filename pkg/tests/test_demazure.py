import random

import pytest
from hypothesis import given, settings

from conftest import X3, poly_strategy
from qschur.demazure import (demazure, demazure_longest, demazure_shuffle, demazure_simple, demazure_word,
                             staircase)
from qschur.permcomb import longest, reduced_word, shuffle_perm
from qschur.ring import NotDivisible, Poly, RingSignature, is_invariant, parse_poly, swap

XC = RingSignature.of(("x", 2), ("c", 2, "square-zero"))


def x(text, sig=X3):
    return parse_poly(text, sig)


def test_simple_examples():
    assert demazure_simple(1, ("x",), x("x1")) == Poly.one(X3)
    assert demazure_simple(1, ("x",), x("x1*x2")) == Poly.zero(X3)
    P = parse_poly("c1*(x1 - x2 - c1 - c2)", XC)
    assert demazure_simple(1, ("x", "c"), P) == parse_poly("c1 + c2", XC)


def test_shuffle_examples():
    assert demazure_shuffle(1, 1, ("x",), x("x1")) == Poly.one(X3)
    # d_{2,1} = d_1 d_2 on x3^2: d_2 gives -(x2+x3), then d_1 gives 1
    assert reduced_word(shuffle_perm(2, 1)) == [1, 2]
    assert demazure_simple(2, ("x",), x("x3^2")) == x("-x2 - x3")
    assert demazure_shuffle(2, 1, ("x",), x("x3^2")) == Poly.one(X3)
    assert demazure_shuffle(2, 1, ("x",), Poly.one(X3)) == Poly.zero(X3)
    assert demazure_shuffle(3, 0, ("x",), x("x1")) == x("x1")


def test_staircase():
    sig = RingSignature.of(("x", 3))
    assert staircase(sig, 1) == Poly.one(sig)
    assert staircase(sig, 2) == parse_poly("x1", sig)
    assert staircase(sig, 3) == parse_poly("x1^2*x2", sig)


@pytest.mark.parametrize("n", range(1, 7))
def test_longest_on_staircase(n):
    sig = RingSignature.of(("x", n))
    assert demazure_longest(n, ("x",), staircase(sig, n)) == Poly.one(sig)


def test_not_divisible_surfaces():
    from qschur.ring import exact_div

    with pytest.raises(NotDivisible):
        exact_div(parse_poly("c1 - c2", XC), parse_poly("x1 - x2", XC))


@settings(max_examples=60, deadline=None)
@given(poly_strategy(X3, max_exp=4))
def test_square_zero_and_braid(P):
    for r in (1, 2):
        assert not demazure_simple(r, ("x",), demazure_simple(r, ("x",), P))
    d = lambda r, Q: demazure_simple(r, ("x",), Q)
    assert d(1, d(2, d(1, P))) == d(2, d(1, d(2, P)))


@settings(max_examples=60, deadline=None)
@given(poly_strategy(X3), poly_strategy(X3))
def test_twisted_leibniz(P, Q):
    for r in (1, 2):
        d = lambda F: demazure_simple(r, ("x",), F)
        assert d(P * Q) == d(P) * Q + swap(P, r, ("x",)) * d(Q)


@settings(max_examples=40, deadline=None)
@given(poly_strategy(X3, max_exp=4))
def test_longest_word_independent(P):
    w0 = longest(3)
    assert demazure(w0, ("x",), P) == demazure_word([2, 1, 2], ("x",), P) == demazure_word([1, 2, 1], ("x",), P)


@pytest.mark.parametrize("seed", range(10))
def test_shuffle_output_is_symmetric(seed):
    from itertools import permutations

    from qschur.ring import permute_action

    rng = random.Random(seed)
    n = rng.randint(2, 5)
    a = rng.randint(1, n - 1)
    sig = RingSignature.of(("x", n))
    P = Poly.zero(sig)
    for _ in range(2):
        m = Poly.const(sig, rng.randint(1, 4))
        for i in range(1, n + 1):
            m = m * Poly.var(sig, "x", i) ** rng.randint(0, 2)
        P = P + m
    sym = Poly.zero(sig)
    for left in permutations(range(1, a + 1)):
        for right in permutations(range(a + 1, n + 1)):
            sym = sym + permute_action(left + right, ("x",), P)
    out = demazure_shuffle(a, n - a, ("x",), sym)
    assert is_invariant(out, (n,), ("x",))
