import random

import pytest
import sympy

from conftest import to_sympy
from qschur.kronecker import (assoc_triples, associativity_pair, coupon_action, kspace, merge_action, naive_crossing,
                              split_action, uv_signature)
from qschur.operator import BoundaryError, compare, compose, identity
from qschur.permcomb import reduced_word, shuffle_perm
from qschur.ring import Poly, RingError, is_invariant, parse_poly

D, A0, A1 = (1, 1), (1, 0), (0, 1)


def up(text, v):
    return parse_poly(text, uv_signature(v))


# ---------------------------------------------------------------- table values

def test_split_delta_m():
    S = split_action("m", (D,), 1, A0, A1)
    assert S.degshift == 2
    for t in ("1", "u1+v1", "u1*v1"):
        assert S(up(t, D)) == up(f"(u1-v1)*({t})", D)


def test_split_standard_is_identity():
    for beta, l, r in [((D,), A0, A1), (((2, 2),), D, D), (((2, 1),), A0, D)]:
        S = split_action("s", beta, 1, l, r)
        v = beta[0]
        assert S(up("u1+1", v)) == up("u1+1", v) and S.degshift == 0


def test_split_two_delta_m():
    S = split_action("m", ((2, 2),), 1, D, D)
    assert S(Poly.one(uv_signature((2, 2)))) == up("u1-v2", (2, 2))


def test_merge_delta_m_is_identity():
    M = merge_action("m", (A0, A1), 1)
    for t in ("1", "u1", "v1^2*u1"):
        assert M(up(t, D)) == up(t, D)


def test_merge_two_delta_m():
    M = merge_action("m", (D, D), 1)
    assert M(Poly.one(uv_signature((2, 2)))) == Poly.zero(uv_signature((2, 2)))
    assert M(up("u1", (2, 2))) == up("-1", (2, 2))


def test_naive_crossing_example():
    X = compose(merge_action("m", (A0, A1), 1), split_action("m", (D,), 1, A0, A1))
    assert X(up("u1", D)) == up("(u1-v1)*u1", D)


def test_coupons():
    sp = kspace((D,))
    assert coupon_action((D,), Poly.one(sp.sig))(up("u1", D)) == up("u1", D)
    assert coupon_action((D,), up("u1+v1", D))(up("u1", D)) == up("u1^2+u1*v1", D)
    with pytest.raises(RingError):
        coupon_action(((2, 2),), up("u1", (2, 2)))


def test_boundary_errors():
    with pytest.raises(BoundaryError):
        split_action("m", (D,), 1, A0, A0)
    with pytest.raises(BoundaryError):
        compose(split_action("m", (D,), 1, A0, A1), split_action("m", (D,), 1, A0, A1))


def test_compose_with_identity():
    S = split_action("m", (D,), 1, A0, A1)
    assert compare(compose(S, identity(S.source)), S, 6)


# ---------------------------------------------------------------- sympy oracle for merges


def _sym_demazure(expr, xs, word):
    for r in reversed(word):
        a, b = xs[r - 1], xs[r]
        swapped = expr.subs({a: b, b: a}, simultaneous=True)
        expr = sympy.cancel((expr - swapped) / (a - b))
    return sympy.expand(expr)


def merge_oracle(variant, left, right, P):
    """Merge of two blocks computed with sympy from the table formulas."""
    a, b = left
    c, d = right
    n0, n1 = a + c, b + d
    u = sympy.symbols(f"u1:{n0 + 1}") if n0 else ()
    v = sympy.symbols(f"v1:{n1 + 1}") if n1 else ()
    expr, _ = to_sympy(P)
    K1 = sympy.prod([u[i] - v[j] for i in range(a) for j in range(b, b + d)])
    K2 = sympy.prod([v[j] - u[i] for i in range(a, a + c) for j in range(b)])
    if variant == "m":
        expr, sign = K2 * expr, (-1) ** (b * c)
    elif variant == "n":
        sign = 1
    else:
        expr, sign = K1 * K2 * expr, (-1) ** (a * d + b * c)
    if a and c:
        expr = _sym_demazure(expr, u, reduced_word(shuffle_perm(a, c)))
    if b and d:
        expr = _sym_demazure(expr, v, reduced_word(shuffle_perm(b, d)))
    return sympy.expand(sign * expr)


MERGE_CASES = [(l, r) for l in [(1, 0), (0, 1), (1, 1), (2, 0), (1, 2)] for r in [(1, 0), (0, 1), (1, 1), (0, 2)]
               if sum(l) + sum(r) <= 4]


@pytest.mark.parametrize("variant", ["s", "m", "n"])
@pytest.mark.parametrize("left,right", MERGE_CASES)
def test_merge_matches_oracle(variant, left, right):
    M = merge_action(variant, (left, right), 1)
    for P in M.source.basis(4):
        got, _ = to_sympy(M(P))
        assert sympy.expand(got - merge_oracle(variant, left, right, P)) == 0
        assert M.target.contains(M(P))


# ---------------------------------------------------------------- structural properties


@pytest.mark.parametrize("variant", ["s", "m", "n"])
def test_associativity_small(variant):
    for triple in assoc_triples(3):
        for kind in ("split", "merge"):
            f, g = associativity_pair(variant, triple, kind)
            assert compare(f, g, 8), (triple, kind)


@pytest.mark.parametrize("variant", ["s", "m", "n"])
def test_lambda_linear_and_graded(variant):
    rng = random.Random(variant)
    beta = (D, (1, 0), (0, 1))
    ops = [merge_action(variant, beta, 1), merge_action(variant, beta, 2), naive_crossing(variant, beta, 2)]
    for op in ops:
        sig = op.source.sig
        e = sum((Poly.var(sig, "u", i) for i in range(1, 3)), Poly.zero(sig))
        for P in rng.sample(op.source.basis(6), 10):
            out = op(P)
            assert op(e * P) == e * out
            assert op.target.contains(out)
            if P.is_homogeneous() and out:
                assert out.degree() - P.degree() == op.degshift
