import itertools
import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import X3, XC2, poly_strategy, reduce_square_zero, to_sympy
from qschur import kernels
from qschur import _purekernels
from qschur.ring import (NotDivisible, ParseError, Poly, RingError, RingSignature, exact_div, is_invariant,
                         monomial_basis, parse_poly, permute_action, swap)

UV = RingSignature.of(("u", 1), ("v", 1))
UV2 = RingSignature.of(("u", 2), ("v", 2))


def p(text, sig=XC2):
    return parse_poly(text, sig)


# ---------------------------------------------------------------- examples

def test_permute_swaps_x_and_c_together():
    assert permute_action((2, 1), ("x", "c"), p("x1*c2")) == p("x2*c1")


def test_permute_fixes_symmetric():
    assert permute_action((2, 1), ("x",), p("x1+x2")) == p("x1+x2")


def test_permute_leaves_untargeted_family():
    sig = RingSignature.of(("u", 2), ("v", 1))
    assert permute_action((2, 1), ("u",), parse_poly("u1^2*v1", sig)) == parse_poly("u2^2*v1", sig)


def test_permute_count_mismatch():
    with pytest.raises(RingError):
        permute_action((2, 1, 3), ("x",), p("x1"))


def test_exact_div_difference_of_squares():
    assert exact_div(p("x1^2-x2^2"), p("x1-x2")) == p("x1+x2")


def test_exact_div_with_classes():
    assert exact_div(p("(c1+c2)*(x1-x2)"), p("x1-x2")) == p("c1+c2")


def test_exact_div_not_divisible():
    with pytest.raises(NotDivisible):
        exact_div(p("c1-c2"), p("x1-x2"))


def test_exact_div_long_division():
    D = p("x1^2 + x2*c1 + 3")
    Q = p("x1*x2 - 2*c2 + 5")
    assert exact_div(Q * D, D) == Q


def test_is_invariant_examples():
    assert is_invariant(parse_poly("u1+u2", UV2), (2,), ("u",))
    assert not is_invariant(parse_poly("u1", UV2), (2,), ("u",))
    assert is_invariant(parse_poly("u1*u2+v1", UV2), (2,), ("u",))


def test_monomial_basis_examples():
    sig = RingSignature.of(("x", 1), ("c", 1, "square-zero"))
    assert monomial_basis(sig, None, 2) == [Poly.one(sig), parse_poly("x1", sig), parse_poly("c1", sig)]
    assert monomial_basis(sig, None, 0) == [Poly.one(sig)]
    sig2 = RingSignature.of(("x", 2))
    got = {str(b) for b in monomial_basis(sig2, (2,), 4)}
    assert got == {"1", "x1 + x2", "x1^2 + x2^2", "x1*x2"}


@pytest.mark.parametrize("n,d", [(1, 3), (2, 4), (3, 3), (4, 2)])
def test_monomial_basis_counts_binomial(n, d):
    sig = RingSignature.of(("x", n))
    basis = monomial_basis(sig, None, 2 * d)
    assert sum(1 for b in basis if b.degree() == 2 * d) == math.comb(n + d - 1, d)


def test_square_zero():
    c1 = Poly.var(XC2, "c", 1)
    assert c1 * c1 == Poly.zero(XC2)
    assert Poly.from_exponents(XC2, (0, 0, 2, 0)) == Poly.zero(XC2)


def test_degree_is_cohomological():
    assert p("x1^2*c2").degree() == 6
    assert Poly.zero(XC2).degree() == -1


def test_signature_mismatch():
    with pytest.raises(RingError):
        p("x1") + parse_poly("x1", X3)


def test_parse_roundtrip_and_errors():
    P = p("3*x1^2*c2 - c1*x2 + 1")
    assert parse_poly(str(P), XC2) == P
    with pytest.raises(ParseError) as e:
        p("x1 + * x2")
    assert e.value.pos == 5
    with pytest.raises((ParseError, RingError)):
        p("y1")


def test_prime_field():
    sig = RingSignature.of(("x", 2), coeffs="GF5")
    P = parse_poly("3*x1 + 4*x2", sig)
    assert P + P == parse_poly("x1 + 3*x2", sig)


def test_rational_coefficients():
    from fractions import Fraction

    sig = RingSignature.of(("x", 1), coeffs="QQ")
    half = exact_div(parse_poly("2*x1", sig), Poly.const(sig, 4))
    assert half.terms == {1: Fraction(1, 2)}
    assert half + half == parse_poly("x1", sig)


# ---------------------------------------------------------------- properties

@settings(max_examples=80, deadline=None)
@given(poly_strategy(XC2), poly_strategy(XC2), poly_strategy(XC2))
def test_ring_axioms(P, Q, R):
    assert P + Q == Q + P
    assert P * Q == Q * P
    assert (P * Q) * R == P * (Q * R)
    assert P * (Q + R) == P * Q + P * R
    assert P - P == Poly.zero(XC2)


@settings(max_examples=60, deadline=None)
@given(poly_strategy(XC2), poly_strategy(XC2))
def test_product_matches_sympy(P, Q):
    sp, syms = to_sympy(P)
    sq, _ = to_sympy(Q)
    expected = reduce_square_zero(sp * sq, XC2, syms)
    got, _ = to_sympy(P * Q)
    assert sympy.expand(got - expected) == 0


@settings(max_examples=60, deadline=None)
@given(poly_strategy(XC2), poly_strategy(XC2))
def test_permutation_is_ring_map(P, Q):
    s = (2, 1)
    act = lambda F: permute_action(s, ("x", "c"), F)
    assert act(P + Q) == act(P) + act(Q)
    assert act(P * Q) == act(P) * act(Q)
    assert act(act(P)) == P


@settings(max_examples=40, deadline=None)
@given(poly_strategy(X3))
def test_permutation_composition(P):
    pi, sigma = (2, 3, 1), (1, 3, 2)
    composite = tuple(pi[sigma[i] - 1] for i in range(3))
    act = lambda w, F: permute_action(w, ("x",), F)
    assert act(composite, P) == act(pi, act(sigma, P))


@settings(max_examples=60, deadline=None)
@given(poly_strategy(XC2), st.sampled_from(["x1-x2", "x2-x1"]))
def test_exact_div_inverts_product(P, d):
    D = p(d)
    assert exact_div(P * D, D) == P


@settings(max_examples=40, deadline=None)
@given(poly_strategy(X3), poly_strategy(X3))
def test_grading_additive(P, Q):
    for a in P.graded_parts().values():
        for b in Q.graded_parts().values():
            if a * b:
                assert (a * b).degree() == a.degree() + b.degree()


# ---------------------------------------------------------------- kernels


def _random_terms(rng, nvars, k):
    out = {}
    for _ in range(k):
        key = 0
        for v in range(nvars):
            key |= rng.randint(0, 3) << (8 * v)
        out[key] = rng.randint(-50, 50) or 1
    return out


def test_compiled_and_pure_kernels_agree():
    import random

    rng = random.Random(7)
    zmask = (1 << 16) | (1 << 24)
    for _ in range(200):
        a, b = _random_terms(rng, 4, 6), _random_terms(rng, 4, 6)
        a = {k & ~(0xFE << 16) & ~(0xFE << 24): c for k, c in a.items()}
        assert kernels.mul_terms(a, b, zmask) == _purekernels.mul_terms(a, b, zmask)
        assert kernels.mul_terms(a, b, 0, 7) == _purekernels.mul_terms(a, b, 0, 7)
        assert kernels.div_difference(a, 0, 8) == _purekernels.div_difference(a, 0, 8)
        assert kernels.swap_fields(a, [(0, 8), (16, 24)]) == _purekernels.swap_fields(a, [(0, 8), (16, 24)])


def test_kernels_fall_back_on_big_coefficients():
    big = {1: 10**30, 256: -3}
    assert kernels.mul_terms(big, big, 0) == _purekernels.mul_terms(big, big, 0)


def test_incremental_rank_backends_agree():
    import random

    rng = random.Random(3)
    for impl in (kernels.IncrementalRank, _purekernels.IncrementalRank):
        r = impl(5, 101)
        vecs = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
        for v in vecs:
            r.add(v)
        r.add([a + b for a, b in zip(vecs[0], vecs[1])])
        assert r.rank == sympy.Matrix(vecs).rank()
