import itertools
import math

import pytest

from conftest import components

from qschur.permcomb import (EPS, TAU, apply_word, coloured_cosets, coloured_to_icomposition, compose, compositions,
                             double_cosets, from_word, i_compositions, inverse, length, parabolic_order,
                             parse_block, parse_icomposition, reduced_word, refines)


PAIRS = [(l, m) for n in range(1, 6) for l in compositions(n) for m in compositions(n)]


@pytest.mark.parametrize("lam,mu", PAIRS, ids=lambda c: "".join(map(str, c)))
def test_double_cosets_against_enumeration(lam, mu):
    data = double_cosets(lam, mu)
    comps = components(lam, mu)
    assert len(data) == len(comps)
    minimal = set()
    for comp in comps:
        best = min(comp, key=length)
        assert sum(1 for w in comp if length(w) == length(best)) == 1
        minimal.add(best)
    assert {d.w for d in data} == minimal


@pytest.mark.parametrize("n", range(1, 7))
def test_coset_sizes_partition_the_group(n):
    for lam in compositions(n):
        for mu in compositions(n):
            total = sum(parabolic_order(lam) * parabolic_order(mu) // parabolic_order(d.lam_prime)
                        for d in double_cosets(lam, mu))
            assert total == math.factorial(n)


def _parabolic(comp):
    n = sum(comp)
    out = []
    starts = list(itertools.accumulate((0,) + tuple(comp)))
    for choice in itertools.product(*(itertools.permutations(range(a + 1, b + 1)) for a, b in zip(starts, starts[1:]))):
        out.append(tuple(x for block in choice for x in block))
    return set(out)


@pytest.mark.parametrize("lam,mu", [(l, m) for n in range(1, 5) for l in compositions(n) for m in compositions(n)])
def test_refinement_is_the_stabiliser(lam, mu):
    left, right = _parabolic(lam), _parabolic(mu)
    for d in double_cosets(lam, mu):
        conj = {compose(compose(d.w, b), inverse(d.w)) for b in right}
        assert left & conj == _parabolic(d.lam_prime)
        pieces = [d.matrix[i][j] for i, j in d.cells]
        assert tuple(apply_word(pieces, d.word)) == d.mu_prime
        assert len(d.word) == length(tuple(d.sigma))


def test_examples():
    assert refines((1, 1, 1), (2, 1))
    assert not refines((2, 1), (1, 2))
    assert refines((2, 1), (2, 1))
    assert len(double_cosets((2, 1), (1, 2))) == 2
    assert [d.w for d in double_cosets((3,), (3,))] == [(1, 2, 3)]
    assert sorted(d.w for d in double_cosets((1, 1), (1, 1))) == [(1, 2), (2, 1)]


def test_coloured_coset_examples():
    assert len(coloured_cosets(((1, 0), (0, 1)), ((0, 1), (1, 0)))) == 1
    assert len(coloured_cosets(((1, 1), (1, 1)), ((1, 1), (1, 1)))) == 4
    assert len(coloured_cosets(((2, 2),), ((1, 1), (1, 1)))) == 1


def test_reduced_words():
    for p in itertools.permutations(range(1, 5)):
        word = reduced_word(p)
        assert len(word) == length(p)
        assert from_word(word, 4) == p


def test_text_forms():
    assert parse_block("2d") == (2, 2)
    assert parse_block("a1") == (0, 1)
    assert parse_block("3e") == (3, EPS)
    assert parse_icomposition("((1,1),(1,0))") == ((1, 1), (1, 0))
    assert parse_icomposition("(a1,a0)") == ((0, 1), (1, 0))
    assert coloured_to_icomposition(((1, EPS), (2, TAU))) == ((1, 1), (2, 0), (0, 2))
    assert len(i_compositions((1, 1))) == 3
