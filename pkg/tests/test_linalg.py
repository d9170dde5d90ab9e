import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from qschur.linalg import (hermite_normal_form, in_span, lattice_index, nullspace, rank_exact,
                           smith_invariants, solve_integer)


def random_matrix(rng, r, c, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)]


def sympy_invariants(m):
    M = sympy.Matrix(m)
    S = smith_normal_form(M, domain=ZZ)
    return [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]


@pytest.mark.parametrize("seed", range(25))
def test_smith_matches_sympy(seed):
    rng = random.Random(seed)
    m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
    assert smith_invariants(m) == sympy_invariants(m)


@pytest.mark.parametrize("seed", range(25))
def test_hnf_shape_and_span(seed):
    rng = random.Random(100 + seed)
    m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
    H = hermite_normal_form(m)
    assert len(H) == sympy.Matrix(m).rank()
    pivots = [next(i for i, x in enumerate(row) if x) for row in H]
    assert pivots == sorted(set(pivots))
    for r, c in enumerate(pivots):
        assert H[r][c] > 0
        for above in range(r):
            assert 0 <= H[above][c] < H[r][c]
    # same lattice both ways
    assert all(solve_integer(H, row) for row in m)
    Hm = hermite_normal_form(m)
    assert all(solve_integer(hermite_normal_form(m), row) for row in H) and Hm == H
    # the nonzero invariant factors are a lattice invariant
    assert smith_invariants(H) == sympy_invariants(m)


def test_membership_index_two():
    L = [[2, 0], [0, 1]]
    H = hermite_normal_form(L)
    assert solve_integer(H, [2, 5]) and not solve_integer(H, [1, 0])
    assert lattice_index(L, [[1, 0], [0, 1]]) == 2
    assert lattice_index([[1, 0], [0, 1]], L) is None


def test_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank_exact(rows) == 2
    ns = nullspace(rows, 3)
    assert len(ns) == 1
    assert all(sum(a * b for a, b in zip(r, ns[0])) == 0 for r in rows)
    assert in_span([3, 2, 5], rows) and not in_span([0, 0, 1], rows)
