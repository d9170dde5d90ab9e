"""Compositions, permutations and minimal double coset representatives."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import factorial, prod
from typing import Sequence

Perm = tuple[int, ...]
DimVec = tuple[int, int]

TAU, EPS = "t", "e"


# ---------------------------------------------------------------- permutations


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p, 1):
        out[v - 1] = i
    return tuple(out)


def length(p: Perm) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def simple(k: int, n: int) -> Perm:
    p = list(range(1, n + 1))
    p[k - 1], p[k] = p[k], p[k - 1]
    return tuple(p)


def reduced_word(p: Perm) -> list[int]:
    """Word [k1..kr] with p = s_k1 o ... o s_kr, built by peeling right descents."""
    w = list(p)
    word: list[int] = []
    while True:
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                w[k], w[k + 1] = w[k + 1], w[k]
                word.insert(0, k + 1)
                break
        else:
            return word


def from_word(word: Sequence[int], n: int) -> Perm:
    p = identity(n)
    for k in word:
        p = compose(p, simple(k, n))
    return p


def longest(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def shuffle_perm(a: int, b: int) -> Perm:
    """w_{a,b}: i -> i+b for i <= a, i -> i-a otherwise."""
    return tuple(i + b if i <= a else i - a for i in range(1, a + b + 1))


# ---------------------------------------------------------------- compositions


def blocks(lam: Sequence[int]) -> list[range]:
    out, start = [], 1
    for b in lam:
        out.append(range(start, start + b))
        start += b
    return out


def refines(mu: Sequence[int], lam: Sequence[int]) -> bool:
    if sum(mu) != sum(lam):
        raise ValueError("compositions of different totals")
    cuts_lam = set(itertools.accumulate(lam))
    cuts_mu = set(itertools.accumulate(mu))
    return cuts_lam <= cuts_mu


def compositions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        out.extend((first,) + rest for rest in compositions(n - first))
    return out


def dim_add(a: DimVec, b: DimVec) -> DimVec:
    return (a[0] + b[0], a[1] + b[1])


def dim_sum(vs) -> DimVec:
    out = (0, 0)
    for v in vs:
        out = dim_add(out, v)
    return out


def i_compositions(v: DimVec) -> list[tuple[DimVec, ...]]:
    if v == (0, 0):
        return [()]
    out = []
    for a in range(v[0] + 1):
        for b in range(v[1] + 1):
            if (a, b) != (0, 0):
                out.extend(((a, b),) + rest for rest in i_compositions((v[0] - a, v[1] - b)))
    return out


def colour_parts(beta: Sequence[DimVec]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two quasi-compositions beta_0, beta_1 of an I-composition."""
    return tuple(b[0] for b in beta), tuple(b[1] for b in beta)


def parabolic_order(lam: Sequence[int]) -> int:
    return prod(factorial(b) for b in lam)


# ---------------------------------------------------------------- double cosets


@dataclass(frozen=True)
class CosetDatum:
    """Minimal representative of S_lam w S_mu and its refinement data.

    ``matrix[i][j]`` counts positions of lam-block i hit by mu-block j under w.
    ``lam_pieces``/``mu_pieces`` list the nonzero cells row-major / column-major,
    ``sigma[p]`` is the column-major position of the p-th row-major cell and
    ``word`` is the bubble-sort word moving lam_pieces into mu_pieces.
    """

    lam: tuple[int, ...]
    mu: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    w: Perm
    lam_prime: tuple[int, ...]
    mu_prime: tuple[int, ...]
    cells: tuple[tuple[int, int], ...]
    sigma: Perm
    word: tuple[int, ...]


def contingency_tables(rows: Sequence[int], cols: Sequence[int]):
    """Nonnegative integer matrices with the given margins, lexicographic row-major."""
    k, l = len(rows), len(cols)
    if sum(rows) != sum(cols):
        return

    def fill(i, colleft):
        if i == k:
            if all(c == 0 for c in colleft):
                yield ()
            return
        for row in _row_vectors(rows[i], colleft):
            rest = tuple(c - r for c, r in zip(colleft, row))
            for tail in fill(i + 1, rest):
                yield (row,) + tail

    yield from fill(0, tuple(cols))


def _row_vectors(total, caps):
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]) + 1):
        for tail in _row_vectors(total - first, caps[1:]):
            yield (first,) + tail


def _bubble_word(targets: list[int]) -> tuple[int, ...]:
    """Adjacent swaps (1-based positions, bottom first) sorting ``targets``."""
    seq = list(targets)
    word = []
    changed = True
    while changed:
        changed = False
        for p in range(len(seq) - 1):
            if seq[p] > seq[p + 1]:
                seq[p], seq[p + 1] = seq[p + 1], seq[p]
                word.append(p + 1)
                changed = True
    return tuple(word)


def datum_from_matrix(lam, mu, matrix) -> CosetDatum:
    lam, mu = tuple(lam), tuple(mu)
    k, l = len(lam), len(mu)
    n = sum(lam)
    lam_blocks = blocks(lam)
    mu_blocks = blocks(mu)
    # w sends mu-block j, in order, to its cells in lam-blocks 1..k; inside a
    # lam-block the images arrive ordered by j.
    w = [0] * n
    fill = [0] * k
    col_used = [0] * l
    for i in range(k):
        for j in range(l):
            for t in range(matrix[i][j]):
                src = mu_blocks[j][col_used[j] + t]
                w[src - 1] = lam_blocks[i][fill[i] + t]
            fill[i] += matrix[i][j]
            col_used[j] += matrix[i][j]
    cells_row = [(i, j) for i in range(k) for j in range(l) if matrix[i][j]]
    cells_col = [(i, j) for j in range(l) for i in range(k) if matrix[i][j]]
    colpos = {c: p for p, c in enumerate(cells_col, 1)}
    sigma = tuple(colpos[c] for c in cells_row)
    return CosetDatum(
        lam=lam,
        mu=mu,
        matrix=tuple(tuple(r) for r in matrix),
        w=tuple(w),
        lam_prime=tuple(matrix[i][j] for i, j in cells_row),
        mu_prime=tuple(matrix[i][j] for i, j in cells_col),
        cells=tuple(cells_row),
        sigma=sigma,
        word=_bubble_word(list(sigma)),
    )


def double_cosets(lam: Sequence[int], mu: Sequence[int]) -> list[CosetDatum]:
    """One datum per double coset S_lam \\ S_n / S_mu; zero parts are allowed."""
    if sum(lam) != sum(mu):
        raise ValueError("compositions of different totals")
    return [datum_from_matrix(lam, mu, m) for m in contingency_tables(lam, mu)]


def apply_word(pieces: Sequence, word: Sequence[int]) -> list:
    seq = list(pieces)
    for p in word:
        seq[p - 1], seq[p] = seq[p], seq[p - 1]
    return seq


@dataclass(frozen=True)
class ColouredCoset:
    """Product coset for I-compositions: one datum per colour on a shared cell grid."""

    beta: tuple[DimVec, ...]
    gamma: tuple[DimVec, ...]
    per_colour: tuple[CosetDatum, CosetDatum]
    cells: tuple[tuple[int, int], ...]
    beta_prime: tuple[DimVec, ...]
    gamma_prime: tuple[DimVec, ...]
    sigma: Perm
    word: tuple[int, ...]

    @property
    def w(self) -> tuple[Perm, Perm]:
        return (self.per_colour[0].w, self.per_colour[1].w)


def coloured_cosets(beta: Sequence[DimVec], gamma: Sequence[DimVec]) -> list[ColouredCoset]:
    beta, gamma = tuple(map(tuple, beta)), tuple(map(tuple, gamma))
    if dim_sum(beta) != dim_sum(gamma):
        raise ValueError("I-compositions of different dimension vectors")
    b0, b1 = colour_parts(beta)
    g0, g1 = colour_parts(gamma)
    out = []
    k, l = len(beta), len(gamma)
    for d0 in double_cosets(b0, g0):
        for d1 in double_cosets(b1, g1):
            grid = [[(d0.matrix[i][j], d1.matrix[i][j]) for j in range(l)] for i in range(k)]
            cells_row = [(i, j) for i in range(k) for j in range(l) if grid[i][j] != (0, 0)]
            cells_col = [(i, j) for j in range(l) for i in range(k) if grid[i][j] != (0, 0)]
            colpos = {c: p for p, c in enumerate(cells_col, 1)}
            sigma = tuple(colpos[c] for c in cells_row)
            out.append(
                ColouredCoset(
                    beta=beta,
                    gamma=gamma,
                    per_colour=(d0, d1),
                    cells=tuple(cells_row),
                    beta_prime=tuple(grid[i][j] for i, j in cells_row),
                    gamma_prime=tuple(grid[i][j] for i, j in cells_col),
                    sigma=sigma,
                    word=_bubble_word(list(sigma)),
                )
            )
    return out


# ---------------------------------------------------------------- brute force oracle


def brute_force_cosets(lam: Sequence[int], mu: Sequence[int]) -> list[list[Perm]]:
    """Partition S_n into S_lam w S_mu orbits by direct enumeration."""
    n = sum(lam)
    left = _parabolic_elements(lam)
    right = _parabolic_elements(mu)
    remaining = set(itertools.permutations(range(1, n + 1)))
    orbits = []
    for w in sorted(remaining):
        if w not in remaining:
            continue
        orbit = {compose(compose(a, w), b) for a in left for b in right}
        remaining -= orbit
        orbits.append(sorted(orbit))
    return orbits


def _parabolic_elements(lam: Sequence[int]) -> list[Perm]:
    n = sum(lam)
    out = []
    for choice in itertools.product(*(itertools.permutations(list(b)) for b in blocks(lam))):
        p = [0] * n
        for blk, img in zip(blocks(lam), choice):
            for src, dst in zip(blk, img):
                p[src - 1] = dst
        out.append(tuple(p))
    return out


# ---------------------------------------------------------------- text forms

_BLOCK = re.compile(r"\s*(\d*)\s*(a0|a1|d|t|e)\s*$")


def parse_composition(text: str) -> tuple[int, ...]:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"composition must be parenthesised: {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return ()
    return tuple(int(x) for x in inner.split(","))


def parse_block(text: str):
    """``2d`` / ``a0`` / ``3a1`` / ``(1,2)`` -> DimVec, ``2t`` / ``e`` -> (size, colour)."""
    s = text.strip()
    if s.startswith("("):
        parts = [p.strip() for p in s.strip("()").split(",")]
        if len(parts) != 2:
            raise ValueError(f"bad dimension vector {text!r}")
        return (int(parts[0]), int(parts[1]))
    m = _BLOCK.match(s)
    if not m:
        raise ValueError(f"bad block {text!r}")
    k = int(m.group(1)) if m.group(1) else 1
    kind = m.group(2)
    if kind == "a0":
        return (k, 0)
    if kind == "a1":
        return (0, k)
    if kind == "d":
        return (k, k)
    return (k, TAU if kind == "t" else EPS)


def format_dim(v: DimVec) -> str:
    n0, n1 = v
    if n0 == n1:
        return ("" if n0 == 1 else str(n0)) + "d"
    if n1 == 0:
        return ("" if n0 == 1 else str(n0)) + "a0"
    if n0 == 0:
        return ("" if n1 == 1 else str(n1)) + "a1"
    return f"({n0},{n1})"


def format_icomp(beta: Sequence[DimVec]) -> str:
    return "(" + ",".join(format_dim(b) for b in beta) + ")"


def format_coloured(c: Sequence[tuple[int, str]]) -> str:
    return "(" + ",".join(f"{k}{col}" for k, col in c) + ")"


def parse_icomposition(text: str) -> tuple[DimVec, ...]:
    s = text.strip()
    if s.count("(") != s.count(")"):
        raise ValueError(f"unbalanced parentheses in {text!r}")
    if s.startswith("((") or (s.startswith("(") and "," in s and s[1:].lstrip().startswith("(")):
        inner = s[1:-1]
        return tuple(parse_block(p) for p in re.findall(r"\(\s*\d+\s*,\s*\d+\s*\)", inner))
    if s.startswith("(") != s.endswith(")"):
        raise ValueError(f"unbalanced parentheses in {text!r}")
    if s.startswith("("):
        s = s[1:-1]
    return tuple(parse_block(p) for p in s.split(","))


def coloured_to_icomposition(c: Sequence[tuple[int, str]]) -> tuple[DimVec, ...]:
    """(n eps) -> (n delta), (n tau) -> (n alpha0, n alpha1)."""
    out: list[DimVec] = []
    for k, col in c:
        if col == EPS:
            out.append((k, k))
        else:
            out.extend([(k, 0), (0, k)])
    return tuple(out)
