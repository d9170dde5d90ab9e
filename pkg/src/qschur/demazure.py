"""Divided difference operators."""

from __future__ import annotations

from typing import Iterable, Sequence

from .permcomb import Perm, longest, reduced_word, shuffle_perm
from .ring import ORDINARY, Poly, RingError, exact_div, swap


def designated(P: Poly, targets: Sequence[str]) -> str:
    ordinary = [t for t in targets if P.sig.family(t).kind == ORDINARY]
    if len(ordinary) != 1:
        raise RingError(f"targets {targets} must contain exactly one ordinary family")
    return ordinary[0]


def demazure_simple(r: int, targets: Sequence[str], P: Poly, offset: int = 0) -> Poly:
    """(P - s_r P) / (X_r - X_{r+1}), indices shifted by ``offset``."""
    targets = tuple(targets)
    X = designated(P, targets)
    diff = P - swap(P, r, targets, offset)
    if not diff:
        return Poly.zero(P.sig)
    sig = P.sig
    D = Poly.var(sig, X, offset + r) - Poly.var(sig, X, offset + r + 1)
    return exact_div(diff, D)


def demazure_word(word: Sequence[int], targets: Sequence[str], P: Poly, offset: int = 0) -> Poly:
    """d_{k1} ... d_{kr} P, applying the rightmost letter first."""
    for r in reversed(word):
        if not P:
            return P
        P = demazure_simple(r, targets, P, offset)
    return P


def demazure(w: Perm, targets: Iterable[str], P: Poly, offset: int = 0) -> Poly:
    return demazure_word(reduced_word(w), tuple(targets), P, offset)


def demazure_shuffle(a: int, b: int, targets: Iterable[str], P: Poly, offset: int = 0) -> Poly:
    """d_{a,b}, the divided difference of the shuffle w_{a,b}."""
    if a == 0 or b == 0:
        return P
    return demazure_word(_shuffle_word(a, b), tuple(targets), P, offset)


_WORDS: dict[tuple[int, int], tuple[int, ...]] = {}


def _shuffle_word(a, b):
    if (a, b) not in _WORDS:
        _WORDS[(a, b)] = tuple(reduced_word(shuffle_perm(a, b)))
    return _WORDS[(a, b)]


def demazure_longest(n: int, targets: Iterable[str], P: Poly, offset: int = 0) -> Poly:
    return demazure(longest(n), targets, P, offset)


def staircase(sig, n: int, name: str = "x", offset: int = 0) -> Poly:
    """x_1^{n-1} x_2^{n-2} ... x_{n-1}."""
    out = Poly.one(sig)
    for i in range(1, n):
        out = out * Poly.var(sig, name, offset + i) ** (n - i)
    return out
