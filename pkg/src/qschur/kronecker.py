"""Polynomial representations of the Kronecker quiver Schur algebras.

Variables u_1..u_{n0} belong to vertex 0 and v_1..v_{n1} to vertex 1. A
generator acting on blocks at positions p, p+1 uses the variable windows
starting after the earlier blocks; everything else is a spectator.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .demazure import demazure_shuffle
from .operator import BoundaryError, Operator, Space, multiplication
from .permcomb import DimVec, colour_parts, dim_add, dim_sum, format_dim
from .ring import Poly, RingSignature

VARIANTS = {"s": "standard", "m": "seminilpotent", "n": "nilpotent"}


def variant_code(variant: str) -> str:
    for code, name in VARIANTS.items():
        if variant in (code, name):
            return code
    raise ValueError(f"unknown variant {variant!r}; expected one of s, m, n")


@lru_cache(maxsize=None)
def uv_signature(v: DimVec, coeffs: str = "ZZ") -> RingSignature:
    return RingSignature.of(("u", v[0]), ("v", v[1]), coeffs=coeffs)


@lru_cache(maxsize=None)
def kspace(beta: tuple, coeffs: str = "ZZ") -> Space:
    beta = tuple(tuple(b) for b in beta)
    b0, b1 = colour_parts(beta)
    return Space(
        comp=beta,
        sig=uv_signature(dim_sum(beta), coeffs),
        actions=((("u",), b0, 0), (("v",), b1, 0)),
        kind="kronecker",
    )


def _offsets(beta, pos):
    before = dim_sum(beta[: pos - 1])
    return before[0], before[1]


def k_factors(sig, ou, ov, left: DimVec, right: DimVec) -> tuple[Poly, Poly]:
    """K1 = prod_{i<=a, b<j<=b+d}(u_i - v_j), K2 = prod_{a<i<=a+c, j<=b}(v_j - u_i)."""
    a, b = left
    c, d = right
    u = lambda i: Poly.var(sig, "u", ou + i)
    v = lambda j: Poly.var(sig, "v", ov + j)
    K1 = Poly.one(sig)
    for i in range(1, a + 1):
        for j in range(b + 1, b + d + 1):
            K1 = K1 * (u(i) - v(j))
    K2 = Poly.one(sig)
    for i in range(a + 1, a + c + 1):
        for j in range(1, b + 1):
            K2 = K2 * (v(j) - u(i))
    return K1, K2


def identity_op(beta, coeffs="ZZ") -> Operator:
    sp = kspace(tuple(beta), coeffs)
    return Operator(sp, sp, 0, lambda P: P, label="id")


@lru_cache(maxsize=None)
def split_action(variant: str, beta: tuple, pos: int, left: DimVec, right: DimVec, coeffs: str = "ZZ") -> Operator:
    """Split block ``pos`` (1-based) of ``beta`` into (left, right)."""
    code = variant_code(variant)
    beta = tuple(tuple(b) for b in beta)
    if not 1 <= pos <= len(beta):
        raise BoundaryError(f"no block at position {pos} in {beta}")
    if dim_add(left, right) != beta[pos - 1]:
        raise BoundaryError(f"{format_dim(left)}+{format_dim(right)} is not {format_dim(beta[pos - 1])}")
    if left == (0, 0) or right == (0, 0):
        raise BoundaryError("split pieces must be nonzero")
    target = beta[: pos - 1] + (left, right) + beta[pos:]
    src, tgt = kspace(beta, coeffs), kspace(target, coeffs)
    ou, ov = _offsets(beta, pos)
    K1, K2 = k_factors(src.sig, ou, ov, left, right)
    a, b = left
    c, d = right
    if code == "s":
        factor, deg = None, 0
    elif code == "m":
        factor, deg = K1, 2 * a * d
    else:
        factor, deg = K1 * K2, 2 * (a * d + b * c)
    action = (lambda P: P) if factor is None else (lambda P: factor * P)
    return Operator(src, tgt, deg, action, label=f"split{pos}", variant=code)


@lru_cache(maxsize=None)
def merge_action(variant: str, beta: tuple, pos: int, coeffs: str = "ZZ") -> Operator:
    """Merge blocks ``pos`` and ``pos+1`` of ``beta``."""
    code = variant_code(variant)
    beta = tuple(tuple(b) for b in beta)
    if not 1 <= pos < len(beta):
        raise BoundaryError(f"no adjacent blocks at position {pos} in {beta}")
    left, right = beta[pos - 1], beta[pos]
    target = beta[: pos - 1] + (dim_add(left, right),) + beta[pos + 1 :]
    src, tgt = kspace(beta, coeffs), kspace(target, coeffs)
    ou, ov = _offsets(beta, pos)
    K1, K2 = k_factors(src.sig, ou, ov, left, right)
    a, b = left
    c, d = right
    drop = 2 * (a * c + b * d)

    def shuffle(Q):
        Q = demazure_shuffle(b, d, ("v",), Q, ov)
        return demazure_shuffle(a, c, ("u",), Q, ou)

    if code == "m":
        sign = -1 if (b * c) % 2 else 1
        action = lambda P: shuffle(K2 * P).scale(sign)
        deg = 2 * b * c - drop
    elif code == "n":
        action = shuffle
        deg = -drop
    else:
        sign = -1 if (a * d + b * c) % 2 else 1
        KK = K1 * K2
        action = lambda P: shuffle(KK * P).scale(sign)
        deg = 2 * (a * d + b * c) - drop
    return Operator(src, tgt, deg, action, label=f"merge{pos}", variant=code)


def coupon_action(beta, P: Poly, coeffs: str = "ZZ") -> Operator:
    return multiplication(kspace(tuple(map(tuple, beta)), coeffs), P)


def naive_crossing(variant: str, beta: tuple, pos: int, coeffs: str = "ZZ") -> Operator:
    """Merge blocks pos, pos+1 and split them again in swapped order."""
    from .operator import compose

    beta = tuple(tuple(b) for b in beta)
    left, right = beta[pos - 1], beta[pos]
    m = merge_action(variant, beta, pos, coeffs)
    s = split_action(variant, m.target.comp, pos, right, left, coeffs)
    out = compose(s, m)
    return Operator(out.source, out.target, out.degshift, out.action, label=f"cross{pos}", variant=out.variant)


def assoc_triples(max_size: int) -> list[tuple[DimVec, DimVec, DimVec]]:
    vecs = [(a, b) for a in range(max_size + 1) for b in range(max_size + 1) if 0 < a + b <= max_size]
    out = []
    for x in vecs:
        for y in vecs:
            for z in vecs:
                if sum(x) + sum(y) + sum(z) <= max_size:
                    out.append((x, y, z))
    return out


def associativity_pair(variant: str, triple, kind: str, coeffs="ZZ") -> tuple[Operator, Operator]:
    """The two bracketings of a triple split (kind='split') or merge."""
    from .operator import compose

    x, y, z = triple
    total = dim_add(dim_add(x, y), z)
    if kind == "split":
        lhs = compose(split_action(variant, (x, dim_add(y, z)), 2, y, z, coeffs),
                      split_action(variant, (total,), 1, x, dim_add(y, z), coeffs))
        rhs = compose(split_action(variant, (dim_add(x, y), z), 1, x, y, coeffs),
                      split_action(variant, (total,), 1, dim_add(x, y), z, coeffs))
    else:
        lhs = compose(merge_action(variant, (x, dim_add(y, z)), 1, coeffs), merge_action(variant, (x, y, z), 2, coeffs))
        rhs = compose(merge_action(variant, (dim_add(x, y), z), 1, coeffs), merge_action(variant, (x, y, z), 1, coeffs))
    return lhs, rhs


def fully_symmetric(sig: RingSignature, parts: Sequence[Poly] = ()) -> list[Poly]:
    """Power sums in u and in v, useful as Lambda-linearity probes."""
    out = []
    for name in ("u", "v"):
        n = sig.family(name).count
        for k in (1, 2):
            if n:
                acc = Poly.zero(sig)
                for i in range(1, n + 1):
                    acc = acc + Poly.var(sig, name, i) ** k
                out.append(acc)
    return out
