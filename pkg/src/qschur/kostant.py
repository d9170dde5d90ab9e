"""Positive roots of affine sl2, Kostant partitions and the idempotent chain."""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .permcomb import DimVec, dim_sum, format_icomp

# A marked root is (n0, n1, mark): mark "" for real roots and plain delta,
# "*" for the marker placed above the other one and "o" for the lower one.
MarkedRoot = tuple[int, int, str]
Partition = tuple[tuple[int, MarkedRoot], ...]

DELTA_UPPER: MarkedRoot = (1, 1, "*")
DELTA_LOWER: MarkedRoot = (1, 1, "o")
DELTA: MarkedRoot = (1, 1, "")

# The chain is printed from the top of the triple comparator downwards.
CHAIN_READS_DESCENDING = True
# Step (3) of the gamma procedure feeds the transposed partition into the
# upper-marker block and the lower-marker block.
GAMMA_USES_TRANSPOSE = True


def theta(v) -> Fraction:
    n0, n1 = v[0], v[1]
    if n0 + n1 == 0:
        raise ValueError("slope of the zero vector")
    return Fraction(n1, n0 + n1)


def is_root(v: DimVec) -> bool:
    n0, n1 = v
    return (n0, n1) != (0, 0) and abs(n0 - n1) <= 1 and n0 >= 0 and n1 >= 0


def _root_key(r: MarkedRoot):
    return (theta(r), {"o": 0, "": 1, "*": 2}[r[2]])


def root_chain_compare(r1: MarkedRoot, r2: MarkedRoot) -> int:
    k1, k2 = _root_key(r1), _root_key(r2)
    return (k1 > k2) - (k1 < k2)


def real_roots_within(v: DimVec) -> list[MarkedRoot]:
    out = []
    k = 0
    while True:
        added = False
        for r in ((k + 1, k), (k, k + 1)):
            if r[0] <= v[0] and r[1] <= v[1]:
                out.append((r[0], r[1], ""))
                added = True
        if not added:
            return out
        k += 1


def _enumerate(v: DimVec, roots: list[MarkedRoot]) -> list[Partition]:
    roots = sorted(roots, key=_root_key, reverse=True)
    out: list[Partition] = []

    def rec(idx, left, acc):
        if left == (0, 0):
            out.append(tuple(acc))
            return
        if idx == len(roots):
            return
        r = roots[idx]
        k = 0
        while True:
            rem = (left[0] - k * r[0], left[1] - k * r[1])
            if rem[0] < 0 or rem[1] < 0:
                break
            rec(idx + 1, rem, acc + ([(k, r)] if k else []))
            k += 1

    rec(0, tuple(v), [])
    return out


def enumerate_mkp(v: DimVec) -> list[Partition]:
    roots = real_roots_within(v)
    if v[0] >= 1 and v[1] >= 1:
        roots += [DELTA_UPPER, DELTA_LOWER]
    return _enumerate(v, roots)


def enumerate_kp(v: DimVec) -> list[Partition]:
    roots = real_roots_within(v)
    if v[0] >= 1 and v[1] >= 1:
        roots.append(DELTA)
    return _enumerate(v, roots)


def forget_marks(p: Partition) -> Partition:
    out: list[tuple[int, MarkedRoot]] = []
    for k, r in p:
        if r[2]:
            if out and out[-1][1] == DELTA:
                out[-1] = (out[-1][0] + k, DELTA)
            else:
                out.append((k, DELTA))
        else:
            out.append((k, r))
    return tuple(out)


def weight(p: Partition) -> DimVec:
    return dim_sum((k * r[0], k * r[1]) for k, r in p)


def revlex_compare(p1: Partition, p2: Partition) -> int:
    """-1 when p1 <_L p2: at the first difference the larger root, or else the
    larger multiplicity, is the smaller partition."""
    for (k1, r1), (k2, r2) in zip(p1, p2):
        c = root_chain_compare(r1, r2)
        if c:
            return -c
        if k1 != k2:
            return -1 if k1 > k2 else 1
    return (len(p1) > len(p2)) - (len(p1) < len(p2))


def partitions(n: int, maxpart: int | None = None) -> list[tuple[int, ...]]:
    if maxpart is None:
        maxpart = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, maxpart), 0, -1):
        out.extend((first,) + rest for rest in partitions(n - first, first))
    return out


def transpose(lam: Sequence[int]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


@dataclass(frozen=True)
class PolyheredityIndex:
    mkp: Partition
    lam: tuple[int, ...]
    mu: tuple[int, ...]


def multiplicity(p: Partition, mark: str) -> int:
    return sum(k for k, r in p if r[2] == mark and r[0] == r[1])


def indices(v: DimVec) -> list[PolyheredityIndex]:
    out = []
    for p in enumerate_mkp(v):
        for lam in partitions(multiplicity(p, "*")):
            for mu in partitions(multiplicity(p, "o")):
                out.append(PolyheredityIndex(p, lam, mu))
    return out


def triple_compare(t1: PolyheredityIndex, t2: PolyheredityIndex) -> int:
    """-1 when t1 precedes t2: larger partition in <=_L first, then larger lambda, then larger mu."""
    c = revlex_compare(t1.mkp, t2.mkp)
    if c:
        return -c
    if t1.lam != t2.lam:
        return -1 if t1.lam > t2.lam else 1
    if t1.mu != t2.mu:
        return -1 if t1.mu > t2.mu else 1
    return 0


def gamma_composition(idx: PolyheredityIndex) -> tuple[DimVec, ...]:
    lam = transpose(idx.lam) if GAMMA_USES_TRANSPOSE else idx.lam
    mu = transpose(idx.mu) if GAMMA_USES_TRANSPOSE else idx.mu
    out: list[DimVec] = []
    for k, r in idx.mkp:
        n0, n1, mark = r
        if mark == "*":
            out.extend((part, part) for part in lam)
        elif mark == "o":
            for part in mu:
                out.extend([(part, 0), (0, part)])
        elif n1 > n0:
            out.extend([(k, k)] * n0 + [(0, k)])
        else:
            out.extend([(k, 0)] + [(k, k)] * n1)
    return tuple(out)


def polyheredity_chain(v: DimVec, imaginary_only: bool = False) -> list[tuple[PolyheredityIndex, tuple[DimVec, ...]]]:
    idx = indices(tuple(v))
    if imaginary_only:
        idx = [t for t in idx if all(r[2] for _, r in t.mkp)]
    idx.sort(key=functools.cmp_to_key(triple_compare), reverse=CHAIN_READS_DESCENDING)
    return [(t, gamma_composition(t)) for t in idx]


def is_noncuspidal(beta: Sequence[DimVec]) -> bool:
    for cut in range(1, len(beta)):
        if theta(dim_sum(beta[:cut])) > theta(dim_sum(beta[cut:])):
            return True
    return False


# ---------------------------------------------------------------- text


def format_root(r: MarkedRoot) -> str:
    n0, n1, mark = r
    if n0 == n1:
        return "d" + mark if mark else "d"
    k = min(n0, n1)
    base = "a0" if n0 > n1 else "a1"
    if k == 0:
        return base
    return f"{base}+{'' if k == 1 else k}d"


def format_partition(p: Partition) -> str:
    parts = []
    for k, r in p:
        s = format_root(r)
        if k > 1:
            s = f"{k}{s}" if "+" not in s else f"{k}({s})"
        parts.append(s)
    return "(" + ",".join(parts) + ")"


def format_part(lam: tuple[int, ...]) -> str:
    return "(" + ",".join(map(str, lam)) + ")" if lam else "-"


def parse_root(text: str) -> MarkedRoot:
    s = text.replace(" ", "")
    m = re.fullmatch(r"(a0|a1)(?:\+(\d*)d)?", s)
    if m:
        k = 0 if m.group(2) is None else int(m.group(2) or 1)
        return (k + 1, k, "") if m.group(1) == "a0" else (k, k + 1, "")
    m = re.fullmatch(r"d(\*|o)?", s)
    if m:
        return (1, 1, m.group(1) or "")
    raise ValueError(f"bad root {text!r}")


def parse_dimvec(text: str) -> DimVec:
    """``2d``, ``a0+2d``, ``(2,1)``, ``3a1`` -> (n0, n1)."""
    s = text.replace(" ", "")
    if s.startswith("("):
        a, b = s.strip("()").split(",")
        return (int(a), int(b))
    total = [0, 0]
    for term in s.split("+"):
        m = re.fullmatch(r"(\d*)(a0|a1|d)", term)
        if not m:
            raise ValueError(f"bad dimension vector {text!r}")
        k = int(m.group(1) or 1)
        if m.group(2) in ("a0", "d"):
            total[0] += k
        if m.group(2) in ("a1", "d"):
            total[1] += k
    return (total[0], total[1])


def format_chain(v: DimVec, imaginary_only: bool = False) -> str:
    rows = polyheredity_chain(v, imaginary_only)
    lines = [f"{'#':>2}  {'marked partition':<20}{'lambda':<8}{'mu':<8}idempotent"]
    for i, (t, g) in enumerate(rows, 1):
        lines.append(f"{i:>2}  {format_partition(t.mkp):<20}{format_part(t.lam):<8}{format_part(t.mu):<8}1_{format_icomp(g)}")
    return "\n".join(lines) + "\n"
