"""Polynomial representation of the extended curve Schur algebra of P^1.

Strands carry variables x_i (ordinary) and c_i (square-zero, the point class
of P^1). A coloured composition is a tuple of (size, colour) with colour "t"
(general support) or "e" (support at the marked point); c_i never occurs on
an e-strand. The diagonal class is Delta_ij = c_i + c_j.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Sequence

from .demazure import demazure_longest, demazure_shuffle, demazure_simple, staircase
from .operator import BoundaryError, Operator, Space, chain, compose, identity, multiplication
from .permcomb import EPS, TAU, format_coloured
from .ring import Poly, RingError, RingSignature, exact_div, swap

# Sign of Delta in the tau-merge factor prod (x_i - x_j + sign*Delta_ij).
# +1 is the convention under which the thin multicoloured crossing formula,
# the colour-slide identities and the wreath generator s_i = R_tt - 1 agree.
DIAGONAL_SIGN = +1

# Empirical sign in C^{nt}_{ne} = sign * M D_n C S, see thick_thin_sign().
THICK_THIN_SIGNS = {1: +1, 2: -1, 3: -1, 4: +1}


class ConjecturalDisabled(RuntimeError):
    pass


@lru_cache(maxsize=None)
def curve_signature(n: int, coeffs: str = "ZZ") -> RingSignature:
    return RingSignature.of(("x", n), ("c", n, "square-zero"), coeffs=coeffs)


def normalize(clam) -> tuple[tuple[int, str], ...]:
    out = []
    for k, col in clam:
        if col not in (TAU, EPS):
            raise ValueError(f"unknown colour {col!r}")
        if k <= 0:
            raise ValueError("block sizes must be positive")
        out.append((int(k), col))
    return tuple(out)


def block_range(clam, pos: int) -> range:
    start = sum(k for k, _ in clam[: pos - 1])
    return range(start + 1, start + clam[pos - 1][0] + 1)


@lru_cache(maxsize=None)
def cspace(clam: tuple, coeffs: str = "ZZ") -> Space:
    clam = normalize(clam)
    n = sum(k for k, _ in clam)
    forbidden = []
    for pos, (k, col) in enumerate(clam, 1):
        if col == EPS:
            forbidden.extend(("c", i) for i in block_range(clam, pos))
    return Space(
        comp=clam,
        sig=curve_signature(n, coeffs),
        actions=((("x", "c"), tuple(k for k, _ in clam), 0),),
        forbidden=tuple(forbidden),
        kind="curve",
    )


def _x(sig, i):
    return Poly.var(sig, "x", i)


def _c(sig, i):
    return Poly.var(sig, "c", i)


def diagonal(sig, i, j) -> Poly:
    return _c(sig, i) + _c(sig, j)


def cross_product(sig, left: range, right: range, shift: Callable | None = None) -> Poly:
    out = Poly.one(sig)
    for i in left:
        for j in right:
            f = _x(sig, i) - _x(sig, j)
            if shift is not None:
                f = f + shift(i, j)
            out = out * f
    return out


def euler_class(sig, idx: Sequence[int]) -> Poly:
    """prod_i c_i * prod_{i != j} (x_i - x_j) over the given indices."""
    out = Poly.one(sig)
    for i in idx:
        out = out * _c(sig, i)
    for i in idx:
        for j in idx:
            if i != j:
                out = out * (_x(sig, i) - _x(sig, j))
    return out


# ---------------------------------------------------------------- generators


@lru_cache(maxsize=None)
def curve_split(clam: tuple, pos: int, a: int, b: int, coeffs: str = "ZZ") -> Operator:
    clam = normalize(clam)
    k, col = clam[pos - 1]
    if a + b != k or a <= 0 or b <= 0:
        raise BoundaryError(f"cannot split {k}{col} into {a}+{b}")
    target = clam[: pos - 1] + ((a, col), (b, col)) + clam[pos:]
    src, tgt = cspace(clam, coeffs), cspace(target, coeffs)
    blk = block_range(clam, pos)
    if col == TAU:
        return Operator(src, tgt, 0, lambda P: P, label=f"S{pos}")
    factor = cross_product(src.sig, blk[:a], blk[a:])
    return Operator(src, tgt, 2 * a * b, lambda P: factor * P, label=f"S{pos}")


@lru_cache(maxsize=None)
def curve_merge(clam: tuple, pos: int, coeffs: str = "ZZ", diagonal_sign: int | None = None) -> Operator:
    clam = normalize(clam)
    (a, c1), (b, c2) = clam[pos - 1], clam[pos]
    if c1 != c2:
        raise BoundaryError("merging strands of different colours")
    target = clam[: pos - 1] + ((a + b, c1),) + clam[pos + 1 :]
    src, tgt = cspace(clam, coeffs), cspace(target, coeffs)
    offset = block_range(clam, pos).start - 1
    sig = src.sig
    if c1 == EPS:
        return Operator(src, tgt, -2 * a * b,
                        lambda P: demazure_shuffle(a, b, ("x", "c"), P, offset), label=f"M{pos}")
    sgn = DIAGONAL_SIGN if diagonal_sign is None else diagonal_sign
    left = range(offset + 1, offset + a + 1)
    right = range(offset + a + 1, offset + a + b + 1)
    factor = cross_product(sig, left, right, lambda i, j: diagonal(sig, i, j).scale(sgn))
    return Operator(src, tgt, 0, lambda P: demazure_shuffle(a, b, ("x", "c"), factor * P, offset), label=f"M{pos}")


@lru_cache(maxsize=None)
def colour_change(clam: tuple, pos: int, coeffs: str = "ZZ") -> Operator:
    """Flip the colour of block ``pos``; direction is read off the source colour."""
    clam = normalize(clam)
    k, col = clam[pos - 1]
    new = EPS if col == TAU else TAU
    target = clam[: pos - 1] + ((k, new),) + clam[pos:]
    src, tgt = cspace(clam, coeffs), cspace(target, coeffs)
    idx = list(block_range(clam, pos))
    if col == TAU:
        cs = [("c", i) for i in idx]
        return Operator(src, tgt, 0, lambda P: P.drop(cs), label=f"C{pos}te")
    e = euler_class(src.sig, idx)
    return Operator(src, tgt, 2 * k * k, lambda P: e * P, label=f"C{pos}et")


def thin_cross_formula(P: Poly, i: int, left_colour: str) -> Poly:
    """Thin multicoloured crossing of strands i, i+1 with colours (left_colour, other)."""
    sig = P.sig
    if left_colour == EPS:
        keep, gain = ("c", i + 1), i
    else:
        keep, gain = ("c", i), i + 1
    P1 = P.drop([keep])
    out = swap(P, i, ("x", "c"))
    if P1:
        out = out + _c(sig, gain) * demazure_simple(i, ("x", "c"), P1)
    return out


@lru_cache(maxsize=None)
def mc_cross_thin(clam: tuple, pos: int, coeffs: str = "ZZ") -> Operator:
    clam = normalize(clam)
    (a, c1), (b, c2) = clam[pos - 1], clam[pos]
    if a != 1 or b != 1 or c1 == c2:
        raise BoundaryError("thin multicoloured crossing needs two thin strands of different colours")
    target = clam[: pos - 1] + ((1, c2), (1, c1)) + clam[pos + 1 :]
    src, tgt = cspace(clam, coeffs), cspace(target, coeffs)
    i = block_range(clam, pos).start
    return Operator(src, tgt, 0, lambda P: thin_cross_formula(P, i, c1), label=f"R{pos}")


def same_colour_crossing(clam: tuple, pos: int, coeffs: str = "ZZ") -> Operator:
    clam = normalize(clam)
    (a, c1), (b, c2) = clam[pos - 1], clam[pos]
    m = curve_merge(clam, pos, coeffs)
    s = curve_split(m.target.comp, pos, b, a, coeffs)
    out = compose(s, m)
    return Operator(out.source, out.target, out.degshift, out.action, label=f"X{pos}")


def to_thin(clam: tuple, coeffs: str = "ZZ") -> Operator:
    """Split every block of ``clam`` into thin strands."""
    clam = normalize(clam)
    ops = []
    cur = clam
    pos = 1
    while pos <= len(cur):
        k, col = cur[pos - 1]
        if k > 1:
            op = curve_split(cur, pos, 1, k - 1, coeffs)
            ops.append(op)
            cur = op.target.comp
        pos += 1
    return chain(ops, cspace(clam, coeffs))


def from_thin(clam: tuple, coeffs: str = "ZZ") -> Operator:
    """Merge thin strands back into the blocks of ``clam``."""
    clam = normalize(clam)
    thin = tuple((1, col) for k, col in clam for _ in range(k))
    ops = []
    cur = thin
    pos = 1
    for k, col in clam:
        for _ in range(k - 1):
            op = curve_merge(cur, pos, coeffs)
            ops.append(op)
            cur = op.target.comp
        pos += 1
    return chain(ops, cspace(thin, coeffs))


def thin_braid_word(colours: Sequence[str], order: str = "left") -> list[int]:
    """Adjacent swaps moving an (a e, b t) or (a t, b e) thin block pair past each other."""
    cols = list(colours)
    first = cols[0]
    a = cols.index(next(c for c in cols if c != first))
    b = len(cols) - a
    word = []
    if order == "left":
        # carry each strand of the right group leftwards, leftmost first
        for r in range(b):
            for p in range(a + r, r, -1):
                word.append(p)
    else:
        # carry each strand of the left group rightwards, rightmost first
        for l in range(a - 1, -1, -1):
            for p in range(l + 1, l + b + 1):
                word.append(p)
    return word


def mc_cross_thick(clam: tuple, pos: int, conjectural: bool = False, order: str = "left", coeffs: str = "ZZ") -> Operator:
    """Thick multicoloured crossing obtained by sliding splits through thin crossings.

    Conjectural: lifts the thin braid through the top splits by exact division.
    """
    if not conjectural:
        raise ConjecturalDisabled("thick multicoloured crossings are conjectural; pass conjectural=True")
    clam = normalize(clam)
    (a, c1), (b, c2) = clam[pos - 1], clam[pos]
    if c1 == c2:
        raise BoundaryError("multicoloured crossing needs two colours")
    if a == 1 and b == 1:
        op = mc_cross_thin(clam, pos, coeffs)
        return Operator(op.source, op.target, 0, op.action, label=f"R{pos}", notes=("conjectural",))
    target = clam[: pos - 1] + ((b, c2), (a, c1)) + clam[pos + 1 :]
    src, tgt = cspace(clam, coeffs), cspace(target, coeffs)
    sig = src.sig
    offset = block_range(clam, pos).start - 1
    colours = [c1] * a + [c2] * b
    word = thin_braid_word(colours, order)
    # bottom: split into thin strands (ignoring spectators, which stay put)
    bottom = [(1, c1) for _ in range(a)] + [(1, c2) for _ in range(b)]
    src_eps = range(offset + 1, offset + a + 1) if c1 == EPS else range(offset + a + 1, offset + a + b + 1)
    tgt_eps = range(offset + 1, offset + b + 1) if c2 == EPS else range(offset + b + 1, offset + a + b + 1)
    vand_src = _vandermonde(sig, src_eps)
    vand_tgt = _vandermonde(sig, tgt_eps)

    def action(P):
        Q = vand_src * P
        cols = list(colours)
        for p in word:
            i = offset + p
            Q = thin_cross_formula(Q, i, cols[p - 1])
            cols[p - 1], cols[p] = cols[p], cols[p - 1]
        return exact_div(Q, vand_tgt)

    return Operator(src, tgt, 0, action, label=f"Rthick{pos}", notes=("conjectural",))


def _vandermonde(sig, idx: range) -> Poly:
    out = Poly.one(sig)
    for i in idx:
        for j in idx:
            if i < j:
                out = out * (_x(sig, i) - _x(sig, j))
    return out


def mc_cross(clam: tuple, pos: int, conjectural: bool = False, coeffs: str = "ZZ") -> Operator:
    clam = normalize(clam)
    if clam[pos - 1][0] == 1 and clam[pos][0] == 1:
        return mc_cross_thin(clam, pos, coeffs)
    return mc_cross_thick(clam, pos, conjectural, coeffs=coeffs)


def coupon(clam: tuple, P: Poly, coeffs: str = "ZZ") -> Operator:
    return multiplication(cspace(normalize(clam), coeffs), P)


# ---------------------------------------------------------------- relation families


def full_split(n: int, colour: str, coeffs="ZZ") -> Operator:
    return to_thin(((n, colour),), coeffs)


def full_merge(n: int, colour: str, coeffs="ZZ") -> Operator:
    return from_thin(((n, colour),), coeffs)


def thin_changes(n: int, source_colour: str, coeffs="ZZ") -> Operator:
    cur = tuple((1, source_colour) for _ in range(n))
    ops = []
    for pos in range(1, n + 1):
        op = colour_change(cur, pos, coeffs)
        ops.append(op)
        cur = op.target.comp
    return chain(ops, cspace(tuple((1, source_colour) for _ in range(n)), coeffs))


def blockwise_changes(lam: Sequence[int], source_colour: str, coeffs="ZZ") -> Operator:
    cur = tuple((k, source_colour) for k in lam)
    start = cur
    ops = []
    for pos in range(1, len(lam) + 1):
        op = colour_change(cur, pos, coeffs)
        ops.append(op)
        cur = op.target.comp
    return chain(ops, cspace(start, coeffs))


def split_to(lam: Sequence[int], colour: str, coeffs="ZZ") -> Operator:
    """n colour -> (lam_1 colour, ..., lam_k colour) by peeling blocks from the left."""
    n = sum(lam)
    cur = ((n, colour),)
    ops = []
    for pos, k in enumerate(lam[:-1], 1):
        op = curve_split(cur, pos, k, cur[pos - 1][0] - k, coeffs)
        ops.append(op)
        cur = op.target.comp
    return chain(ops, cspace(((n, colour),), coeffs))


def merge_from(lam: Sequence[int], colour: str, coeffs="ZZ") -> Operator:
    cur = tuple((k, colour) for k in lam)
    start = cur
    ops = []
    while len(cur) > 1:
        op = curve_merge(cur, 1, coeffs)
        ops.append(op)
        cur = op.target.comp
    return chain(ops, cspace(start, coeffs))


def cross_block_pairs(lam: Sequence[int]) -> list[tuple[int, int]]:
    """N_lambda: pairs i < j lying in different blocks of lam."""
    owner = [b for b, k in enumerate(lam) for _ in range(k)]
    n = len(owner)
    return [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if owner[i] != owner[j]]


def euler_coupon(sig, lam: Sequence[int]) -> Poly:
    """Q_lambda = prod over N_lambda of (x_i - x_j)."""
    out = Poly.one(sig)
    for i, j in cross_block_pairs(lam):
        out = out * (_x(sig, i) - _x(sig, j))
    return out


def symmetric_probes(sig, n: int) -> list[Poly]:
    xs = [_x(sig, i) for i in range(1, n + 1)]
    out = []
    for k in range(1, n + 1):
        e = Poly.zero(sig)
        for combo in itertools.combinations(xs, k):
            t = Poly.one(sig)
            for f in combo:
                t = t * f
            e = e + t
        out.append(e)
    p2 = Poly.zero(sig)
    for f in xs:
        p2 = p2 + f * f
    out.append(p2)
    return out


def colour_past_split_cases(n: int, coeffs="ZZ") -> list[tuple[str, Operator, Operator]]:
    sig = curve_signature(n, coeffs)
    cases = []
    Ct_e = colour_change(((n, TAU),), 1, coeffs)
    Ce_t = colour_change(((n, EPS),), 1, coeffs)
    for f in symmetric_probes(sig, n):
        cases.append((f"coupon {f} slides through t->e",
                      compose(Ct_e, multiplication(Ct_e.source, f)),
                      compose(multiplication(Ct_e.target, f), Ct_e)))
        cases.append((f"coupon {f} slides through e->t",
                      compose(Ce_t, multiplication(Ce_t.source, f)),
                      compose(multiplication(Ce_t.target, f), Ce_t)))
    for lam in _compositions(n):
        if len(lam) < 2:
            continue
        Q = euler_coupon(sig, lam)
        sgn = -1 if len(cross_block_pairs(lam)) % 2 else 1
        tag = "(" + ",".join(map(str, lam)) + ")"
        # colour change then e-split  ==  t-split, Q, blockwise changes
        lhs = compose(split_to(lam, EPS, coeffs), Ct_e)
        rhs = chain([split_to(lam, TAU, coeffs), multiplication(cspace(tuple((k, TAU) for k in lam), coeffs), Q),
                     blockwise_changes(lam, TAU, coeffs)])
        cases.append((f"split {tag} after t->e", lhs, rhs))
        # colour change then t-split  ==  e-split, (-1)^N Q, blockwise changes
        lhs = compose(split_to(lam, TAU, coeffs), Ce_t)
        rhs = chain([split_to(lam, EPS, coeffs), multiplication(cspace(tuple((k, EPS) for k in lam), coeffs), Q.scale(sgn)),
                     blockwise_changes(lam, EPS, coeffs)])
        cases.append((f"split {tag} after e->t", lhs, rhs))
        # upside down: the coupon is Q with reversed indices
        lhs = compose(Ce_t, merge_from(lam, EPS, coeffs))
        rhs = chain([blockwise_changes(lam, EPS, coeffs),
                     multiplication(cspace(tuple((k, TAU) for k in lam), coeffs), Q.scale(sgn)),
                     merge_from(lam, TAU, coeffs)])
        cases.append((f"merge {tag} before e->t", lhs, rhs))
        lhs = compose(Ct_e, merge_from(lam, TAU, coeffs))
        rhs = chain([blockwise_changes(lam, TAU, coeffs),
                     multiplication(cspace(tuple((k, EPS) for k in lam), coeffs), Q),
                     merge_from(lam, EPS, coeffs)])
        cases.append((f"merge {tag} before t->e", lhs, rhs))
    return cases


def _compositions(n):
    from .permcomb import compositions

    return compositions(n)


def colour_change_cases(n: int, coeffs="ZZ"):
    """(name, composite, expected) for both orders of thick colour changes."""
    Ct_e = colour_change(((n, TAU),), 1, coeffs)
    Ce_t = colour_change(((n, EPS),), 1, coeffs)
    sig = curve_signature(n, coeffs)
    e = euler_class(sig, range(1, n + 1))
    zero = Operator(Ce_t.source, Ce_t.source, 0, lambda P: Poly.zero(sig), label="0")
    return [
        ("e->t after t->e is the Euler class", compose(Ce_t, Ct_e), multiplication(Ct_e.source, e)),
        ("t->e after e->t is zero", compose(Ct_e, Ce_t), zero),
    ]


def squared_vandermonde_form(n: int, coeffs="ZZ") -> tuple[Poly, Poly]:
    """Euler class and (-1)^{n(n-1)/2} prod c_i prod_{i<j}(x_i-x_j)^2; equal as polynomials."""
    sig = curve_signature(n, coeffs)
    e = euler_class(sig, range(1, n + 1))
    alt = Poly.one(sig)
    for i in range(1, n + 1):
        alt = alt * _c(sig, i)
    alt = alt * _vandermonde(sig, range(1, n + 1)) ** 2
    if (n * (n - 1) // 2) % 2:
        alt = -alt
    return e, alt


def thick_thin_pair(n: int, which: str, coeffs="ZZ") -> tuple[Operator, Operator]:
    """Both sides of the thick-via-thin colour change, without any sign."""
    sig = curve_signature(n, coeffs)
    D = staircase(sig, n)
    if which == "t->e":
        lhs = colour_change(((n, TAU),), 1, coeffs)
        thin = tuple((1, EPS) for _ in range(n))
        rhs = chain([full_split(n, TAU, coeffs), thin_changes(n, TAU, coeffs),
                     multiplication(cspace(thin, coeffs), D), full_merge(n, EPS, coeffs)])
    else:
        lhs = colour_change(((n, EPS),), 1, coeffs)
        thin = tuple((1, TAU) for _ in range(n))
        rhs = chain([full_split(n, EPS, coeffs), thin_changes(n, EPS, coeffs),
                     multiplication(cspace(thin, coeffs), D), full_merge(n, TAU, coeffs)])
    return lhs, rhs


def thick_thin_sign(n: int, which: str = "e->t", maxdeg: int = 6, coeffs="ZZ") -> int | None:
    """The s in {+1,-1} with lhs = s*rhs on the basis up to maxdeg, or None."""
    lhs, rhs = thick_thin_pair(n, which, coeffs)
    signs = {1, -1}
    for b in lhs.source.basis(maxdeg):
        l, r = lhs(b), rhs(b)
        signs = {s for s in signs if l == r.scale(s)}
        if not signs:
            return None
    return 1 if 1 in signs else (-1 if signs else None)


def thin_cross_cases(n: int, coeffs="ZZ") -> list[tuple[str, Operator, Operator]]:
    """Thin multicoloured crossings against the tt crossing, for every thin colouring of n strands.

    With k the e-strand below and g the e-strand above, c_g R(P) = X(c_k P) - c_k P
    where X is the tt crossing. Both sides land in the all-t space.
    """
    cases = []
    for col in colourings(n):
        clam = tuple((1, c) for c in col)
        tt = tuple((1, TAU) for _ in col)
        for pos in range(1, n):
            if col[pos - 1] == col[pos]:
                continue
            R = mc_cross_thin(clam, pos, coeffs)
            X = same_colour_crossing(tt, pos, coeffs)
            sig = R.source.sig
            k = pos if col[pos - 1] == EPS else pos + 1
            g = pos + pos + 1 - k
            ck, cg = _c(sig, k), _c(sig, g)
            src, tgt = R.source, cspace(tt, coeffs)
            Ra, Xa = R.action, X.action
            lhs = Operator(src, tgt, 2, lambda P, Ra=Ra, cg=cg: cg * Ra(P), label=f"c{g}*R{pos}")
            rhs = Operator(src, tgt, 2, lambda P, Xa=Xa, ck=ck: Xa(ck * P) - ck * P, label=f"(X{pos}-1)*c{k}")
            cases.append((f"thin crossing at {pos} on {format_coloured(clam)}", lhs, rhs))
    return cases


# ---------------------------------------------------------------- coloured psi elements


def coloured_psi_ops(datum, P: Poly, beta, gamma, conjectural: bool = False, coeffs="ZZ") -> list[Operator]:
    """Bottom-to-top generator list for psi_w^P between coloured compositions.

    ``datum`` comes from double_cosets(sizes(beta), sizes(gamma)). A piece is
    coloured t on the coupon iff both of its ends are t.
    """
    beta, gamma = normalize(beta), normalize(gamma)
    ops: list[Operator] = []
    cells = datum.cells
    piece_sizes = datum.lam_prime
    # splits
    cur = beta
    pos = 1
    for i, (k, col) in enumerate(beta):
        sizes = [datum.matrix[i][j] for j in range(len(gamma)) if datum.matrix[i][j]]
        for s in sizes[:-1]:
            op = curve_split(cur, pos, s, cur[pos - 1][0] - s, coeffs)
            ops.append(op)
            cur = op.target.comp
            pos += 1
        pos += 1
    # bottom colour changes (e at the source, t at the target)
    for p, (i, j) in enumerate(cells, 1):
        if beta[i][1] == EPS and gamma[j][1] == TAU:
            op = colour_change(cur, p, coeffs)
            ops.append(op)
            cur = op.target.comp
    coupon_space = cspace(tuple((k, TAU if beta[i][1] == TAU and gamma[j][1] == TAU else EPS)
                                for k, (i, j) in zip(piece_sizes, cells)), coeffs)
    coupon_space.require(P, "coupon")
    ops.append(multiplication(cspace(cur, coeffs), P))
    # crossings
    for p in datum.word:
        if cur[p - 1][1] == cur[p][1]:
            op = same_colour_crossing(cur, p, coeffs)
        else:
            op = mc_cross(cur, p, conjectural, coeffs)
        ops.append(op)
        cur = op.target.comp
    # top colour changes (t at the source, e at the target)
    order = [cells[datum.sigma.index(q)] for q in range(1, len(cells) + 1)]
    for p, (i, j) in enumerate(order, 1):
        if beta[i][1] == TAU and gamma[j][1] == EPS:
            op = colour_change(cur, p, coeffs)
            ops.append(op)
            cur = op.target.comp
    # merges
    pos = 1
    for j, (k, col) in enumerate(gamma):
        count = sum(1 for (i, jj) in cells if jj == j)
        for _ in range(count - 1):
            op = curve_merge(cur, pos, coeffs)
            ops.append(op)
            cur = op.target.comp
        pos += 1
    return ops


def coupon_space_for(datum, beta, gamma, coeffs="ZZ") -> Space:
    beta, gamma = normalize(beta), normalize(gamma)
    return cspace(tuple((k, TAU if beta[i][1] == TAU and gamma[j][1] == TAU else EPS)
                        for k, (i, j) in zip(datum.lam_prime, datum.cells)), coeffs)


# ---------------------------------------------------------------- colour slide


def colour_slide_pairs(coeffs="ZZ") -> list[tuple[str, Operator, Operator, Space, Space]]:
    """The two colour-slide identities at n = 2, a = b = 1.

    Returns (name, lhs, rhs, source, target); both sides map source -> target.
    """
    et = ((1, EPS), (1, TAU))
    te = ((1, TAU), (1, EPS))
    tt = ((1, TAU), (1, TAU))
    ee = ((1, EPS), (1, EPS))
    # C^{tt}_{te} R^{te}_{et}  vs  R^{tt}_{tt} C^{tt}_{et}
    lhs1 = compose(colour_change(te, 2, coeffs), mc_cross_thin(et, 1, coeffs))
    rhs1 = compose(same_colour_crossing(tt, 1, coeffs), colour_change(et, 1, coeffs))
    # C^{et}_{ee} R^{ee}_{ee}  vs  R^{et}_{te} C^{te}_{ee}
    lhs2 = compose(colour_change(ee, 2, coeffs), same_colour_crossing(ee, 1, coeffs))
    rhs2 = compose(mc_cross_thin(te, 1, coeffs), colour_change(ee, 1, coeffs))
    return [
        ("change after crossing, e-end on top", lhs1, rhs1, cspace(et, coeffs), cspace(tt, coeffs)),
        ("change after crossing, e-end at bottom", lhs2, rhs2, cspace(ee, coeffs), cspace(et, coeffs)),
    ]


def identity_coset_elements(source: Space, target: Space, maxdeg: int) -> list[Operator]:
    """psi_e^Q for every coupon basis element Q: the bottom layer of the length filtration."""
    from .permcomb import double_cosets

    beta, gamma = source.comp, target.comp
    sizes_b = tuple(k for k, _ in beta)
    sizes_g = tuple(k for k, _ in gamma)
    out = []
    for datum in double_cosets(sizes_b, sizes_g):
        if datum.word:
            continue
        cs = coupon_space_for(datum, beta, gamma, source.sig.coeffs)
        for Q in cs.basis(maxdeg):
            out.append(chain(coloured_psi_ops(datum, Q, beta, gamma, coeffs=source.sig.coeffs)))
    return out


# ---------------------------------------------------------------- wreath product


def colourings(n: int) -> list[tuple[str, ...]]:
    return list(itertools.product((TAU, EPS), repeat=n))


class WreathVector(dict):
    """Element of the direct sum over thin colourings: colouring -> Poly."""

    def clean(self) -> "WreathVector":
        return WreathVector({k: v for k, v in self.items() if v})

    def __add__(self, other):
        out = WreathVector(self)
        for k, v in other.items():
            out[k] = out[k] + v if k in out else v
        return out.clean()

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c):
        return WreathVector({k: v.scale(c) for k, v in self.items()}).clean()

    def __eq__(self, other):
        return dict(self.clean()) == dict(WreathVector(other).clean())

    __hash__ = None


def wreath_basis(n: int, maxdeg: int, coeffs="ZZ") -> list[WreathVector]:
    out = []
    for col in colourings(n):
        sp = cspace(tuple((1, c) for c in col), coeffs)
        for b in sp.basis(maxdeg):
            out.append(WreathVector({col: b}))
    return out


def _swap_col(col, i):
    col = list(col)
    col[i - 1], col[i] = col[i], col[i - 1]
    return tuple(col)


def wreath_crossing(i: int, n: int) -> Callable[[WreathVector], WreathVector]:
    """The four-case generator s_i on thin strands i, i+1."""

    def act(vec: WreathVector) -> WreathVector:
        out = WreathVector()
        for col, P in vec.items():
            sig = P.sig
            pair = (col[i - 1], col[i])
            s = swap(P, i, ("x", "c"))
            if pair == (TAU, TAU):
                # Delta is symmetric, so Delta*d(P) = d(Delta*P); only the latter is polynomial
                res = s + demazure_simple(i, ("x", "c"), diagonal(sig, i, i + 1) * P)
            elif pair == (EPS, EPS):
                res = s
            else:
                res = thin_cross_formula(P, i, pair[0])
            out = out + WreathVector({_swap_col(col, i): res})
        return out

    return act


def plain_swap(i: int) -> Callable[[WreathVector], WreathVector]:
    def act(vec):
        return WreathVector({_swap_col(col, i): swap(P, i, ("x", "c")) for col, P in vec.items()}).clean()

    return act


def twisted_demazure(i: int, vec: WreathVector) -> WreathVector:
    """The Delta'-twisted divided difference: s_i-hat minus the plain swap."""
    n = len(next(iter(vec))) if vec else i + 1
    return wreath_crossing(i, n)(vec) - plain_swap(i)(vec)


def frobenius_action(i: int) -> Callable[[WreathVector], WreathVector]:
    """Delta' = 1(x)zy + zy(x)1 + y(x)z + z(x)y on strands i, i+1."""

    def act(vec):
        out = WreathVector()
        for col, P in vec.items():
            sig = P.sig
            pair = (col[i - 1], col[i])
            if pair == (TAU, TAU):
                out = out + WreathVector({col: diagonal(sig, i, i + 1) * P})
            elif pair == (TAU, EPS):
                out = out + WreathVector({_swap_col(col, i): _c(sig, i + 1) * P.drop([("c", i)])})
            elif pair == (EPS, TAU):
                out = out + WreathVector({_swap_col(col, i): _c(sig, i) * P.drop([("c", i + 1)])})
        return out

    return act


def strand_operators(j: int) -> dict[str, Callable[[WreathVector], WreathVector]]:
    """Generators of the j-th tensor factor of Z^e acting on the direct sum."""

    def idem(colour):
        return lambda vec: WreathVector({col: P for col, P in vec.items() if col[j - 1] == colour})

    def y(vec):  # t -> e, forget the point class
        return WreathVector({_set_col(col, j, EPS): P.drop([("c", j)]) for col, P in vec.items() if col[j - 1] == TAU}).clean()

    def z(vec):  # e -> t, multiply by the point class
        return WreathVector({_set_col(col, j, TAU): _c(P.sig, j) * P for col, P in vec.items() if col[j - 1] == EPS}).clean()

    def zy(vec):
        return WreathVector({col: _c(P.sig, j) * P for col, P in vec.items() if col[j - 1] == TAU}).clean()

    return {"1t": idem(TAU), "1e": idem(EPS), "y": y, "z": z, "zy": zy}


def _set_col(col, j, colour):
    col = list(col)
    col[j - 1] = colour
    return tuple(col)


def multiply_x(j: int):
    return lambda vec: WreathVector({col: Poly.var(P.sig, "x", j) * P for col, P in vec.items()})


def multiply_poly(f: Poly):
    return lambda vec: WreathVector({col: f * P for col, P in vec.items()}).clean()


# ---------------------------------------------------------------- zigzag algebra


def cohomology_of_curve(genus: int):
    """Basis labels, degrees and cup product of H*(C) for a curve of the given genus."""
    labels = ["1"] + [f"a{k}" for k in range(1, genus + 1)] + [f"b{k}" for k in range(1, genus + 1)] + ["c"]
    deg = {"1": 0, "c": 2}
    for k in range(1, genus + 1):
        deg[f"a{k}"] = deg[f"b{k}"] = 1

    def cup(p, q):
        if p == "1":
            return {q: 1}
        if q == "1":
            return {p: 1}
        if p[0] == "a" and q[0] == "b" and p[1:] == q[1:]:
            return {"c": 1}
        if p[0] == "b" and q[0] == "a" and p[1:] == q[1:]:
            return {"c": -1}
        return {}

    return labels, deg, cup


def zigzag_endomorphisms(genus: int = 0):
    """Realize End_{H*(C)}(H*(C) + M_pt) by solving the linearity equations.

    Returns (basis, blocks) where each basis element is a dict (row, col) -> value
    on the vector space basis of V and blocks names the Hom-component it lives in.
    """
    from .linalg import nullspace

    labels, deg, cup = cohomology_of_curve(genus)
    vlabels = [("H", l) for l in labels] + [("M", "pt")]
    dim = len(vlabels)
    index = {v: k for k, v in enumerate(vlabels)}

    def act(h, v):
        kind, l = v
        if kind == "H":
            return {("H", k): c for k, c in cup(h, l).items()}
        return {("M", "pt"): 1} if h == "1" else {}

    unknowns = [(r, c) for r in range(dim) for c in range(dim)]
    uidx = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for h in labels:
        for v in vlabels:
            # phi(h v) - h phi(v) = 0, coordinate by coordinate
            for target in range(dim):
                eq = [0] * len(unknowns)
                for w, cw in act(h, v).items():
                    eq[uidx[(target, index[w])]] += cw
                for s in range(dim):
                    for w, cw in act(h, vlabels[s]).items():
                        if index[w] == target:
                            eq[uidx[(s, index[v])]] -= cw
                if any(eq):
                    rows.append(eq)
    basis = nullspace(rows, len(unknowns))
    return basis, unknowns, vlabels, deg


def zigzag_dims(genus: int = 0, grading: str = "class") -> tuple[int, ...]:
    """Graded dimension of Z^e_C.

    ``class`` grades each endomorphism by the cohomology class it is built from:
    End(H*C) = H*C by phi -> phi(1), Hom(H*C, M) = M = H^2, Hom(M, H*C) = ann(H^{>0}) = H^2,
    End(M) = scalars. ``map`` uses the ordinary degree of a graded linear map.
    """
    basis, unknowns, vlabels, deg = zigzag_endomorphisms(genus)
    vdeg = [deg[l] if kind == "H" else 2 for kind, l in vlabels]
    out = [0, 0, 0]
    for vec in _homogeneous_split(basis, unknowns, vlabels, vdeg, grading):
        out[vec] += 1
    return tuple(out)


def _homogeneous_split(basis, unknowns, vlabels, vdeg, grading):
    """Degrees of a homogeneous basis of the solution space (one entry per element)."""
    from .linalg import rank_exact

    # group solution coordinates by (block, degree) and count the rank of each group
    def label(r, c):
        src, tgt = vlabels[c], vlabels[r]
        block = (src[0], tgt[0])
        if grading == "map":
            return vdeg[r] - vdeg[c]
        if block == ("M", "M"):
            return 0
        if block == ("H", "H"):
            return vdeg[r] if src[1] == "1" else None
        if block == ("H", "M"):
            return 2 if src[1] == "1" else None
        return vdeg[r]  # (M, H): the class hit by the generator of M

    groups: dict[int, list[list]] = {}
    for vec in basis:
        for d in (0, 1, 2):
            proj = [x if label(*unknowns[k]) == d else 0 for k, x in enumerate(vec)]
            groups.setdefault(d, []).append(proj)
    degrees = []
    for d, vecs in groups.items():
        degrees.extend([d] * rank_exact(vecs))
    return degrees
