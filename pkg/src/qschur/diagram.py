"""A small line-oriented language for Schur diagrams, and the psi basis."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from . import curve, kronecker
from .kernels import IncrementalRank
from .linalg import rank_exact
from .operator import BoundaryError, Operator, chain, identity
from .permcomb import (
    EPS,
    TAU,
    ColouredCoset,
    CosetDatum,
    dim_add,
    format_dim,
    parse_block,
)
from .ring import ParseError, Poly, parse_poly

Block = tuple  # (n0, n1) for the Kronecker family, (size, colour) for the curve family


def is_coloured(block) -> bool:
    return isinstance(block[1], str)


def format_block(block) -> str:
    if is_coloured(block):
        return f"{block[0]}{block[1]}"
    return format_dim(block)


def add_blocks(a, b):
    if is_coloured(a) != is_coloured(b):
        raise BoundaryError("mixing coloured and dimension-vector blocks")
    if is_coloured(a):
        if a[1] != b[1]:
            raise BoundaryError("merging blocks of different colours")
        return (a[0] + b[0], a[1])
    return dim_add(a, b)


# ---------------------------------------------------------------- nodes


@dataclass
class Node:
    kind: str
    pos: int = 1
    blocks: tuple = ()  # split: (parent, left, right); merge: (left, right, parent); id: boundary
    poly: str = ""
    span: tuple[int, int] | None = None
    direction: str = ""
    source: tuple = ()
    target: tuple = ()

    def to_text(self) -> str:
        if self.kind == "id":
            return "id[" + "+".join(format_block(b) for b in self.blocks) + "]"
        if self.kind == "split":
            p, l, r = self.blocks
            return f"split[{format_block(p)}->{format_block(l)}|{format_block(r)}@{self.pos}]"
        if self.kind == "merge":
            l, r, p = self.blocks
            return f"merge[{format_block(l)}|{format_block(r)}->{format_block(p)}@{self.pos}]"
        if self.kind == "cross":
            return f"cross[@{self.pos}]"
        if self.kind == "coupon":
            rng = "" if self.span is None else f"@{self.span[0]}-{self.span[1]}"
            return f"coupon[{self.poly}{rng}]"
        if self.kind == "cc":
            return f"cc[{self.direction}@{self.pos}]"
        return f"mx[@{self.pos},{self.direction}]"


@dataclass
class Diagram:
    nodes: list[Node] = field(default_factory=list)
    source: tuple = ()
    target: tuple = ()

    def to_text(self) -> str:
        return "; ".join(n.to_text() for n in self.nodes)

    @property
    def coloured(self) -> bool:
        return bool(self.source) and is_coloured(self.source[0])


# ---------------------------------------------------------------- parsing

_STMT = re.compile(r"\s*([a-z]+)\s*\[([^\[\]]*)\]\s*")


def parse_diagram(text: str) -> Diagram:
    nodes = []
    pos = 0
    for piece in text.split(";"):
        start = pos
        pos += len(piece) + 1
        if not piece.strip():
            raise ParseError("empty statement", start, text)
        m = _STMT.fullmatch(piece)
        if not m:
            bad = start + len(piece) - len(piece.lstrip())
            raise ParseError(f"expected name[...], got {piece.strip()!r}", bad, text)
        name, body = m.group(1), m.group(2)
        at = start + m.start(2)
        try:
            nodes.append(_parse_node(name, body.strip()))
        except ParseError:
            raise
        except (ValueError, IndexError) as e:
            raise ParseError(str(e), at, text) from None
    dg = Diagram(nodes)
    _resolve(dg, text)
    return dg


def _split_at(body: str) -> tuple[str, str | None]:
    if "@" in body:
        a, b = body.rsplit("@", 1)
        return a.strip(), b.strip()
    return body, None


def _parse_node(name: str, body: str) -> Node:
    if name == "id":
        return Node("id", blocks=tuple(parse_block(b) for b in body.split("+")))
    if name == "split":
        core, at = _split_at(body)
        parent, rest = core.split("->")
        left, right = rest.split("|")
        return Node("split", pos=int(at) if at else 1, blocks=(parse_block(parent), parse_block(left), parse_block(right)))
    if name == "merge":
        core, at = _split_at(body)
        pieces, parent = core.split("->")
        left, right = pieces.split("|")
        return Node("merge", pos=int(at) if at else 1, blocks=(parse_block(left), parse_block(right), parse_block(parent)))
    if name == "cross":
        _, at = _split_at(body)
        if at is None:
            raise ValueError("cross needs a position, e.g. cross[@1]")
        return Node("cross", pos=int(at))
    if name == "coupon":
        core, at = _split_at(body)
        span = None
        if at:
            a, _, b = at.partition("-")
            span = (int(a), int(b or a))
        if not core:
            raise ValueError("coupon needs a polynomial")
        return Node("coupon", poly=core, span=span)
    if name == "cc":
        core, at = _split_at(body)
        d = core.replace(" ", "")
        if d not in ("t->e", "e->t"):
            raise ValueError(f"colour change direction must be t->e or e->t, got {core!r}")
        return Node("cc", pos=int(at) if at else 1, direction=d)
    if name == "mx":
        body = body.lstrip("@")
        parts = [p.strip() for p in body.split(",")]
        d = parts[1].replace("->", "") if len(parts) > 1 else ""
        if d and d not in ("et", "te"):
            raise ValueError(f"crossing direction must be et or te, got {parts[1]!r}")
        return Node("mx", pos=int(parts[0]), direction=d)
    raise ValueError(f"unknown node {name!r}")


def _resolve(dg: Diagram, text: str = ""):
    """Fill in boundaries and check that consecutive nodes fit together."""
    cur: tuple | None = None
    for k, node in enumerate(dg.nodes):
        where = f"node {k + 1} ({node.to_text()})"
        if cur is None:
            if node.kind == "id":
                cur = node.blocks
            elif node.kind == "split":
                if node.pos != 1:
                    raise BoundaryError(f"{where}: unknown boundary")
                cur = (node.blocks[0],)
            elif node.kind == "merge":
                cur = (node.blocks[0], node.blocks[1])
            else:
                raise BoundaryError(f"{where}: the diagram must start with id, split or merge")
            dg.source = cur
        node.source = cur
        p = node.pos
        if node.kind != "id" and node.kind != "coupon" and not 1 <= p <= len(cur):
            raise BoundaryError(f"{where}: no block at position {p}")
        if node.kind == "id":
            if node.blocks != cur:
                raise BoundaryError(f"{where}: boundary is {_fmt(cur)}")
        elif node.kind == "split":
            parent, left, right = node.blocks
            if cur[p - 1] != parent:
                raise BoundaryError(f"{where}: block {p} is {format_block(cur[p - 1])}")
            if add_blocks(left, right) != parent:
                raise BoundaryError(f"{where}: pieces do not add up")
            cur = cur[: p - 1] + (left, right) + cur[p:]
        elif node.kind == "merge":
            left, right, parent = node.blocks
            if p >= len(cur) or cur[p - 1] != left or cur[p] != right:
                raise BoundaryError(f"{where}: blocks {p},{p + 1} are not {format_block(left)}|{format_block(right)}")
            if add_blocks(left, right) != parent:
                raise BoundaryError(f"{where}: pieces do not add up")
            cur = cur[: p - 1] + (parent,) + cur[p + 1 :]
        elif node.kind in ("cross", "mx"):
            if p >= len(cur):
                raise BoundaryError(f"{where}: no block to the right of position {p}")
            a, b = cur[p - 1], cur[p]
            if node.kind == "cross" and is_coloured(a) and a[1] != b[1]:
                raise BoundaryError(f"{where}: strands of different colours cross with mx")
            if node.kind == "mx":
                if not is_coloured(a) or a[1] == b[1]:
                    raise BoundaryError(f"{where}: mx needs two strands of different colours")
                if node.direction and node.direction != a[1] + b[1]:
                    raise BoundaryError(f"{where}: strands are {a[1]}{b[1]}")
                node.direction = a[1] + b[1]
            cur = cur[: p - 1] + (b, a) + cur[p + 1 :]
        elif node.kind == "cc":
            k, col = cur[p - 1]
            if not is_coloured(cur[p - 1]) or col != node.direction[0]:
                raise BoundaryError(f"{where}: block {p} is {format_block(cur[p - 1])}")
            cur = cur[: p - 1] + ((k, node.direction[-1]),) + cur[p:]
        elif node.kind == "coupon":
            if node.span and not (1 <= node.span[0] <= node.span[1] <= len(cur)):
                raise BoundaryError(f"{where}: range outside the boundary")
        node.target = cur
    dg.target = cur if cur is not None else ()


def _fmt(bdry) -> str:
    return "(" + ",".join(format_block(b) for b in bdry) + ")"


# ---------------------------------------------------------------- evaluation


def _span_variables(bdry, span) -> set:
    """Variables owned by blocks span[0]..span[1]."""
    out = set()
    if is_coloured(bdry[0]):
        start = sum(k for k, _ in bdry[: span[0] - 1])
        for k, _ in bdry[span[0] - 1 : span[1]]:
            for i in range(start + 1, start + k + 1):
                out |= {("x", i), ("c", i)}
            start += k
        return out
    su = sum(b[0] for b in bdry[: span[0] - 1])
    sv = sum(b[1] for b in bdry[: span[0] - 1])
    for b in bdry[span[0] - 1 : span[1]]:
        out |= {("u", su + i) for i in range(1, b[0] + 1)} | {("v", sv + j) for j in range(1, b[1] + 1)}
        su += b[0]
        sv += b[1]
    return out


def node_operator(node: Node, variant: str = "m", conjectural: bool = False, coeffs: str = "ZZ") -> Operator:
    src = node.source
    if is_coloured(src[0]):
        if node.kind == "id":
            return identity(curve.cspace(src, coeffs))
        if node.kind == "split":
            _, left, right = node.blocks
            return curve.curve_split(src, node.pos, left[0], right[0], coeffs)
        if node.kind == "merge":
            return curve.curve_merge(src, node.pos, coeffs)
        if node.kind == "cross":
            return curve.same_colour_crossing(src, node.pos, coeffs)
        if node.kind == "mx":
            return curve.mc_cross(src, node.pos, conjectural, coeffs)
        if node.kind == "cc":
            return curve.colour_change(src, node.pos, coeffs)
        space = curve.cspace(src, coeffs)
    else:
        if node.kind == "id":
            return kronecker.identity_op(src, coeffs)
        if node.kind == "split":
            _, left, right = node.blocks
            return kronecker.split_action(variant, src, node.pos, left, right, coeffs)
        if node.kind == "merge":
            return kronecker.merge_action(variant, src, node.pos, coeffs)
        if node.kind == "cross":
            return kronecker.naive_crossing(variant, src, node.pos, coeffs)
        if node.kind in ("cc", "mx"):
            raise BoundaryError(f"{node.kind} needs coloured blocks")
        space = kronecker.kspace(src, coeffs)
    P = parse_poly(node.poly, space.sig)
    if node.span is not None:
        allowed = _span_variables(src, node.span)
        stray = [v for v in space.sig.variables if v not in allowed]
        if P.involves(stray):
            raise BoundaryError(f"coupon {node.poly} uses variables outside blocks {node.span[0]}-{node.span[1]}")
    from .operator import multiplication

    return multiplication(space, P)


def eval_diagram(dg: Diagram, variant: str = "m", conjectural: bool = False, coeffs: str = "ZZ") -> Operator:
    ops = [node_operator(n, variant, conjectural, coeffs) for n in dg.nodes]
    return chain(ops)


# ---------------------------------------------------------------- psi elements


def _split_nodes(bottom: tuple, pieces_per_block: Sequence[Sequence]) -> tuple[list[Node], tuple]:
    nodes = []
    cur = bottom
    pos = 1
    for pieces in pieces_per_block:
        for piece in pieces[:-1]:
            parent = cur[pos - 1]
            rest = _subtract(parent, piece)
            nodes.append(Node("split", pos=pos, blocks=(parent, piece, rest)))
            cur = cur[: pos - 1] + (piece, rest) + cur[pos:]
            pos += 1
        pos += 1
    return nodes, cur


def _subtract(a, b):
    if is_coloured(a):
        return (a[0] - b[0], a[1])
    return (a[0] - b[0], a[1] - b[1])


def _merge_nodes(cur: tuple, counts: Sequence[int]) -> list[Node]:
    nodes = []
    pos = 1
    for c in counts:
        for _ in range(c - 1):
            left, right = cur[pos - 1], cur[pos]
            parent = add_blocks(left, right)
            nodes.append(Node("merge", pos=pos, blocks=(left, right, parent)))
            cur = cur[: pos - 1] + (parent,) + cur[pos + 1 :]
        pos += 1
    return nodes


def psi_element(datum, P: Poly | str, beta, gamma) -> Diagram:
    """psi_w^P from the bottom boundary ``beta`` to the top boundary ``gamma``.

    ``datum`` is a ColouredCoset for I-compositions or a CosetDatum of the
    block sizes for coloured compositions.
    """
    beta, gamma = tuple(map(tuple, beta)), tuple(map(tuple, gamma))
    ptext = P if isinstance(P, str) else P.to_str()
    if beta and is_coloured(beta[0]):
        return _coloured_psi(datum, ptext, beta, gamma)
    if not isinstance(datum, ColouredCoset):
        raise TypeError("Kronecker psi elements need a ColouredCoset")
    grid = {c: p for c, p in zip(datum.cells, datum.beta_prime)}
    pieces = [[grid[(i, j)] for j in range(len(gamma)) if (i, j) in grid] for i in range(len(beta))]
    nodes, cur = _split_nodes(beta, pieces)
    nodes.append(Node("coupon", poly=ptext))
    for p in datum.word:
        nodes.append(Node("cross", pos=p))
        cur = cur[: p - 1] + (cur[p], cur[p - 1]) + cur[p + 1 :]
    counts = [sum(1 for (i, j) in datum.cells if j == jj) for jj in range(len(gamma))]
    nodes += _merge_nodes(cur, counts)
    dg = Diagram(_anchor(nodes, beta))
    _resolve(dg)
    return dg


def _anchor(nodes: list[Node], bottom: tuple) -> list[Node]:
    """Prefix an idempotent unless the first node already pins the bottom boundary."""
    if nodes and len(bottom) == 1 and nodes[0].kind == "split":
        return nodes
    return [Node("id", blocks=bottom)] + nodes


def _coloured_psi(datum: CosetDatum, ptext: str, beta, gamma) -> Diagram:
    cells = datum.cells
    pieces = [[(datum.matrix[i][j], beta[i][1]) for j in range(len(gamma)) if datum.matrix[i][j]] for i in range(len(beta))]
    nodes, cur = _split_nodes(beta, pieces)
    for p, (i, j) in enumerate(cells, 1):
        if beta[i][1] == EPS and gamma[j][1] == TAU:
            nodes.append(Node("cc", pos=p, direction="e->t"))
            cur = cur[: p - 1] + ((cur[p - 1][0], TAU),) + cur[p:]
    nodes.append(Node("coupon", poly=ptext))
    order = list(cells)
    for p in datum.word:
        a, b = cur[p - 1], cur[p]
        nodes.append(Node("cross" if a[1] == b[1] else "mx", pos=p))
        cur = cur[: p - 1] + (b, a) + cur[p + 1 :]
        order[p - 1], order[p] = order[p], order[p - 1]
    for p, (i, j) in enumerate(order, 1):
        if beta[i][1] == TAU and gamma[j][1] == EPS:
            nodes.append(Node("cc", pos=p, direction="t->e"))
            cur = cur[: p - 1] + ((cur[p - 1][0], EPS),) + cur[p:]
    counts = [sum(1 for (i, j) in cells if j == jj) for jj in range(len(gamma))]
    nodes += _merge_nodes(cur, counts)
    dg = Diagram(_anchor(nodes, beta))
    _resolve(dg)
    return dg


def coupon_space(datum, beta, gamma, coeffs: str = "ZZ"):
    beta, gamma = tuple(map(tuple, beta)), tuple(map(tuple, gamma))
    if beta and is_coloured(beta[0]):
        return curve.coupon_space_for(datum, beta, gamma, coeffs)
    return kronecker.kspace(datum.beta_prime, coeffs)


def psi_family(beta, gamma, maxdeg: int, coeffs: str = "ZZ") -> list[tuple[object, Poly, Diagram]]:
    """All psi_w^P between two I-compositions with P over the coupon basis up to maxdeg."""
    from .permcomb import coloured_cosets

    out = []
    for datum in coloured_cosets(beta, gamma):
        for P in coupon_space(datum, beta, gamma, coeffs).basis(maxdeg):
            out.append((datum, P, psi_element(datum, P, beta, gamma)))
    return out


# ---------------------------------------------------------------- independence


@dataclass
class IndependenceReport:
    elements: int
    degree_bound: int
    rank: int
    verdict: str
    method: str = "exact"

    @property
    def independent(self) -> bool:
        return self.rank == self.elements

    def as_dict(self) -> dict:
        return {"elements": self.elements, "degree_bound": self.degree_bound, "rank": self.rank,
                "verdict": self.verdict, "method": self.method}


CERTIFICATE_PRIME = 2_147_483_647


def independence_report(elems: Sequence[Diagram | Operator], variant: str = "m", D: int = 8,
                        conjectural: bool = False) -> IndependenceReport:
    """Rank of the elements as operators, read off their values on the source basis up to D.

    Columns (one per input and output monomial) are vectors indexed by the
    elements. A full rank over GF(p) certifies independence over Q and stops
    early; otherwise every column is collected and the rank is taken exactly.
    """
    if not elems:
        return IndependenceReport(0, D, 0, f"independent (certified at degree {D})")
    ops = [e if isinstance(e, Operator) else eval_diagram(e, variant, conjectural) for e in elems]
    src, tgt = ops[0].source, ops[0].target
    if any(op.source != src or op.target != tgt for op in ops):
        raise BoundaryError("elements have different boundaries")
    n = len(ops)
    modp = IncrementalRank(n, CERTIFICATE_PRIME)
    columns = []
    for b in src.basis(D):
        cols: dict[int, list] = {}
        for idx, op in enumerate(ops):
            for key, c in op(b).terms.items():
                col = cols.get(key)
                if col is None:
                    col = cols[key] = [0] * n
                col[idx] = c
        for key in sorted(cols):
            columns.append(cols[key])
            modp.add(cols[key])
        if modp.rank == n:
            return IndependenceReport(n, D, n, f"independent (certified at degree {D})", "mod-p certificate")
    rank = rank_exact(columns)
    verdict = f"independent (certified at degree {D})" if rank == n else f"not separated at degree {D}"
    return IndependenceReport(n, D, rank, verdict, "exact")


# ---------------------------------------------------------------- counts


def invariant_series(parts: Sequence[int], h: int) -> list[int]:
    """Coefficients up to t^h of prod over parts k of prod_{i<=k} 1/(1-t^i)."""
    series = [1] + [0] * h
    for k in parts:
        for i in range(1, k + 1):
            # multiply by 1/(1-t^i)
            for d in range(i, h + 1):
                series[d] += series[d - i]
    return series


def predicted_count(beta, gamma, D: int) -> int:
    """Number of psi_w^P with P of degree <= D, from the Hilbert series of the coupon spaces."""
    from .permcomb import coloured_cosets

    total = 0
    for datum in coloured_cosets(beta, gamma):
        parts = [k for piece in datum.beta_prime for k in piece if k]
        total += sum(invariant_series(parts, D // 2))
    return total


@dataclass
class PairReport:
    beta: tuple
    gamma: tuple
    predicted: int
    report: IndependenceReport

    @property
    def ok(self) -> bool:
        return self.report.independent and self.report.elements == self.predicted

    def as_dict(self) -> dict:
        from .permcomb import format_icomp

        return {"beta": format_icomp(self.beta), "gamma": format_icomp(self.gamma),
                "predicted": self.predicted, **self.report.as_dict()}


def basis_pair(beta, gamma, variant: str = "m", D: int = 8) -> PairReport:
    elems = [dg for _, _, dg in psi_family(beta, gamma, D)]
    return PairReport(tuple(beta), tuple(gamma), predicted_count(beta, gamma, D),
                      independence_report(elems, variant, D))


def basis_pairs(alpha) -> list[tuple[tuple, tuple]]:
    from .permcomb import i_compositions

    comps = i_compositions(tuple(alpha))
    return [(b, g) for b in comps for g in comps]
