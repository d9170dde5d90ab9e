"""Sparse exact polynomials with ordinary and square-zero generators.

Every generator has cohomological degree 2. Monomials are packed into ints
(eight bits per variable, see ``kernels``); ``Poly.terms`` maps packed
monomials to nonzero coefficients.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .kernels import FIELD, FIELD_BITS, div_difference, mul_terms, swap_fields

ORDINARY = "ordinary"
SQUARE_ZERO = "square-zero"


class RingError(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        where = f" at position {pos}"
        if text:
            where += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(message + where)


@dataclass(frozen=True)
class Family:
    name: str
    count: int
    kind: str = ORDINARY


@dataclass(frozen=True)
class RingSignature:
    families: tuple[Family, ...]
    coeffs: str = "ZZ"

    def __post_init__(self):
        fams = tuple(f if isinstance(f, Family) else Family(*f) for f in self.families)
        object.__setattr__(self, "families", fams)
        names = [f.name for f in fams]
        if len(set(names)) != len(names):
            raise RingError(f"duplicate family names in {names}")
        for f in fams:
            if not f.name.isalpha():
                raise RingError(f"family name must be alphabetic: {f.name!r}")
            if f.count < 0:
                raise RingError(f"negative count for family {f.name}")
            if f.kind not in (ORDINARY, SQUARE_ZERO):
                raise RingError(f"unknown family kind {f.kind!r}")
        if not (self.coeffs in ("ZZ", "QQ") or re.fullmatch(r"GF\d+", self.coeffs)):
            raise RingError(f"unknown coefficient ring {self.coeffs!r}")

    @classmethod
    def of(cls, *specs, coeffs: str = "ZZ") -> "RingSignature":
        return cls(tuple(Family(*s) for s in specs), coeffs)

    @cached_property
    def _offsets(self) -> dict[str, int]:
        out, pos = {}, 0
        for f in self.families:
            out[f.name] = pos
            pos += f.count
        return out

    @cached_property
    def nvars(self) -> int:
        return sum(f.count for f in self.families)

    @cached_property
    def variables(self) -> list[tuple[str, int]]:
        return [(f.name, i) for f in self.families for i in range(1, f.count + 1)]

    @cached_property
    def kinds(self) -> list[str]:
        return [f.kind for f in self.families for _ in range(f.count)]

    @cached_property
    def zmask(self) -> int:
        m = 0
        for v, kind in enumerate(self.kinds):
            if kind == SQUARE_ZERO:
                m |= 1 << (v * FIELD_BITS)
        return m

    @cached_property
    def modulus(self) -> int:
        return int(self.coeffs[2:]) if self.coeffs.startswith("GF") else 0

    def family(self, name: str) -> Family:
        for f in self.families:
            if f.name == name:
                return f
        raise RingError(f"no family named {name!r}")

    def index(self, name: str, i: int) -> int:
        f = self.family(name)
        if not 1 <= i <= f.count:
            raise RingError(f"{name}{i} out of range (family has {f.count} variables)")
        return self._offsets[name] + i - 1

    def shift(self, name: str, i: int) -> int:
        return self.index(name, i) * FIELD_BITS

    def coerce(self, c):
        if self.modulus:
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, self.modulus)) % self.modulus
            return int(c) % self.modulus
        if self.coeffs == "QQ":
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise RingError(f"{c} is not an integer")
            return c.numerator
        if not isinstance(c, int):
            raise RingError(f"not an exact integer: {c!r}")
        return c

    def divide_scalar(self, a, b):
        """Exact scalar quotient a/b, or raise NotDivisible."""
        if self.modulus:
            return (a * pow(b, -1, self.modulus)) % self.modulus
        if self.coeffs == "QQ":
            return Fraction(a) / b
        q, r = divmod(a, b)
        if r:
            raise NotDivisible(f"{a} is not divisible by {b} over ZZ")
        return q

    def with_coeffs(self, coeffs: str) -> "RingSignature":
        return RingSignature(self.families, coeffs)

    def describe(self) -> str:
        parts = [f"{f.name}1..{f.name}{f.count}" + ("(sq0)" if f.kind == SQUARE_ZERO else "") for f in self.families]
        return f"{self.coeffs}[{', '.join(parts)}]"


def key_half_degree(key: int) -> int:
    s = 0
    while key:
        s += key & FIELD
        key >>= FIELD_BITS
    return s


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (v * FIELD_BITS)) & FIELD for v in range(nvars))


def pack(exps: Sequence[int]) -> int:
    key = 0
    for v, e in enumerate(exps):
        if e:
            if e > FIELD:
                raise OverflowError("exponent too large for packed monomial")
            key |= e << (v * FIELD_BITS)
    return key


class Poly:
    """Immutable sparse polynomial over a RingSignature."""

    __slots__ = ("sig", "terms", "hb")

    def __init__(self, sig: RingSignature, terms: dict | None = None, hb: int | None = None):
        self.sig = sig
        self.terms = terms if terms is not None else {}
        if hb is None:
            hb = max((key_half_degree(k) for k in self.terms), default=0)
        self.hb = hb

    # constructors
    @classmethod
    def zero(cls, sig):
        return cls(sig, {}, 0)

    @classmethod
    def const(cls, sig, c):
        c = sig.coerce(c)
        return cls(sig, {0: c} if c else {}, 0)

    @classmethod
    def one(cls, sig):
        return cls.const(sig, 1)

    @classmethod
    def var(cls, sig, name: str, i: int):
        if sig.family(name).count < i:
            raise RingError(f"{name}{i} not in {sig.describe()}")
        return cls(sig, {1 << sig.shift(name, i): sig.coerce(1)}, 1)

    @classmethod
    def from_exponents(cls, sig, exps: Sequence[int], c=1):
        for v, e in enumerate(exps):
            if e > 1 and sig.kinds[v] == SQUARE_ZERO:
                return cls.zero(sig)
        return cls(sig, {pack(exps): sig.coerce(c)})

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.sig == other.sig and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.sig, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def _check(self, other):
        if other.sig != self.sig:
            raise RingError(f"signature mismatch: {self.sig.describe()} vs {other.sig.describe()}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.sig, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        mod = self.sig.modulus
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if mod:
                v %= mod
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Poly(self.sig, out, max(self.hb, other.hb))

    __radd__ = __add__

    def __neg__(self):
        mod = self.sig.modulus
        if mod:
            return Poly(self.sig, {k: (-c) % mod for k, c in self.terms.items()}, self.hb)
        return Poly(self.sig, {k: -c for k, c in self.terms.items()}, self.hb)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        c = self.sig.coerce(c)
        if not c:
            return Poly.zero(self.sig)
        mod = self.sig.modulus
        if mod:
            return Poly(self.sig, {k: (v * c) % mod for k, v in self.terms.items() if (v * c) % mod}, self.hb)
        return Poly(self.sig, {k: v * c for k, v in self.terms.items()}, self.hb)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.sig)
        hb = self.hb + other.hb
        if hb > FIELD:
            raise OverflowError("product degree exceeds the packed monomial range")
        return Poly(self.sig, mul_terms(self.terms, other.terms, self.sig.zmask, self.sig.modulus), hb)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = Poly.one(self.sig)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # structure
    def sort_key(self, key: int):
        n = self.sig.nvars
        exps = unpack(key, n)
        kinds = self.sig.kinds
        ordinary = tuple(e for e, k in zip(exps, kinds) if k == ORDINARY)
        mask = tuple(e for e, k in zip(exps, kinds) if k == SQUARE_ZERO)
        return (sum(exps), ordinary, mask)

    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda kv: self.sort_key(kv[0]), reverse=descending)

    def degree(self) -> int:
        """Cohomological degree of the top term, -1 for zero."""
        if not self.terms:
            return -1
        return 2 * max(key_half_degree(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        return len({key_half_degree(k) for k in self.terms}) <= 1

    def homogeneous_part(self, degree: int) -> "Poly":
        h = degree // 2
        return Poly(self.sig, {k: c for k, c in self.terms.items() if key_half_degree(k) == h})

    def graded_parts(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for k, c in self.terms.items():
            parts.setdefault(2 * key_half_degree(k), {})[k] = c
        return {d: Poly(self.sig, t) for d, t in sorted(parts.items())}

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(pack(exps), 0)

    def exponent_vectors(self):
        n = self.sig.nvars
        return [(unpack(k, n), c) for k, c in self.sorted_terms()]

    def involves(self, variables: Iterable[tuple[str, int]]) -> bool:
        mask = _field_mask(self.sig, variables)
        return any(k & mask for k in self.terms)

    def drop(self, variables: Iterable[tuple[str, int]]) -> "Poly":
        """Discard every term containing one of the given variables."""
        mask = _field_mask(self.sig, variables)
        return Poly(self.sig, {k: c for k, c in self.terms.items() if not k & mask}, self.hb)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        names = self.sig.variables
        pieces = []
        for key, c in self.sorted_terms():
            factors = []
            for v, e in enumerate(unpack(key, self.sig.nvars)):
                if e:
                    name, i = names[v]
                    factors.append(f"{name}{i}" + (f"^{e}" if e > 1 else ""))
            neg = c < 0 if not self.sig.modulus else False
            mag = -c if neg else c
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{mag}*{body}"
            else:
                body = str(mag)
            pieces.append(("-" if neg else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_str

    def __repr__(self):
        return f"Poly({self.to_str()!r})"


def _field_mask(sig: RingSignature, variables) -> int:
    mask = 0
    for name, i in variables:
        mask |= FIELD << sig.shift(name, i)
    return mask


def gens(sig: RingSignature, name: str) -> list[Poly]:
    return [Poly.var(sig, name, i) for i in range(1, sig.family(name).count + 1)]


# ---------------------------------------------------------------- actions


def _check_targets(sig: RingSignature, targets, k: int):
    for name in targets:
        if sig.family(name).count != k:
            raise RingError(f"family {name} has {sig.family(name).count} variables, permutation acts on {k}")


def permute_action(pi: Sequence[int], targets: Iterable[str], P: Poly) -> Poly:
    """Permute the indices of every targeted family simultaneously: v_i -> v_{pi(i)}."""
    sig = P.sig
    targets = tuple(targets)
    k = len(pi)
    _check_targets(sig, targets, k)
    mapping = list(range(sig.nvars))
    for name in targets:
        off = sig.index(name, 1) if k else 0
        for i in range(k):
            mapping[off + i] = off + pi[i] - 1
    out = {}
    n = sig.nvars
    for key, c in P.terms.items():
        new = 0
        for v in range(n):
            e = (key >> (v * FIELD_BITS)) & FIELD
            if e:
                new |= e << (mapping[v] * FIELD_BITS)
        out[new] = c
    return Poly(sig, out, P.hb)


def swap(P: Poly, r: int, targets: Iterable[str], offset: int = 0) -> Poly:
    """The adjacent transposition s_r (indices r, r+1 after ``offset``) on all targets."""
    sig = P.sig
    pairs = [(sig.shift(name, offset + r), sig.shift(name, offset + r + 1)) for name in targets]
    return Poly(sig, swap_fields(P.terms, pairs), P.hb)


def is_invariant(P: Poly, lam: Sequence[int], targets: Iterable[str], offset: int = 0) -> bool:
    targets = tuple(targets)
    start = offset
    for block in lam:
        for r in range(start + 1, start + block):
            if swap(P, r, targets) != P:
                return False
        start += block
    return True


# ---------------------------------------------------------------- division


def _as_difference(D: Poly):
    """Return (shift_i, shift_j, sign) when D = sign*(X_i - X_j) for ordinary X."""
    if len(D.terms) != 2:
        return None
    (k1, c1), (k2, c2) = D.terms.items()
    mod = D.sig.modulus
    one = 1
    minus = (-1) % mod if mod else -1
    if {c1, c2} != {one, minus} or one == minus:
        return None
    shifts = []
    for k in (k1, k2):
        if k == 0 or k & (k - 1):
            return None
        s = k.bit_length() - 1
        if D.sig.kinds[s // FIELD_BITS] != ORDINARY:
            return None
        shifts.append(s)
    if c1 == one:
        return shifts[0], shifts[1], 1
    return shifts[1], shifts[0], 1


def _order_key(sig: RingSignature):
    kinds = sig.kinds
    n = sig.nvars

    def key(k):
        exps = unpack(k, n)
        ordinary = tuple(e for e, kd in zip(exps, kinds) if kd == ORDINARY)
        sq = tuple(e for e, kd in zip(exps, kinds) if kd == SQUARE_ZERO)
        return (sum(ordinary), ordinary, sum(sq), sq)

    return key


def exact_div(P: Poly, D: Poly) -> Poly:
    """Q with P = Q*D, or NotDivisible."""
    P._check(D)
    sig = P.sig
    if not D:
        raise ZeroDivisionError("division by the zero polynomial")
    if not P:
        return Poly.zero(sig)
    if list(D.terms) == [0]:
        c = D.terms[0]
        return Poly(sig, {k: sig.divide_scalar(v, c) for k, v in P.terms.items()}, P.hb)
    diff = _as_difference(D)
    if diff is not None:
        si, sj, _ = diff
        q, r = div_difference(P.terms, si, sj, sig.modulus)
        if r:
            raise NotDivisible(f"{P} is not divisible by {D}")
        return Poly(sig, q, max(P.hb - 1, 0))
    return _long_division(P, D)


def _long_division(P: Poly, D: Poly) -> Poly:
    sig = P.sig
    order = _order_key(sig)
    lm = max(D.terms, key=order)
    lc = D.terms[lm]
    lm_exps = unpack(lm, sig.nvars)
    rest = Poly(sig, {k: c for k, c in D.terms.items() if k != lm})
    R = dict(P.terms)
    Q: dict = {}
    mod = sig.modulus
    while R:
        m = max(R, key=order)
        exps = unpack(m, sig.nvars)
        if any(a < b for a, b in zip(exps, lm_exps)):
            raise NotDivisible(f"{P} is not divisible by {D}")
        c = sig.divide_scalar(R.pop(m), lc)
        qk = m - lm
        Q[qk] = c
        sub = mul_terms({qk: c}, rest.terms, sig.zmask, mod)
        for k, v in sub.items():
            nv = R.get(k, 0) - v
            if mod:
                nv %= mod
            if nv:
                R[k] = nv
            else:
                R.pop(k, None)
    return Poly(sig, {k: v for k, v in Q.items() if v})


# ---------------------------------------------------------------- bases


def _monomials_of_half_degree(kinds: Sequence[str], h: int, forbidden: frozenset[int]):
    n = len(kinds)

    def rec(v, left):
        if v == n:
            if left == 0:
                yield ()
            return
        top = 0 if v in forbidden else (min(left, 1) if kinds[v] == SQUARE_ZERO else left)
        for e in range(top, -1, -1):
            for tail in rec(v + 1, left - e):
                yield (e,) + tail

    return list(rec(0, h))


def orbit_basis(
    sig: RingSignature,
    actions: Sequence[tuple[Sequence[str], Sequence[int], int]],
    maxdeg: int,
    forbidden: Iterable[tuple[str, int]] = (),
) -> list[Poly]:
    """Orbit sums of monomials of degree <= maxdeg under a product of parabolic groups.

    Each action is (families, composition, index offset): S_composition permutes the
    indices offset+1.. of all listed families simultaneously.
    """
    if maxdeg < 0 or maxdeg % 2:
        raise ValueError("maxdeg must be a nonnegative even integer")
    forb = frozenset(sig.index(name, i) for name, i in forbidden)
    blocks = []  # list of (list of variable-index tuples per position)
    for families, comp, offset in actions:
        start = offset
        for b in comp:
            positions = [tuple(sig.index(f, start + j + 1) for f in families) for j in range(b)]
            blocks.append(positions)
            start += b
    out = []
    seen = set()
    for h in range(maxdeg // 2 + 1):
        mons = _monomials_of_half_degree(sig.kinds, h, forb)
        for exps in mons:
            if exps in seen:
                continue
            orbit = {exps}
            for positions in blocks:
                new_orbit = set()
                for e in orbit:
                    states = [tuple(e[v] for v in pos) for pos in positions]
                    for perm in set(itertools.permutations(states)):
                        ee = list(e)
                        for pos, st in zip(positions, perm):
                            for v, val in zip(pos, st):
                                ee[v] = val
                        new_orbit.add(tuple(ee))
                orbit = new_orbit
            seen |= orbit
            out.append(Poly(sig, {pack(e): sig.coerce(1) for e in orbit}, h))
    return out


def monomial_basis(
    sig: RingSignature,
    lam: Sequence[int] | None,
    maxdeg: int,
    targets: Iterable[str] | None = None,
    forbidden: Iterable[tuple[str, int]] = (),
) -> list[Poly]:
    """Spanning, duplicate-free basis up to maxdeg, of orbit sums when ``lam`` is given."""
    if lam is None:
        return orbit_basis(sig, [], maxdeg, forbidden)
    n = sum(lam)
    if targets is None:
        targets = [f.name for f in sig.families if f.count == n]
    return orbit_basis(sig, [(tuple(targets), tuple(lam), 0)], maxdeg, forbidden)


# ---------------------------------------------------------------- homomorphisms


def substitute(P: Poly, target: RingSignature, images: dict[tuple[str, int], Poly]) -> Poly:
    """Ring map sending each source variable to its image in ``target``."""
    sig = P.sig
    names = sig.variables
    out = Poly.zero(target)
    cache: dict[tuple[int, int], Poly] = {}
    for key, c in P.terms.items():
        term = Poly.const(target, c)
        for v, e in enumerate(unpack(key, sig.nvars)):
            if e:
                if (v, e) not in cache:
                    cache[(v, e)] = images[names[v]] ** e
                term = term * cache[(v, e)]
        out = out + term
    return out


def relabel(P: Poly, target: RingSignature, var_map: dict[tuple[str, int], tuple[str, int]]) -> Poly:
    """Rename variables into another signature (injective on the support)."""
    sig = P.sig
    names = sig.variables
    shifts = [target.shift(*var_map[names[v]]) if names[v] in var_map else None for v in range(sig.nvars)]
    out = {}
    for key, c in P.terms.items():
        new = 0
        for v, e in enumerate(unpack(key, sig.nvars)):
            if e:
                if shifts[v] is None:
                    raise RingError(f"variable {names[v]} has no image")
                new += e << shifts[v]
        out[new] = target.coerce(c)
    return Poly(target, out, P.hb)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)(\d+)|(\^|\*|\+|-|/|\(|\)))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("var", (m.group(2), int(m.group(3))), start))
        else:
            toks.append((m.group(4), None, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def parse_poly(text: str, sig: RingSignature) -> Poly:
    """Parse e.g. ``3*u1^2*v2 - c1*x2 + 1``."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i][0]

    def take(kind=None):
        nonlocal i
        tok = toks[i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2], text)
        i += 1
        return tok

    def expr():
        neg = False
        if peek() in "+-":
            neg = take()[0] == "-"
        acc = term()
        if neg:
            acc = -acc
        while peek() in ("+", "-"):
            op = take()[0]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() in ("*", "/"):
            op = take()[0]
            if op == "*":
                acc = acc * factor()
            else:
                tok = take("num")
                if tok[1] == 0:
                    raise ParseError("division by zero", tok[2], text)
                try:
                    acc = Poly(sig, {k: sig.divide_scalar(c, tok[1]) for k, c in acc.terms.items()}, acc.hb)
                except NotDivisible as exc:
                    raise ParseError(str(exc), tok[2], text) from None
        return acc

    def factor():
        base = atom()
        if peek() == "^":
            take()
            e = take("num")[1]
            base = base**e
        return base

    def atom():
        kind, val, pos = toks[i]
        if kind == "num":
            take()
            return Poly.const(sig, val)
        if kind == "var":
            take()
            name, idx = val
            try:
                return Poly.var(sig, name, idx)
            except RingError as exc:
                raise ParseError(str(exc), pos, text) from None
        if kind == "(":
            take()
            inner = expr()
            take(")")
            return inner
        if kind == "-":
            take()
            return -factor()
        raise ParseError(f"unexpected token {kind!r}", pos, text)

    out = expr()
    if peek() != "end":
        raise ParseError(f"trailing input {peek()!r}", toks[i][2], text)
    return out
