"""Integral lattices of tautological classes inside Z[x,c]/(c^2)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .curve import curve_signature, from_thin
from .linalg import hermite_normal_form, rank_exact, smith_invariants, solve_integer
from .ring import Poly, RingError, monomial_basis, orbit_basis, substitute
from .permcomb import TAU


@dataclass
class GradedLattice:
    n: int
    maxdeg: int
    columns: dict[int, list[int]] = field(default_factory=dict)  # degree -> monomial keys
    bases: dict[int, list[list[int]]] = field(default_factory=dict)  # degree -> HNF rows

    def rank(self, degree: int) -> int:
        return len(self.bases.get(degree, []))

    def ranks(self) -> tuple[int, ...]:
        return tuple(self.rank(d) for d in range(0, self.maxdeg + 1, 2))


def _coords(P: Poly, keys: list[int]) -> list[int]:
    pos = {k: i for i, k in enumerate(keys)}
    out = [0] * len(keys)
    for k, c in P.terms.items():
        if k not in pos:
            raise RingError(f"{P} has a monomial outside the invariant columns")
        out[pos[k]] = int(c)
    return out


@lru_cache(maxsize=None)
def invariant_columns(n: int, degree: int) -> list[int]:
    """Monomial keys occurring in degree ``degree`` of Z[x,c]^{S_n}/(c^2)."""
    sig = curve_signature(n)
    keys = set()
    for b in orbit_basis(sig, ((("x", "c"), (n,), 0),), degree):
        keys.update(k for k in b.homogeneous_part(degree).terms)
    return sorted(keys)


def invariant_basis(n: int, degree: int) -> list[Poly]:
    sig = curve_signature(n)
    return [b for b in orbit_basis(sig, ((("x", "c"), (n,), 0),), degree) if b.is_homogeneous() and b.degree() == degree]


def elementary_symmetric(sig, n: int) -> list[Poly]:
    xs = [Poly.var(sig, "x", i) for i in range(1, n + 1)]
    out = []
    for k in range(1, n + 1):
        e = Poly.zero(sig)
        for combo in itertools.combinations(xs, k):
            t = Poly.one(sig)
            for f in combo:
                t = t * f
            e = e + t
        out.append(e)
    return out


def lambda_basis(n: int, degree: int) -> list[Poly]:
    """Z-basis of the degree piece of Z[x]^{S_n}: monomials in e_1..e_n."""
    sig = curve_signature(n)
    es = elementary_symmetric(sig, n)
    half = degree // 2
    out = []

    def rec(k, left, acc):
        if k == n:
            if left == 0:
                out.append(acc)
            return
        w = k + 1
        for m in range(left // w + 1):
            rec(k + 1, left - m * w, acc * es[k] ** m if m else acc)

    rec(0, half, Poly.one(sig))
    return out


def full_merge_images(n: int, degree: int) -> list[Poly]:
    M = from_thin(((n, TAU),))
    sig = curve_signature(n)
    out = []
    for m in monomial_basis(sig, (1,) * n, degree, targets=("x", "c")):
        if m.degree() == degree:
            out.append(M(m))
    return out


GENERATOR_MODES = ("module", "unital", "ring")


def torsion_lattice(n: int, D: int, generators: str = "unital") -> GradedLattice:
    """The lattice of tautological classes built from the full tau-merge.

    ``module`` is Lambda*Im(M) itself, which equals Im(M) since M is Lambda-linear;
    ``unital`` adds Lambda*1; ``ring`` closes the unital lattice under products.
    """
    if n < 1 or D % 2:
        raise ValueError("need n >= 1 and even D")
    if generators not in GENERATOR_MODES:
        raise ValueError(f"generators must be one of {GENERATOR_MODES}")
    L = GradedLattice(n, D)
    gens: dict[int, list[Poly]] = {}
    for d in range(0, D + 1, 2):
        gens[d] = full_merge_images(n, d)
        if generators != "module":
            gens[d] += lambda_basis(n, d)
        if generators == "ring":
            for d1 in range(2, d - 1, 2):
                for a in _reps(L, d1):
                    for b in _reps(L, d - d1):
                        gens[d].append(a * b)
        keys = invariant_columns(n, d)
        L.columns[d] = keys
        L.bases[d] = hermite_normal_form([_coords(P, keys) for P in gens[d]])
    return L


def _reps(L: GradedLattice, d: int) -> list[Poly]:
    sig = curve_signature(L.n)
    out = []
    for row in L.bases[d]:
        P = Poly(sig, {k: c for k, c in zip(L.columns[d], row) if c})
        out.append(P)
    return out


def member(L: GradedLattice, P: Poly) -> bool:
    if not P:
        return True
    if not P.is_homogeneous():
        raise RingError("membership is tested one degree at a time")
    d = P.degree()
    if d > L.maxdeg or d % 2:
        raise RingError(f"degree {d} outside the lattice range 0..{L.maxdeg}")
    try:
        v = _coords(P, L.columns[d])
    except RingError:
        return False
    return solve_integer(L.bases[d], v)


def phi_tilde(P: Poly) -> Poly:
    """u_i -> x_i, v_i -> x_i + c_i."""
    nu, nv = P.sig.family("u").count, P.sig.family("v").count
    if nu != nv:
        raise RingError(f"u and v counts differ ({nu} vs {nv})")
    sig = curve_signature(nu)
    images = {}
    for i in range(1, nu + 1):
        x, c = Poly.var(sig, "x", i), Poly.var(sig, "c", i)
        images[("u", i)] = x
        images[("v", i)] = x + c
    return substitute(P, sig, images)


def bisymmetric_basis(n: int, degree: int) -> list[Poly]:
    from .kronecker import uv_signature

    sig = uv_signature((n, n))
    return [b for b in orbit_basis(sig, ((("u",), (n,), 0), (("v",), (n,), 0)), degree)
            if b.is_homogeneous() and b.degree() == degree]


@dataclass
class DegreeVerdict:
    degree: int
    rank_lattice: int
    rank_image: int
    rank_invariants: int
    equal: bool
    lattice_in_image: bool
    image_in_lattice: bool
    divisors: list[int]  # of the lattice inside the invariant lattice
    discrepancy: list[int]  # of the smaller of lattice/image inside the larger, when nested


def compare_phi_image(n: int, D: int, generators: str = "unital") -> list[DegreeVerdict]:
    L = torsion_lattice(n, D, generators)
    out = []
    for d in range(0, D + 1, 2):
        keys = L.columns[d]
        image = hermite_normal_form([_coords(phi_tilde(b), keys) for b in bisymmetric_basis(n, d)])
        lat = L.bases[d]
        l_in_i = all(solve_integer(image, r) for r in lat)
        i_in_l = all(solve_integer(lat, r) for r in image)
        inv = [_coords(b, keys) for b in invariant_basis(n, d)]
        out.append(DegreeVerdict(
            degree=d,
            rank_lattice=len(lat),
            rank_image=len(image),
            rank_invariants=rank_exact(inv),
            equal=l_in_i and i_in_l,
            lattice_in_image=l_in_i,
            image_in_lattice=i_in_l,
            divisors=quotient_divisors(lat, inv),
            discrepancy=_discrepancy(lat, image, l_in_i, i_in_l),
        ))
    return out


def _discrepancy(lat, image, l_in_i, i_in_l) -> list[int]:
    if l_in_i and i_in_l:
        return []
    if l_in_i:
        return quotient_divisors(lat, image)
    if i_in_l:
        return quotient_divisors(image, lat)
    return [0]


def quotient_divisors(sub: list[list[int]], sup: list[list[int]]) -> list[int]:
    """Nontrivial elementary divisors of sub inside sup (sup given by a Z-basis)."""
    if not sub:
        return []
    # express sub in the coordinates of sup's basis, then take the Smith form
    H = hermite_normal_form(sup)
    coords = []
    for row in sub:
        v = list(row)
        c = []
        for h in H:
            p = next(i for i, x in enumerate(h) if x)
            q = v[p] // h[p]
            c.append(q)
            v = [a - q * b for a, b in zip(v, h)]
        if any(v):
            raise RingError("sublattice is not contained in the invariant lattice")
        coords.append(c)
    return [d for d in smith_invariants(coords) if d != 1]


def format_report(verdicts: list[DegreeVerdict]) -> str:
    lines = [f"{'degree':>6}  {'rank(lattice)':>13}  {'rank(image)':>11}  {'rank(invariants)':>16}  equal  divisors  discrepancy"]
    for v in verdicts:
        divs = ",".join(map(str, v.divisors)) or "-"
        disc = ",".join(map(str, v.discrepancy)) or "-"
        lines.append(f"{v.degree:>6}  {v.rank_lattice:>13}  {v.rank_image:>11}  {v.rank_invariants:>16}  "
                     f"{'yes' if v.equal else 'no':<5}  {divs:<8}  {disc}")
    return "\n".join(lines) + "\n"
