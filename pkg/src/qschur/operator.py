"""Linear maps between invariant polynomial spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .ring import Poly, RingError, RingSignature, is_invariant, orbit_basis


class BoundaryError(ValueError):
    pass


@dataclass(frozen=True)
class Space:
    """Invariants of a product of parabolic groups inside a polynomial ring.

    ``actions`` lists (families, composition, offset) triples; ``forbidden``
    lists variables that never occur (c-classes on colour-e strands).
    """

    comp: tuple
    sig: RingSignature
    actions: tuple
    forbidden: tuple = ()
    kind: str = ""

    def basis(self, maxdeg: int) -> list[Poly]:
        return orbit_basis(self.sig, self.actions, maxdeg, self.forbidden)

    def contains(self, P: Poly) -> bool:
        if P.sig != self.sig:
            return False
        if self.forbidden and P.involves(self.forbidden):
            return False
        return all(is_invariant(P, comp, fams, off) for fams, comp, off in self.actions)

    def require(self, P: Poly, what: str = "input"):
        if not self.contains(P):
            raise RingError(f"{what} {P} is not in the space of {self.label}")

    @property
    def label(self) -> str:
        from .permcomb import format_coloured, format_icomp

        if self.kind == "curve":
            return format_coloured(self.comp)
        if self.kind == "kronecker":
            return format_icomp(self.comp)
        return str(self.comp)


@dataclass(frozen=True, eq=False)
class Operator:
    source: Space
    target: Space
    degshift: int
    action: Callable[[Poly], Poly]
    label: str = ""
    variant: str = ""
    notes: tuple = field(default=())

    def __call__(self, P: Poly) -> Poly:
        return self.action(P)

    def __repr__(self):
        return f"Operator({self.label}: {self.source.label} -> {self.target.label}, deg {self.degshift:+d})"


def apply(f: Operator, P: Poly, check: bool = False) -> Poly:
    if check:
        f.source.require(P)
    out = f.action(P)
    if check:
        f.target.require(out, "output")
    return out


def compose(f: Operator, g: Operator) -> Operator:
    """f after g."""
    if g.target != f.source:
        raise BoundaryError(f"cannot compose: {g.target.label} is not {f.source.label}")
    fa, ga = f.action, g.action
    return Operator(
        source=g.source,
        target=f.target,
        degshift=f.degshift + g.degshift,
        action=lambda P: fa(ga(P)),
        label=f"{f.label}*{g.label}" if f.label and g.label else (f.label or g.label),
        variant=f.variant or g.variant,
        notes=g.notes + f.notes,
    )


def chain(ops: Sequence[Operator], source: Space | None = None) -> Operator:
    """Compose bottom-to-top."""
    if not ops:
        if source is None:
            raise BoundaryError("empty chain needs a boundary")
        return identity(source)
    out = ops[0]
    for op in ops[1:]:
        out = compose(op, out)
    return out


def identity(space: Space) -> Operator:
    return Operator(space, space, 0, lambda P: P, label="id")


def scalar_multiple(f: Operator, c) -> Operator:
    fa = f.action
    return Operator(f.source, f.target, f.degshift, lambda P: fa(P).scale(c), label=f"{c}*{f.label}", variant=f.variant)


def difference(f: Operator, g: Operator) -> Operator:
    if f.source != g.source or f.target != g.target:
        raise BoundaryError("operators have different boundaries")
    fa, ga = f.action, g.action
    return Operator(f.source, f.target, f.degshift, lambda P: fa(P) - ga(P), label=f"{f.label}-{g.label}")


def multiplication(space: Space, P: Poly, label: str = "") -> Operator:
    space.require(P, "coupon")
    deg = P.degree() if P else 0
    return Operator(space, space, deg, lambda Q: P * Q, label=label or f"[{P}]")


@dataclass
class Comparison:
    equal: bool
    degree_bound: int
    checked: int
    counterexample: tuple | None = None

    def __bool__(self):
        return self.equal


def compare(f: Operator, g: Operator, maxdeg: int, inputs: Sequence[Poly] | None = None) -> Comparison:
    """Decide f == g on the source basis up to ``maxdeg``."""
    if f.source != g.source or f.target != g.target:
        raise BoundaryError(f"different boundaries: {f} vs {g}")
    basis = inputs if inputs is not None else f.source.basis(maxdeg)
    for n, b in enumerate(basis, 1):
        lhs, rhs = f.action(b), g.action(b)
        if lhs != rhs:
            return Comparison(False, maxdeg, n, (b, lhs, rhs))
    return Comparison(True, maxdeg, len(basis))
