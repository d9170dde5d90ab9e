"""Named relation suites, run case by case in a process pool.

A case is addressed by (suite, index, config) so that workers rebuild it
locally instead of pickling closures. Results come back in case order.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable

from . import curve, kronecker
from .demazure import demazure, demazure_longest, demazure_shuffle, demazure_simple, staircase
from .linalg import in_span
from .operator import Operator, compare, difference, scalar_multiple
from .permcomb import from_word, inverse, reduced_word
from .ring import Poly, RingSignature, is_invariant, swap

SUITES = ("assoc", "color-past-split", "colour-change", "thick-thin", "colour-slide", "wreath", "demazure")
ALIASES = {"colour-past-split": "color-past-split", "color-change": "colour-change", "color-slide": "colour-slide"}


@dataclass(frozen=True)
class SuiteConfig:
    variant: str = "all"
    size: int = 4  # max |alpha| for assoc
    n: int = 3  # max number of strands for the curve suites
    D: int = 10
    coeffs: str = "ZZ"
    seed: int = 0
    trials: int = 1000

    def __post_init__(self):
        if self.D < 0 or self.D % 2:
            raise ValueError("degree bound D must be a nonnegative even integer")
        if self.variant not in ("all", "s", "m", "n"):
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def variants(self) -> tuple[str, ...]:
        return ("s", "m", "n") if self.variant == "all" else (self.variant,)


@dataclass
class CaseResult:
    suite: str
    case: str
    verdict: str
    checked: int = 0
    detail: str = ""
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class Case:
    name: str
    run: Callable[[], CaseResult | tuple]
    notes: dict = field(default_factory=dict)


def canonical(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return name


# ---------------------------------------------------------------- helpers


def _cex(b, lhs, rhs) -> dict:
    return {"input": str(b), "lhs": str(lhs), "rhs": str(rhs)}


def _operator_case(f: Operator, g: Operator, D: int):
    def run():
        cmp = compare(f, g, D)
        if cmp.equal:
            return ("pass", cmp.checked, None)
        return ("fail", cmp.checked, _cex(*cmp.counterexample))

    return run


def _vector_case(basis, lhs, rhs):
    def run():
        for k, v in enumerate(basis, 1):
            l, r = lhs(v), rhs(v)
            if l != r:
                return ("fail", k, {"input": _vec_str(v), "lhs": _vec_str(l), "rhs": _vec_str(r)})
        return ("pass", len(basis), None)

    return run


def _vec_str(v) -> str:
    if not v:
        return "0"
    return " + ".join(f"[{''.join(col)}]({P})" for col, P in sorted(v.items()))


# ---------------------------------------------------------------- suites


def _assoc(cfg: SuiteConfig) -> list[Case]:
    out = []
    for variant in cfg.variants:
        for triple in kronecker.assoc_triples(cfg.size):
            for kind in ("split", "merge"):
                f, g = kronecker.associativity_pair(variant, triple, kind, cfg.coeffs)
                tag = ",".join(f"({a},{b})" for a, b in triple)
                out.append(Case(f"{variant} {kind} {tag}", _operator_case(f, g, cfg.D)))
    return out


def _colour_past_split(cfg: SuiteConfig) -> list[Case]:
    out = []
    for n in range(1, cfg.n + 1):
        for name, f, g in curve.colour_past_split_cases(n, cfg.coeffs):
            out.append(Case(f"n={n} {name}", _operator_case(f, g, cfg.D)))
    return out


def _colour_change(cfg: SuiteConfig) -> list[Case]:
    out = []
    for n in range(1, cfg.n + 1):
        e, alt = curve.squared_vandermonde_form(n, cfg.coeffs)
        for name, f, g in curve.colour_change_cases(n, cfg.coeffs):
            detail = f"Euler class {e}" if "Euler" in name else ""
            out.append(Case(f"n={n} {name}", _operator_case(f, g, cfg.D), {"detail": detail}))

        def squared(e=e, alt=alt):
            if e == alt:
                return ("pass", 1, None)
            return ("fail", 1, {"input": "1", "lhs": str(e), "rhs": str(alt)})

        out.append(Case(f"n={n} Euler class equals the signed squared Vandermonde form", squared,
                        {"detail": f"{alt}"}))
    return out


def _thick_thin(cfg: SuiteConfig) -> list[Case]:
    out = []
    for n in range(1, cfg.n + 1):
        for which in ("e->t", "t->e"):
            f, g = curve.thick_thin_pair(n, which, cfg.coeffs)
            sign = curve.THICK_THIN_SIGNS[n] if which == "e->t" else 1
            out.append(Case(f"n={n} thick {which} via thin changes, sign {sign:+d}",
                            _operator_case(f, scalar_multiple(g, sign), cfg.D)))
    for n in range(2, cfg.n + 1):
        for name, f, g in curve.thin_cross_cases(n, cfg.coeffs):
            out.append(Case(name, _operator_case(f, g, cfg.D)))
    return out


# colour-slide identities hold modulo the psi_e layer with these signs
SLIDE_SIGNS = (+1, -1)


def _colour_slide(cfg: SuiteConfig) -> list[Case]:
    out = []
    D = cfg.D
    for (name, lhs, rhs, src, tgt), sign in zip(curve.colour_slide_pairs(cfg.coeffs), SLIDE_SIGNS):
        def run(lhs=lhs, rhs=rhs, src=src, tgt=tgt, sign=sign):
            lower = curve.identity_coset_elements(src, tgt, D)
            basis = src.basis(D)
            diff = difference(lhs, scalar_multiple(rhs, sign))
            ops = [lhs, diff] + lower
            keys = sorted({k for b in basis for op in ops for k in op(b).terms})

            def vec(op):
                v = []
                for b in basis:
                    t = op(b).terms
                    v.extend(t.get(k, 0) for k in keys)
                return v

            rows = [vec(o) for o in lower]
            if in_span(vec(lhs), rows):
                return ("fail", len(basis), {"input": "basis", "lhs": "lhs lies in the bottom layer", "rhs": "-"})
            if in_span(vec(diff), rows):
                return ("pass", len(basis), None)
            for b in basis:
                d = diff(b)
                if d:
                    return ("fail", len(basis), _cex(b, lhs(b), rhs(b).scale(sign)))
            return ("fail", len(basis), None)

        out.append(Case(f"{name}, sign {sign:+d}, modulo the identity-coset layer", run))
    return out


def _wreath(cfg: SuiteConfig) -> list[Case]:
    out = []
    D = cfg.D
    for n in range(2, max(cfg.n, 2) + 1):
        basis = curve.wreath_basis(n, D, cfg.coeffs)
        sig = curve.curve_signature(n, cfg.coeffs)
        for i in range(1, n):
            s = curve.wreath_crossing(i, n)
            out.append(Case(f"n={n} s{i}^2 = 1", _vector_case(basis, lambda v, s=s: s(s(v)), lambda v: v)))
            delta = curve.frobenius_action(i)
            for j in range(1, n + 1):
                sj = i + 1 if j == i else (i if j == i + 1 else j)
                d = (j == i) - (j == i + 1)
                xj, xsj = curve.multiply_x(j), curve.multiply_x(sj)
                out.append(Case(
                    f"n={n} s{i} x{j} - x{sj} s{i} = {d:+d} Delta'",
                    _vector_case(basis, lambda v, s=s, xj=xj, xsj=xsj: s(xj(v)) - xsj(s(v)),
                                 lambda v, d=d, delta=delta: delta(v).scaled(d) if d else curve.WreathVector())))
                ops_j, ops_sj = curve.strand_operators(j), curve.strand_operators(sj)
                for name in ops_j:
                    f, g = ops_j[name], ops_sj[name]
                    out.append(Case(f"n={n} s{i} {name}_{j} = {name}_{sj} s{i}",
                                    _vector_case(basis, lambda v, s=s, f=f: s(f(v)), lambda v, s=s, g=g: g(s(v)))))
            x = [Poly.var(sig, "x", k) for k in range(1, n + 1)]
            for fpoly in (x[i - 1], x[i] ** 2 + x[i - 1], x[i - 1] ** 2 * x[i] + x[0]):
                fs = swap(fpoly, i, ("x", "c"))
                df = demazure_simple(i, ("x",), fpoly)
                out.append(Case(
                    f"n={n} twisted Leibniz for d{i} with f = {fpoly}",
                    _vector_case(basis, lambda v, i=i, f=fpoly: curve.twisted_demazure(i, curve.multiply_poly(f)(v)),
                                 lambda v, i=i, fs=fs, df=df, delta=delta:
                                 curve.multiply_poly(fs)(curve.twisted_demazure(i, v))
                                 + curve.multiply_poly(df)(delta(v)))))
        if n >= 3:
            for i in range(1, n - 1):
                a, b = curve.wreath_crossing(i, n), curve.wreath_crossing(i + 1, n)
                out.append(Case(f"n={n} braid s{i} s{i + 1} s{i}",
                                _vector_case(basis, lambda v, a=a, b=b: a(b(a(v))), lambda v, a=a, b=b: b(a(b(v))))))
    return out


# ---------------------------------------------------------------- demazure property trials

DEMAZURE_CHUNK = 50


def random_poly(rng: random.Random, sig: RingSignature, n: int, terms: int = 4, maxexp: int = 3) -> Poly:
    out = Poly.zero(sig)
    for _ in range(terms):
        m = Poly.const(sig, rng.randint(-5, 5))
        for i in range(1, n + 1):
            e = rng.randint(0, maxexp)
            if e:
                m = m * Poly.var(sig, "x", i) ** e
        out = out + m
    return out


def _symmetrize(P: Poly, lam) -> Poly:
    """Sum of P over a parabolic subgroup S_lam, keeping things invariant for the shuffle test."""
    from .permcomb import _parabolic_elements
    from .ring import permute_action

    out = Poly.zero(P.sig)
    for pi in _parabolic_elements(lam):
        out = out + permute_action(pi, ("x",), P)
    return out


def demazure_trial(seed: int, t: int) -> list[tuple[str, Poly, Poly, Poly]]:
    """One seeded trial; returns the failed properties as (name, input, lhs, rhs)."""
    rng = random.Random(f"{seed}:{t}")
    n = rng.randint(3, 5)
    sig = RingSignature.of(("x", n))
    P, Q = random_poly(rng, sig, n), random_poly(rng, sig, n)
    r = rng.randint(1, n - 1)
    fails = []
    zero = Poly.zero(sig)
    dd = demazure_simple(r, ("x",), demazure_simple(r, ("x",), P))
    if dd:
        fails.append(("d_r^2 = 0", P, dd, zero))
    r2 = rng.randint(1, n - 2)
    lhs = demazure_simple(r2, ("x",), demazure_simple(r2 + 1, ("x",), demazure_simple(r2, ("x",), P)))
    rhs = demazure_simple(r2 + 1, ("x",), demazure_simple(r2, ("x",), demazure_simple(r2 + 1, ("x",), P)))
    if lhs != rhs:
        fails.append((f"braid at {r2}", P, lhs, rhs))
    lhs = demazure_simple(r, ("x",), P * Q)
    rhs = demazure_simple(r, ("x",), P) * Q + swap(P, r, ("x",)) * demazure_simple(r, ("x",), Q)
    if lhs != rhs:
        fails.append((f"twisted Leibniz at {r}", P * Q, lhs, rhs))
    # word independence: reversing a reduced word of w^-1 gives another reduced word of w
    word = [rng.randint(1, n - 1) for _ in range(rng.randint(1, 5))]
    w = from_word(word, n)
    alt = list(reversed(reduced_word(inverse(w))))
    from .demazure import demazure_word

    lhs, rhs = demazure(w, ("x",), P), demazure_word(alt, ("x",), P)
    if lhs != rhs:
        fails.append(("independent of the reduced word", P, lhs, rhs))
    a = rng.randint(1, n - 1)
    lam = (a, n - a)
    S = _symmetrize(random_poly(rng, sig, n, terms=2, maxexp=2), lam)
    out = demazure_shuffle(a, n - a, ("x",), S)
    if not is_invariant(out, (n,), ("x",)):
        fails.append((f"shuffle d_{{{a},{n - a}}} lands in the invariants", S, out, out))
    return fails


def _demazure(cfg: SuiteConfig) -> list[Case]:
    out = []
    for n in range(1, 7):
        def run(n=n):
            sig = RingSignature.of(("x", n))
            v = demazure_longest(n, ("x",), staircase(sig, n))
            if v == Poly.one(sig):
                return ("pass", 1, None)
            return ("fail", 1, _cex(staircase(sig, n), v, Poly.one(sig)))

        out.append(Case(f"d_w0(D_{n}) = 1", run))
    for start in range(0, cfg.trials, DEMAZURE_CHUNK):
        stop = min(start + DEMAZURE_CHUNK, cfg.trials)

        def run(start=start, stop=stop):
            for t in range(start, stop):
                fails = demazure_trial(cfg.seed, t)
                if fails:
                    name, P, l, r = fails[0]
                    return ("fail", t - start + 1, {"trial": t, "property": name, **_cex(P, l, r)})
            return ("pass", stop - start, None)

        out.append(Case(f"random trials {start}-{stop - 1} (seed {cfg.seed})", run))
    return out


BUILDERS = {
    "assoc": _assoc,
    "color-past-split": _colour_past_split,
    "colour-change": _colour_change,
    "thick-thin": _thick_thin,
    "colour-slide": _colour_slide,
    "wreath": _wreath,
    "demazure": _demazure,
}


@lru_cache(maxsize=None)
def cases(suite: str, cfg: SuiteConfig) -> list[Case]:
    return BUILDERS[canonical(suite)](cfg)


def run_case(suite: str, index: int, cfg: SuiteConfig) -> CaseResult:
    c = cases(suite, cfg)[index]
    try:
        verdict, checked, cex = c.run()
    except Exception as exc:  # a crash is a failure with its message as the counterexample
        return CaseResult(suite, c.name, "error", 0, c.notes.get("detail", ""), {"error": f"{type(exc).__name__}: {exc}"})
    return CaseResult(suite, c.name, verdict, checked, c.notes.get("detail", ""), cex)


def run_suites(suites, cfg: SuiteConfig, jobs: int = 1) -> list[CaseResult]:
    jobs_list = [(canonical(s), i) for s in suites for i in range(len(cases(canonical(s), cfg)))]
    if jobs <= 1:
        return [run_case(s, i, cfg) for s, i in jobs_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_case, s, i, cfg) for s, i in jobs_list]
        return [f.result() for f in futures]


def summarize(results: list[CaseResult]) -> dict:
    by_suite: dict[str, dict] = {}
    for r in results:
        s = by_suite.setdefault(r.suite, {"cases": 0, "failed": 0})
        s["cases"] += 1
        s["failed"] += not r.passed
    return by_suite
