"""Command-line front end.

Every command prints a human-readable report; ``--json PATH`` also writes a
structured document (``-`` sends it to stdout instead of the text).
"""

from __future__ import annotations

import json
import os
import sys
import time

import click

from . import curve, diagram, kostant, lattice, suites
from .kernels import BACKEND
from .operator import apply
from .permcomb import format_icomp, parse_icomposition
from .ring import NotDivisible, ParseError, RingError, parse_poly


def _emit(ctx_json: str | None, doc: dict, text: str):
    if ctx_json == "-":
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
        return
    click.echo(text, nl=not text.endswith("\n"))
    if ctx_json:
        with open(ctx_json, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _fail(msg: str, code: int = 2):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


json_option = click.option("--json", "json_path", metavar="PATH", default=None,
                           help="Also write a JSON report to PATH ('-' for stdout only).")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Polynomial representations of Kronecker and curve Schur algebras."""


# ---------------------------------------------------------------- eval


@main.command("eval")
@click.argument("diagram_text", metavar="DIAGRAM")
@click.argument("poly", default="1")
@click.option("--variant", type=click.Choice(["s", "m", "n"]), default="m", show_default=True)
@click.option("--conjectural", is_flag=True, help="Allow thick multicoloured crossings.")
@json_option
def eval_cmd(diagram_text, poly, variant, conjectural, json_path):
    """Evaluate DIAGRAM on the polynomial POLY."""
    try:
        dg = diagram.parse_diagram(diagram_text)
    except (ParseError, ValueError) as e:
        _fail(str(e))
    try:
        op = diagram.eval_diagram(dg, variant, conjectural)
        P = parse_poly(poly, op.source.sig)
        out = apply(op, P, check=True)
    except curve.ConjecturalDisabled as e:
        _fail(f"{e}")
    except ParseError as e:
        _fail(str(e))
    except (RingError, NotDivisible, ValueError) as e:
        _fail(f"{type(e).__name__}: {e}")
    doc = {"diagram": dg.to_text(), "variant": variant, "source": op.source.label, "target": op.target.label,
           "degshift": op.degshift, "input": str(P), "output": str(out), "conjectural": "conjectural" in op.notes}
    text = (f"diagram  {dg.to_text()}\n"
            f"boundary {op.source.label} -> {op.target.label}, degree shift {op.degshift:+d}"
            f"{' (conjectural)' if doc['conjectural'] else ''}\n"
            f"input    {P}\noutput   {out}\n")
    _emit(json_path, doc, text)


# ---------------------------------------------------------------- check


@main.command()
@click.option("--suite", "suite_names", multiple=True, help=f"Suite to run (repeatable): {', '.join(suites.SUITES)}.")
@click.option("-n", "n", type=int, default=3, show_default=True, help="Max number of strands for curve suites.")
@click.option("-D", "D", type=int, default=10, show_default=True, help="Degree bound.")
@click.option("--size", type=int, default=4, show_default=True, help="Max |alpha| for the assoc suite.")
@click.option("--variant", type=click.Choice(["all", "s", "m", "n"]), default="all", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=1000, show_default=True, help="Random trials for the demazure suite.")
@click.option("--jobs", "-j", type=int, default=None, help="Worker processes (default: CPU count, at most 8).")
@click.option("--verbose", "-v", is_flag=True, help="List passing cases too.")
@json_option
def check(suite_names, n, D, size, variant, seed, trials, jobs, verbose, json_path):
    """Run relation suites; exit status 0 iff every case passes."""
    try:
        names = [suites.canonical(s) for s in suite_names] or list(suites.SUITES)
        cfg = suites.SuiteConfig(variant=variant, size=size, n=n, D=D, seed=seed, trials=trials)
    except (KeyError, ValueError) as e:
        _fail(str(e.args[0]) if e.args else str(e))
    if jobs is None:
        jobs = min(8, os.cpu_count() or 1)
    t0 = time.time()
    results = suites.run_suites(names, cfg, jobs)
    elapsed = time.time() - t0
    lines = []
    for r in results:
        if verbose or not r.passed or r.detail:
            lines.append(f"{r.verdict.upper():5} {r.suite}: {r.case} ({r.checked} checked)")
            if r.detail:
                lines.append(f"      {r.detail}")
        if r.counterexample:
            for k, v in r.counterexample.items():
                lines.append(f"      {k}: {v}")
    summary = suites.summarize(results)
    for name in names:
        s = summary.get(name, {"cases": 0, "failed": 0})
        status = "pass" if not s["failed"] else "FAIL"
        lines.append(f"{name}: {s['cases'] - s['failed']}/{s['cases']} cases pass [{status}]")
    ok = all(r.passed for r in results)
    lines.append(f"{'all checks pass' if ok else 'some checks FAIL'} (D={D}, n<={n}, backend {BACKEND}, {elapsed:.1f}s)")
    doc = {"config": cfg.__dict__, "backend": BACKEND, "passed": ok, "summary": summary,
           "cases": [r.as_dict() for r in results]}
    _emit(json_path, doc, "\n".join(lines) + "\n")
    sys.exit(0 if ok else 1)


# ---------------------------------------------------------------- basis


@main.command()
@click.argument("boundaries", nargs=-1)
@click.option("--alpha", default=None, help="Run every pair of I-compositions of this dimension vector, e.g. 2d.")
@click.option("-D", "D", type=int, default=8, show_default=True)
@click.option("--variant", type=click.Choice(["s", "m", "n"]), default="m", show_default=True)
@json_option
def basis(boundaries, alpha, D, variant, json_path):
    """Certify independence of the psi elements between BETA and GAMMA (or all pairs for --alpha)."""
    if D % 2:
        _fail("D must be even")
    try:
        if alpha is not None:
            if boundaries:
                _fail("give either BETA GAMMA or --alpha")
            pairs = diagram.basis_pairs(kostant.parse_dimvec(alpha))
        elif len(boundaries) == 2:
            pairs = [(parse_icomposition(boundaries[0]), parse_icomposition(boundaries[1]))]
        else:
            _fail("need BETA GAMMA or --alpha")
    except ValueError as e:
        _fail(str(e))
    reports = [diagram.basis_pair(b, g, variant, D) for b, g in pairs]
    lines = [f"{'beta':<16}{'gamma':<16}{'elements':>9}{'predicted':>10}{'rank':>8}  verdict"]
    for r in reports:
        flag = "" if r.report.elements == r.predicted else "  [count mismatch]"
        lines.append(f"{format_icomp(r.beta):<16}{format_icomp(r.gamma):<16}{r.report.elements:>9}"
                     f"{r.predicted:>10}{r.report.rank:>8}  {r.report.verdict}{flag}")
    ok = all(r.ok for r in reports)
    total = sum(r.report.elements for r in reports)
    lines.append(f"{len(reports)} pairs, {total} elements: {'all independent' if ok else 'FAIL'}")
    doc = {"variant": variant, "degree_bound": D, "passed": ok, "pairs": [r.as_dict() for r in reports]}
    _emit(json_path, doc, "\n".join(lines) + "\n")
    sys.exit(0 if ok else 1)


# ---------------------------------------------------------------- order / cusp


@main.command()
@click.argument("xi")
@click.option("--imaginary", is_flag=True, help="Keep only idempotents with imaginary part.")
@json_option
def order(xi, imaginary, json_path):
    """The polyheredity chain of idempotents for the dimension vector XI."""
    try:
        v = kostant.parse_dimvec(xi)
    except ValueError as e:
        _fail(str(e))
    rows = kostant.polyheredity_chain(v, imaginary)
    doc = {"xi": list(v), "chain": [
        {"partition": kostant.format_partition(t.mkp), "lambda": list(t.lam), "mu": list(t.mu),
         "idempotent": format_icomp(g)} for t, g in rows]}
    _emit(json_path, doc, kostant.format_chain(v, imaginary))


@main.command()
@click.argument("composition")
@json_option
def cusp(composition, json_path):
    """Decide whether an I-composition such as (a1,a0) is noncuspidal."""
    try:
        beta = parse_icomposition(composition)
    except ValueError as e:
        _fail(str(e))
    nc = kostant.is_noncuspidal(beta)
    doc = {"composition": format_icomp(beta), "noncuspidal": nc}
    _emit(json_path, doc, f"{format_icomp(beta)}: {'noncuspidal' if nc else 'no cut with a steeper prefix'}\n")


# ---------------------------------------------------------------- cohomology / zigzag


@main.command()
@click.option("-n", "n", type=int, default=2, show_default=True)
@click.option("-D", "D", type=int, default=8, show_default=True)
@click.option("--probe", multiple=True, help="Polynomial in x1..xn, c1..cn to test for membership.")
@click.option("--generators", type=click.Choice(lattice.GENERATOR_MODES), default="unital", show_default=True)
@json_option
def cohomology(n, D, probe, generators, json_path):
    """Integral lattice of tautological classes and its comparison with the phi-image."""
    if n < 1 or D < 0 or D % 2:
        _fail("need n >= 1 and an even D >= 0")
    L = lattice.torsion_lattice(n, D, generators)
    verdicts = lattice.compare_phi_image(n, D, generators)
    probes = []
    sig = curve.curve_signature(n)
    for text in probe:
        try:
            P = parse_poly(text, sig)
            probes.append({"probe": text, "member": lattice.member(L, P)})
        except (ParseError, RingError) as e:
            _fail(str(e))
    lines = [f"n={n}, D={D}, generators={generators}, lattice ranks {L.ranks()}", lattice.format_report(verdicts).rstrip()]
    for p in probes:
        lines.append(f"{p['probe']}: {'member' if p['member'] else 'not a member'}")
    ok = all(v.equal and v.rank_lattice == v.rank_invariants for v in verdicts)
    lines.append("phi-image equals the lattice in every degree" if ok else "phi-image comparison FAILS")
    doc = {"n": n, "D": D, "generators": generators, "ranks": list(L.ranks()), "passed": ok, "probes": probes,
           "degrees": [v.__dict__ for v in verdicts]}
    _emit(json_path, doc, "\n".join(lines) + "\n")
    sys.exit(0 if ok else 1)


@main.command()
@click.option("--genus", type=int, default=0, show_default=True)
@click.option("--grading", type=click.Choice(["class", "map"]), default="class", show_default=True)
@json_option
def zigzag(genus, grading, json_path):
    """Graded dimension of the extended zigzag algebra of a curve."""
    dims = curve.zigzag_dims(genus, grading)
    poly = " + ".join(f"{d}" + ("" if k == 0 else "t" if k == 1 else f"t^{k}") for k, d in enumerate(dims))
    _emit(json_path, {"genus": genus, "grading": grading, "dims": list(dims)}, f"{dims}  ({poly})\n")


if __name__ == "__main__":
    main()
