"""Compare the compiled kernels with the pure-Python fallback.

Each workload runs in a fresh interpreter, once with the default backend and
once with QSCHUR_PURE=1, and reports the best of a few repeats.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "product": """
from qschur.curve import curve_signature
from qschur.ring import parse_poly
sig = curve_signature(4)
f = parse_poly("(x1+x2+x3+x4+c1+c2+2)^6", sig)
g = parse_poly("(x1-x2+x3*x4+c3-c4+1)^5", sig)
def work():
    f * g
""",
    "demazure": """
from qschur.ring import RingSignature
from qschur.demazure import demazure_longest, staircase
sig = RingSignature.of(("x", 6))
D6 = staircase(sig, 6)
def work():
    demazure_longest(6, ("x",), D6 * D6)
""",
    "assoc": """
from qschur import suites
cfg = suites.SuiteConfig(size=3, D=10)
def work():
    suites.cases.cache_clear()
    suites.run_suites(["assoc"], cfg)
""",
    "basis": """
from qschur.diagram import basis_pair, basis_pairs
pairs = basis_pairs((1, 2))
def work():
    for b, g in pairs:
        basis_pair(b, g, "m", 8)
""",
}

RUNNER = """
import json, timeit
from qschur import BACKEND
{setup}
best = min(timeit.repeat(work, number=1, repeat={repeat}))
print(json.dumps({{"backend": BACKEND, "seconds": best}}))
"""


def measure(setup: str, repeat: int, pure: bool) -> dict:
    env = dict(os.environ)
    env.pop("QSCHUR_PURE", None)
    if pure:
        env["QSCHUR_PURE"] = "1"
    code = RUNNER.format(setup=setup, repeat=repeat)
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("workloads", nargs="*", default=list(WORKLOADS))
    args = ap.parse_args()
    print(f"{'workload':<10}{'compiled':>12}{'pure':>12}{'speedup':>10}")
    for name in args.workloads:
        fast = measure(WORKLOADS[name], args.repeat, pure=False)
        slow = measure(WORKLOADS[name], args.repeat, pure=True)
        if fast["backend"] != "compiled":
            print(f"{name:<10}  compiled kernels not built, both runs used {fast['backend']}")
            continue
        print(f"{name:<10}{fast['seconds']:>11.3f}s{slow['seconds']:>11.3f}s{slow['seconds'] / fast['seconds']:>9.1f}x")


if __name__ == "__main__":
    main()
