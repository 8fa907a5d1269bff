"""Compiled vs pure-Python kernels.

Part 1 times each kernel on inputs drawn from root systems.  Part 2 runs
the identity-class poset and polynomial for a ladder of systems in a
fresh interpreter per backend, then fits log(time) = a + b log(nodes) for
each backend.  Usage:

    python benchmarks/bench_kernels.py [--systems B3,A4,...] [--json out.json]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time

import numpy as np

from toricarr import _pykernels
from toricarr.poset import fixed_poset
from toricarr.roots import build

try:
    from toricarr import _ckernels
except ImportError:
    _ckernels = None

LADDER = ["B3", "A4", "D4", "B4", "A5", "F4", "D5", "E6"]

CHILD = r"""
import json, sys, time
from toricarr import kernels
from toricarr.cohomology import complement_poincare
from toricarr.poset import fixed_poset
from toricarr.roots import build
out = {"backend": kernels.BACKEND, "runs": []}
for name in sys.argv[1].split(","):
    rs = build(name)
    t0 = time.perf_counter()
    p = fixed_poset(rs)
    poly = complement_poincare(rs, poset=p)
    out["runs"].append({"system": name, "nodes": len(p), "seconds": time.perf_counter() - t0,
                        "top": poly[-1]})
print(json.dumps(out))
"""


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, time.perf_counter() - t0)
    return best / repeat


def micro():
    rng = random.Random(0)
    rs = build("E6")
    n = rs.rank
    roots = list(rs.roots)
    row_sets = [rng.sample(roots, rng.randint(2, 6)) for _ in range(200)]
    bases = [_pykernels.hnf(r, n) for r in row_sets]
    reps = roots[:36]
    p = fixed_poset(build("F4"))
    masks = [nd.orbit_set for nd in p.nodes]
    cases = {
        "hnf": (lambda k: [k.hnf(r, n) for r in row_sets]),
        "orbit_mask": (lambda k: [k.orbit_mask(b, table(k)) for b in bases]),
        "mobius_from_masks (F4, %d nodes)" % len(masks): (lambda k: k.mobius_from_masks(masks)),
    }
    packed = _ckernels.prepare_reps(reps, n) if _ckernels else None

    def table(k):
        return packed if k is _ckernels else reps

    rows = []
    for name, fn in cases.items():
        py = timeit(lambda: fn(_pykernels), 3)
        c = timeit(lambda: fn(_ckernels), 3) if _ckernels else float("nan")
        rows.append({"kernel": name, "python_s": py, "cython_s": c, "speedup": py / c})
    return rows


def end_to_end(systems, pure):
    env = dict(os.environ)
    env.pop("TORICARR_PURE_PYTHON", None)
    if pure:
        env["TORICARR_PURE_PYTHON"] = "1"
    res = subprocess.run([sys.executable, "-c", CHILD, ",".join(systems)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def fit(runs):
    x = np.log([r["nodes"] for r in runs])
    y = np.log([r["seconds"] for r in runs])
    b, a = np.polyfit(x, y, 1)
    resid = y - (a + b * x)
    r2 = 1 - float(resid @ resid) / float(((y - y.mean()) ** 2).sum())
    return {"exponent": float(b), "r2": r2}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--systems", default=",".join(LADDER))
    ap.add_argument("--json", dest="json_out")
    args = ap.parse_args()
    systems = args.systems.split(",")

    report = {"micro": micro()}
    print("kernel                               python      cython   speedup")
    for r in report["micro"]:
        print("%-34s %9.2es %9.2es %8.1fx" % (r["kernel"], r["python_s"], r["cython_s"], r["speedup"]))

    results = {}
    for pure in (False, True):
        out = end_to_end(systems, pure)
        results[out["backend"]] = out["runs"]
    report["end_to_end"] = results
    print()
    print("system   nodes    cython_s    python_s   speedup")
    cy, py = results.get("cython", []), results["python"]
    for c, p in zip(cy, py):
        assert c["top"] == p["top"]
        print("%-6s %7d %11.3f %11.3f %8.1fx" % (c["system"], c["nodes"], c["seconds"], p["seconds"],
                                                 p["seconds"] / c["seconds"]))
    report["fit"] = {k: fit(v) for k, v in results.items()}
    print()
    for k, f in report["fit"].items():
        print("%s: time ~ nodes^%.2f (r^2 = %.3f)" % (k, f["exponent"], f["r2"]))
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(report, fh, indent=1)


if __name__ == "__main__":
    main()
