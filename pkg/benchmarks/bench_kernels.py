"""Compare the numba kernels with the pure-Python fallback.

Each backend runs in its own interpreter because the switch is read at
import time.  Usage: python benchmarks/bench_kernels.py [--max-K 3] [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from deficit import _jit, census
from deficit.isosig import isomorphism_signature
from deficit.triangulation import boundary_4simplex
max_K, repeat = int(sys.argv[1]), int(sys.argv[2])
census.generate(1)                     # compile (or load cached) kernels
isomorphism_signature(boundary_4simplex())
res = {"backend": _jit.backend()}
for K in range(1, max_K + 1):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        rows = census.generate(K)
        best = min(best, time.perf_counter() - t)
    res[f"generate_K{K}"] = (best, len(rows))
T = boundary_4simplex()
t = time.perf_counter()
for _ in range(200):
    isomorphism_signature(T)
res["isosig_x200"] = (time.perf_counter() - t, 200)
print(json.dumps(res))
"""


def run(disable, max_K, repeat):
    env = dict(os.environ)
    env.pop("DEFICIT_DISABLE_NUMBA", None)
    if disable:
        env["DEFICIT_DISABLE_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", WORKER, str(max_K), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-K", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.max_K, args.repeat)
    slow = run(True, args.max_K, args.repeat)
    print(f"{'task':<16}{'items':>8}{'numba s':>12}{'python s':>12}{'speedup':>10}")
    for key in fast:
        if key == "backend":
            continue
        (tf, n), (ts, m) = fast[key], slow[key]
        assert n == m, key
        print(f"{key:<16}{n:>8}{tf:>12.4f}{ts:>12.4f}{ts / tf:>10.1f}")


if __name__ == "__main__":
    main()
