"""Compare the numba and pure-numpy kernel backends.

Runs itself twice in subprocesses with CLIFFDEPTH_BACKEND set, timing the
hot kernels (depth-table fills, packed GF(2) matmul, tableau simulation,
ASAP depth) plus one end-to-end Clifford synthesis, and prints a table.

Usage: python benchmarks/bench_backends.py [--child]
"""

import argparse
import json
import os
import subprocess
import sys
import time

HERE = os.path.abspath(__file__)


def timed(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_child():
    import numpy as np

    from cliffdepth import _kernels
    from cliffdepth.clifford import random_tableau, synth_clifford
    from cliffdepth.gf2 import random_invertible

    results = {"backend": _kernels.active_backend()}

    # warm up any JIT compilation outside the timed region
    _kernels.fill_cz_table(100)
    _kernels.fill_cnot_table(100)

    results["fill_cz_table(1.345M)"] = timed(
        lambda: _kernels.fill_cz_table(1_345_000), repeat=1
    )
    results["fill_cnot_table(1.345M)"] = timed(
        lambda: _kernels.fill_cnot_table(1_345_000), repeat=1
    )

    rng = np.random.default_rng(0)
    a = random_invertible(rng, 2048)
    bt = random_invertible(rng, 2048)
    _kernels.matmul_words(a.words, bt.words)  # warm
    results["matmul_words(2048)"] = timed(
        lambda: _kernels.matmul_words(a.words, bt.words)
    )

    from cliffdepth.clifford import random_clifford_circuit, tableau_of_circuit

    circ = random_clifford_circuit(rng, 512)
    tableau_of_circuit(circ)  # warm
    results["tableau_run(512, 5120 gates)"] = timed(
        lambda: tableau_of_circuit(circ)
    )

    pairs = circ.two_qubit_pairs()
    _kernels.asap_depth(pairs, 512)  # warm
    results["asap_depth(512)"] = timed(lambda: _kernels.asap_depth(pairs, 512))

    t = random_tableau(rng, 128)
    synth_clifford(t)  # warm
    results["synth_clifford(128)"] = timed(lambda: synth_clifford(t), repeat=1)

    print(json.dumps(results))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        run_child()
        return

    reports = []
    for backend in ("numba", "numpy"):
        env = dict(os.environ, CLIFFDEPTH_BACKEND=backend)
        out = subprocess.run(
            [sys.executable, HERE, "--child"],
            env=env, capture_output=True, text=True, check=True,
        )
        reports.append(json.loads(out.stdout.strip().splitlines()[-1]))

    keys = [k for k in reports[0] if k != "backend"]
    width = max(len(k) for k in keys) + 2
    header = f"{'kernel':<{width}}" + "".join(f"{r['backend']:>12}" for r in reports)
    print(header)
    print("-" * len(header))
    for k in keys:
        row = f"{k:<{width}}"
        for r in reports:
            row += f"{r[k] * 1000:>10.1f}ms"
        print(row)


if __name__ == "__main__":
    main()
