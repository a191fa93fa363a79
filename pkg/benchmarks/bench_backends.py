#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Micro-benchmarks run both backends in-process on identical inputs;
the end-to-end row times a cold lower-central-series computation at
(3, 2) in a subprocess per backend (PGROUPDIM_PURE=1 selects the
fallback).

Usage: python benchmarks/bench_backends.py [--quick]
"""

import argparse
import random
import statistics
import subprocess
import sys
import time

from pgroupdim import _pycore

try:
    from pgroupdim import _core
except ImportError:
    _core = None


def bench(fn, reps):
    times = []
    for _ in range(5):
        t0 = time.perf_counter()
        fn(reps)
        times.append((time.perf_counter() - t0) / reps)
    return min(times)


def element_workload(mod, reps, p=3, k=2):
    ctx = mod.make_ctx(p, k)
    _, pk, n, zd, _ = ctx
    rng = random.Random(0)
    els = [
        (rng.randrange(pk),) + tuple(rng.randrange(p) for _ in range(n + zd))
        for _ in range(512)
    ]

    def run_mul(reps):
        acc = els[0]
        for i in range(reps):
            acc = mod.mul(acc, els[i % 512], ctx)

    def run_inv(reps):
        for i in range(reps):
            mod.inv(els[i % 512], ctx)

    def run_pow(reps):
        for i in range(reps):
            mod.power(els[i % 512], 2187, ctx)

    return run_mul, run_inv, run_pow


def rref_workload(mod, reps):
    rng = random.Random(1)
    mats = [
        [[rng.randrange(3) for _ in range(45)] for _ in range(60)] for _ in range(32)
    ]

    def run(reps):
        for i in range(reps):
            mod.rref(mats[i % 32], 3)

    return run


def end_to_end(backend_env: str | None) -> float:
    env = {"PGROUPDIM_PURE": "1"} if backend_env else {}
    import os

    full_env = dict(os.environ)
    full_env.pop("PGROUPDIM_PURE", None)
    full_env.update(env)
    code = (
        "from pgroupdim.group import GroupParams\n"
        "from pgroupdim.series import gamma_rank_report, closed_form_report, SeriesKind\n"
        "P = GroupParams(3, 2)\n"
        "assert all(r['pass'] for r in gamma_rank_report(P))\n"
        "assert all(r['pass'] for r in closed_form_report(SeriesKind.L, P))\n"
    )
    t0 = time.perf_counter()
    subprocess.run([sys.executable, "-c", code], check=True, env=full_env)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="fewer repetitions")
    args = ap.parse_args()
    reps = 2_000 if args.quick else 20_000
    rref_reps = 20 if args.quick else 200

    backends = [("pure", _pycore)]
    if _core is not None:
        backends.insert(0, ("compiled", _core))
    else:
        print("note: compiled kernels not built; showing the fallback only")

    rows = []
    for label, mod in backends:
        run_mul, run_inv, run_pow = element_workload(mod, reps)
        rows.append(
            (
                label,
                bench(run_mul, reps) * 1e6,
                bench(run_inv, reps) * 1e6,
                bench(run_pow, reps // 10) * 1e6,
                bench(rref_workload(mod, rref_reps), rref_reps) * 1e3,
            )
        )

    print(f"{'backend':<10} {'mul us':>9} {'inv us':>9} {'pow us':>9} {'rref ms':>9}")
    for label, mul_us, inv_us, pow_us, rref_ms in rows:
        print(f"{label:<10} {mul_us:>9.2f} {inv_us:>9.2f} {pow_us:>9.2f} {rref_ms:>9.3f}")
    if len(rows) == 2:
        print(
            f"{'speedup':<10} "
            f"{rows[1][1]/rows[0][1]:>8.1f}x {rows[1][2]/rows[0][2]:>8.1f}x "
            f"{rows[1][3]/rows[0][3]:>8.1f}x {rows[1][4]/rows[0][4]:>8.1f}x"
        )

    print("\nend-to-end: lower-central ranks + lower-p closed form at (3,2), cold process")
    if _core is not None:
        t_c = end_to_end(None)
        print(f"{'compiled':<10} {t_c:>8.2f} s")
    t_p = end_to_end("1")
    print(f"{'pure':<10} {t_p:>8.2f} s")
    if _core is not None:
        print(f"{'speedup':<10} {t_p / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
