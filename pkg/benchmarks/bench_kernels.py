"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Times ``pnom`` on fixed random corpora (degrees 3, 6 and 10) and the raw
``orient_min`` kernel, once per available backend.
"""
from __future__ import annotations

import argparse
import random
import time

from rcanon import kernels
from rcanon.prenormal import pnom
from rcanon.randgen import random_monomial, random_profile


def corpus(seed: int, degree: int, size: int):
    rng = random.Random(seed + degree)
    return [random_monomial(rng, degree, **random_profile(rng, degree)) for _ in range(size)]


def bench(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sets = {d: corpus(args.seed, d, 200 if d < 10 else 40) for d in (3, 6, 10)}
    rng = random.Random(args.seed)
    codes = [[rng.randrange(1, 9) for _ in range(4)] for _ in range(20000)]

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    rows = []
    for name in backends:
        with kernels.using(name):
            row = {}
            for d, ms in sets.items():
                row[f"pnom deg {d}"] = bench(lambda ms=ms: [pnom(m) for m in ms], args.repeat)
            row["orient_min"] = bench(
                lambda: [kernels.orient_min(c, 5, 5) for c in codes], args.repeat)
            rows.append((name, row))
    labels = list(rows[0][1])
    print(f"{'case':<14}" + "".join(f"{n:>12}" for n, _ in rows) + ("   speedup" if len(rows) > 1 else ""))
    for lab in labels:
        vals = [r[lab] for _, r in rows]
        line = f"{lab:<14}" + "".join(f"{v * 1000:>10.1f}ms" for v in vals)
        if len(rows) > 1:
            by = dict(zip((n for n, _ in rows), vals))
            line += f"   {by['python'] / by['cython']:>6.2f}x"
        print(line)


if __name__ == "__main__":
    main()
