"""Compare the compiled and pure-Python kernels on random diagonal setups.

Usage: python3 benchmarks/bench_kernels.py [--setups N] [--repeat R] [--seed S]
"""

import argparse
import random
import timeit

from cpair import kernels
from cpair.sheaves import compute_adapted, oracle_box_scan, tensor_count
from cpair.sweeps import random_setup


def workload(seed, count, max_tensors=60):
    rng = random.Random(seed)
    items = []
    for _ in range(count):
        s = random_setup(rng)
        n, p = rng.randint(1, 3), rng.randint(1, s.dim)
        while tensor_count(s.dim, n, p) > max_tensors:
            n -= 1
        items.append((s, n, p, compute_adapted(s, n, p, backend="python")))
    return items


def bench(items, backend, repeat):
    def tables():
        for s, n, p, _ in items:
            compute_adapted(s, n, p, backend=backend)

    def scans():
        for s, n, p, sheaf in items:
            oracle_box_scan(s, n, p, sheaf, backend=backend)

    return (min(timeit.repeat(tables, number=1, repeat=repeat)),
            min(timeit.repeat(scans, number=1, repeat=repeat)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--setups", type=int, default=100)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    items = workload(args.seed, args.setups)
    backends = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    results = {b: bench(items, b, args.repeat) for b in backends}
    print(f"{args.setups} setups, best of {args.repeat}")
    print(f"{'backend':<10}{'tables (s)':>12}{'box scan (s)':>14}")
    for b, (t, s) in results.items():
        print(f"{b:<10}{t:>12.4f}{s:>14.4f}")
    if len(results) == 2:
        (pt, ps), (ct, cs) = results["python"], results["compiled"]
        print(f"speed-up   {pt / ct:>11.1f}x{ps / cs:>13.1f}x")
    else:
        print("compiled kernels not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
