"""Time the subset kernels on both backends.

    python3 benchmarks/bench_kernels.py [--sizes 8,10,12,14] [--repeat 3]

Each row reports the best of ``--repeat`` runs of the bideterminant and
permanent-multiplicity kernels on a random integer matrix, plus the speedup
of the compiled backend when it is available.
"""
from __future__ import annotations

import argparse
import random
import timeit

from tropica.kernels import NEG, implementations


def random_flat(n: int, rng: random.Random, density: float = 0.85) -> list[int]:
    return [rng.randint(-20, 20) if rng.random() < density else NEG for _ in range(n * n)]


def best_time(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="8,10,12,14")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    impls = implementations()
    rng = random.Random(args.seed)
    header = f"{'n':>3} {'kernel':<10}" + "".join(f"{name:>12}" for name in impls)
    if "cython" in impls:
        header += f"{'speedup':>10}"
    print(header)
    for n in (int(s) for s in args.sizes.split(",")):
        flat = random_flat(n, rng)
        for kernel in ("bidet", "perm_mult"):
            times = {}
            results = set()
            for name, mod in impls.items():
                fn = getattr(mod, kernel)
                results.add(fn(flat, n))
                times[name] = best_time(lambda: fn(flat, n), args.repeat)
            if len(results) != 1:
                raise SystemExit(f"backends disagree at n={n} on {kernel}: {results}")
            row = f"{n:>3} {kernel:<10}" + "".join(f"{times[k]:>11.4f}s" for k in impls)
            if "cython" in impls:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
