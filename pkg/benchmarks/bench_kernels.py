"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--n 200000] [--c 6] [--repeat 5] [--threads 4]

Prints the best-of-repeat wall time per kernel and the speedup of the compiled
backend. Outputs of the two backends are checked for agreement first.
"""

import argparse
import time

import numpy as np

from fuzzycolor import kernels


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=200_000, help="color elements (a ~450x450 image)")
    p.add_argument("--c", type=int, default=6, help="fuzzy colors")
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--threads", type=int, default=4, help="threads for the parallel membership kernel")
    args = p.parse_args()

    backends = {name: kernels.load_backend(name) for name in kernels.available_backends()}
    if "cython" not in backends:
        print("compiled backend not built; only the numpy backend is available")

    rng = np.random.default_rng(0)
    X = np.column_stack([rng.uniform(0, 100, args.n), rng.uniform(-80, 80, (args.n, 2))])
    centers = X[rng.choice(args.n, args.c, replace=False)]
    jnds = np.full(args.c, 2.3)
    U = backends["python"].membership_matrix(centers, jnds, X)

    for name, mod in backends.items():
        if name != "python":
            assert np.array_equal(mod.membership_matrix(centers, jnds, X), U), name

    cases = {
        "membership_matrix": lambda m: m.membership_matrix(centers, jnds, X),
        "weighted_centers": lambda m: m.weighted_centers(U, X),
        "objective": lambda m: m.objective(U, centers, jnds, X),
    }
    if "cython" in backends:
        cases[f"membership_matrix x{args.threads} threads"] = lambda m: (
            m.membership_matrix(centers, jnds, X, num_threads=args.threads)
            if m is backends["cython"]
            else m.membership_matrix(centers, jnds, X)
        )

    print(f"n={args.n} c={args.c} best of {args.repeat}")
    print(f"{'kernel':38s}" + "".join(f"{name:>12s}" for name in backends) + "     speedup")
    for label, fn in cases.items():
        times = {name: best_time(lambda: fn(mod), args.repeat) for name, mod in backends.items()}
        row = f"{label:38s}" + "".join(f"{times[name] * 1e3:10.1f}ms" for name in backends)
        if "cython" in times:
            row += f"  {times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
