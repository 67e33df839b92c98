"""Compare the compiled and pure-Python evaluation kernels.

    python benchmarks/bench_kernels.py [--points 20000] [--repeat 3]

Workloads mirror the falsifier: seeded rational points scaled to integers,
then the first-violation test for the degree-8 and degree-12 pairs.
"""

import argparse
import random
import time

from symineq.kernels import available_backends
from symineq.partitions import counterexample_pair
from symineq.symmetric import Family, integer_scaling, normalization_constant, random_point


def workload(n, count, seed=0):
    rng = random.Random(seed)
    return [integer_scaling(random_point(rng, n).coords)[0] for _ in range(count)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the pure-Python backend is available")
    print(f"{'workload':<34}" + "".join(f"{name:>12}" for name in backends) + "   speedup")
    for n in (3, 6):
        pts = workload(n, args.points)
        rows = {
            f"h table k<=3, n={n}": lambda m: m.complete_h_batch(pts, 3),
            f"h table k<=8, n={n}": lambda m: m.complete_h_batch(pts, 8),
        }
        for d in (8, 12):
            mu, lam = counterexample_pair(d)
            w_mu = normalization_constant(Family.COMPLETE_H, n, mu)
            w_lam = normalization_constant(Family.COMPLETE_H, n, lam)
            rows[f"first_violation d={d}, n={n}"] = (
                lambda m, mu=mu, lam=lam, a=w_mu, b=w_lam: m.first_violation(pts, mu.parts, lam.parts, a, b)
            )
        for label, fn in rows.items():
            timings = {name: best_of(lambda m=mod: fn(m), args.repeat) for name, mod in backends.items()}
            line = f"{label:<34}" + "".join(f"{timings[name]:>11.3f}s" for name in backends)
            if "cython" in timings:
                line += f"   {timings['python'] / timings['cython']:6.1f}x"
            print(line)


if __name__ == "__main__":
    main()
