"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs on every available backend; the table reports the best
wall time and checks that both backends return the same answer.
"""

import argparse
import time

import numpy as np

from siegel_lab import kernels
from siegel_lab.arith import sieve_primes


def _workloads():
    table = sieve_primes(2 * 10**6)
    flags = table.flags
    primes_small = table.primes_in(2, 10**5)
    v = np.cos(2 * np.pi * np.arange(7) / 7)
    v[0] = 0.0
    w = np.zeros(7)
    return {
        "sieve 1e7": lambda: int(kernels.sieve_flags(10**7).sum()),
        "goldbach scan x200 near 1e6": lambda: sum(kernels.goldbach_scan(flags, n, 3, n) for n in range(10**6, 10**6 + 400, 2)),
        "prime exp sums q=97, x=1e5": lambda: tuple(round(float(a.sum()), 6) for a in kernels.prime_exp_sums(primes_small, 97)),
        "L partial sum N=1e6": lambda: round(kernels.l_partial_sum(v, w, 10**6, 1.0)[0], 10),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'workload':32s}" + "".join(f"{b:>12s}" for b in backends) + f"{'speedup':>10s}  agree")
    for name, fn in _workloads().items():
        times, answers = {}, {}
        for b in backends:
            prev = kernels.set_backend(b)
            try:
                best = float("inf")
                for _ in range(args.repeat):
                    t = time.perf_counter()
                    answers[b] = fn()
                    best = min(best, time.perf_counter() - t)
                times[b] = best
            finally:
                kernels.set_backend(prev)
        speed = times["python"] / times["compiled"] if len(times) == 2 else float("nan")
        agree = len(set(map(repr, answers.values()))) == 1
        print(f"{name:32s}" + "".join(f"{times[b]:11.4f}s" for b in backends) + f"{speed:9.1f}x  {agree}")


if __name__ == "__main__":
    main()
