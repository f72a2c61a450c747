"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from harmdenom import _pykernels
from harmdenom.primes import ilog, primes_upto

try:
    from harmdenom import _kernels
except ImportError:
    _kernels = None


def _sieve_workload(kern, x):
    primes = [p for p in primes_upto(x // 2) if p > 2]
    starts, stops = [], []
    for p in primes:
        for m in kern.ep_prefix(p, x // p):
            pa = p
            while m * pa <= x:
                starts.append(m * pa)
                stops.append(min((m + 1) * pa, x + 1))
                pa *= p
    buf = bytearray(x + 1)
    kern.mark_intervals(buf, starts, stops)
    return kern.zero_runs(buf, 1, x + 1)


def _valuation_workload(kern, n):
    out = 0
    for p in primes_upto(n)[1:60]:
        a = ilog(n, p)
        out ^= kern.padic_harmonic_sum(n, p, a, p ** (a + 4))
    return out


WORKLOADS = {
    "ep_sizes (odd p < 10000)": lambda k: k.ep_sizes(primes_upto(10000)[1:]),
    "sieve pipeline (x = 10^6)": lambda k: _sieve_workload(k, 10**6),
    "padic sums (n = 5000, 59 primes)": lambda k: _valuation_workload(k, 5000),
}


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'workload':36s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, work in WORKLOADS.items():
        t_py, r_py = _best(lambda: work(_pykernels), args.repeat)
        if _kernels is None:
            print(f"{name:36s} {t_py:10.4f} {'n/a':>10s}")
            continue
        t_cy, r_cy = _best(lambda: work(_kernels), args.repeat)
        assert r_py == r_cy, name
        print(f"{name:36s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
