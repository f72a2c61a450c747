"""E_p = {1 < m < p : p | c_m} via harmonic sums modulo p.

For m < p the denominator d_m is prime to p, so p | c_m exactly when
sum_{k <= m} k^{-1} = 0 (mod p).
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from ._backend import kernels
from .errors import InvalidArgumentError
from .primes import primes_between, require_odd_prime


@dataclass(frozen=True)
class EpSet:
    p: int
    members: tuple[int, ...]

    def __contains__(self, m):
        return m in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class EpHistogram:
    lo: int
    hi: int
    counts: dict[int, int] = field(default_factory=dict)
    total: int = 0

    def count(self, size: int) -> int:
        return self.counts.get(size, 0)


@lru_cache(maxsize=4096)
def _ep_members(p: int) -> tuple[int, ...]:
    return tuple(kernels.ep_prefix(p, p - 1))


def ep_compute(p: int) -> EpSet:
    require_odd_prime(p)
    return EpSet(p, _ep_members(p))


def ep_prefix(p: int, limit: int) -> list[int]:
    """Members of E_p not exceeding ``limit``; costs O(min(limit, p))."""
    require_odd_prime(p)
    return kernels.ep_prefix(p, limit)


def _chunks(seq, k):
    size = max(1, -(-len(seq) // k))
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def ep_histogram(lo: int, hi: int, workers: int = 1) -> EpHistogram:
    """Tally |E_p| over the odd primes p in [lo, hi)."""
    if lo < 3 or hi <= lo:
        raise InvalidArgumentError(f"need 3 <= lo < hi, got lo={lo}, hi={hi}")
    primes = [p for p in primes_between(lo, hi) if p > 2]
    if workers > 1 and len(primes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(kernels.ep_sizes, _chunks(primes, workers)))
        sizes = [s for part in parts for s in part]
    else:
        sizes = kernels.ep_sizes(primes)
    counts = Counter(sizes)
    return EpHistogram(lo, hi, dict(sorted(counts.items())), len(primes))


def wieferich_test(p: int) -> bool:
    """True iff 2**p = 2 (mod p**2)."""
    require_odd_prime(p)
    return pow(2, p, p * p) == 2


def midpoint_membership_crosscheck(p: int) -> bool:
    """Whether [(p-1)/2 in E_p] agrees with the Wieferich condition."""
    return (((p - 1) // 2) in ep_compute(p)) == wieferich_test(p)
