"""Small-prime utilities: sieve, trial-division primality, prime powers."""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import InvalidArgumentError


@lru_cache(maxsize=8)
def _sieve(limit: int) -> bytes:
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return bytes(flags)


def primes_upto(limit: int) -> list[int]:
    """All primes p <= limit, ascending."""
    if limit < 2:
        return []
    flags = _sieve(limit)
    return [i for i in range(2, limit + 1) if flags[i]]


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes in the half-open range [lo, hi)."""
    return [p for p in primes_upto(hi - 1) if p >= lo]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def require_odd_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise InvalidArgumentError(f"expected an integer, got {p!r}")
    if p == 2 or not is_prime(p):
        raise InvalidArgumentError(f"{p} is not an odd prime")
    return p


def ilog(n: int, p: int) -> int:
    """Largest a with p**a <= n (n >= 1, p >= 2)."""
    a, q = 0, p
    while q <= n:
        a += 1
        q *= p
    return a


def valuation(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise InvalidArgumentError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    for p in primes_upto(math.isqrt(n)):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return True
