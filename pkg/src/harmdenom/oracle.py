"""Exact ground truth: H_n as a reduced fraction, D_n, q_n and d_n scans.

Everything here uses arbitrary-precision integers only; the fast paths in
:mod:`harmdenom.ep`, :mod:`harmdenom.qp` and :mod:`harmdenom.sieve` are
validated against this module.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import InvalidArgumentError, ResourceLimitError
from .primes import ilog, primes_upto

DEFAULT_MAX_N = 10_000

DIRECTIONS = ("increasing", "decreasing", "equal")


@dataclass(frozen=True)
class HarmonicFraction:
    n: int
    numerator: int
    denominator: int

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class LcmValue:
    n: int
    value: int
    factorization: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class QuotientValue:
    n: int
    value: int


class _Prefix:
    """Running sum of 1/k kept in lowest terms, extended on demand."""

    def __init__(self):
        self._values = [Fraction(0)]
        self._lock = threading.Lock()

    def upto(self, n: int) -> list[Fraction]:
        with self._lock:
            values = self._values
            h = values[-1]
            for k in range(len(values), n + 1):
                h += Fraction(1, k)
                values.append(h)
            return values


_prefix = _Prefix()


def _check_index(n: int, max_n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidArgumentError(f"index must be a positive integer, got {n!r}")
    if n > max_n:
        raise ResourceLimitError(
            f"n={n} exceeds the exact-oracle cap max_n={max_n}"
        )


def harmonic_prefix(n: int, max_n: int = DEFAULT_MAX_N) -> list[HarmonicFraction]:
    """H_1, ..., H_n in one incremental pass."""
    _check_index(n, max_n)
    values = _prefix.upto(n)
    return [
        HarmonicFraction(k, values[k].numerator, values[k].denominator)
        for k in range(1, n + 1)
    ]


def harmonic_exact(n: int, max_n: int = DEFAULT_MAX_N) -> HarmonicFraction:
    _check_index(n, max_n)
    h = _prefix.upto(n)[n]
    return HarmonicFraction(n, h.numerator, h.denominator)


def lcm_upto(n: int) -> LcmValue:
    """D_n from the prime table: the product of p**floor(log_p n)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidArgumentError(f"index must be a positive integer, got {n!r}")
    factorization = tuple((p, ilog(n, p)) for p in primes_upto(n))
    value = prod(p**a for p, a in factorization)
    return LcmValue(n, value, factorization)


def quotient_qn(n: int, max_n: int = DEFAULT_MAX_N) -> QuotientValue:
    d = harmonic_exact(n, max_n).denominator
    big_d = lcm_upto(n).value
    q, r = divmod(big_d, d)
    if r:
        raise AssertionError(f"d_{n} does not divide D_{n}")
    return QuotientValue(n, q)


def factor_dn_oracle(n: int, max_n: int = DEFAULT_MAX_N) -> list[tuple[int, int]]:
    """Prime factorization of d_n by trial division with primes <= n."""
    d = harmonic_exact(n, max_n).denominator
    out = []
    for p in primes_upto(n):
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        if e:
            out.append((p, e))
    if d != 1:
        raise AssertionError(f"d_{n} has a prime factor above {n}")
    return out


def _relation(direction: str):
    if direction == "increasing":
        return lambda a, b: a < b
    if direction == "decreasing":
        return lambda a, b: a > b
    if direction == "equal":
        return lambda a, b: a == b
    raise InvalidArgumentError(
        f"direction must be one of {', '.join(DIRECTIONS)}, got {direction!r}"
    )


def scan_monotonic_runs(
    limit: int, direction: str, min_len: int, max_n: int = DEFAULT_MAX_N
) -> list[tuple[int, int]]:
    """Maximal runs d_s, d_{s+1}, ..., d_{s+L-1} (indices <= limit) in which
    every consecutive pair satisfies ``direction``, with L >= min_len.

    Lengths count d-values, so a length-4 increasing run has 3 strict steps.
    """
    rel = _relation(direction)
    if min_len < 2:
        raise InvalidArgumentError("min_len must be at least 2")
    ds = [h.denominator for h in harmonic_prefix(limit, max_n)]
    runs = []
    start = 0
    for i in range(1, len(ds) + 1):
        if i < len(ds) and rel(ds[i - 1], ds[i]):
            continue
        length = i - start
        if length >= min_len:
            runs.append((start + 1, length))
        start = i
    return runs


def window_starts(runs: list[tuple[int, int]], length: int) -> list[int]:
    """Every n starting a window of exactly ``length`` d-values inside a run.

    This is the "d_n < d_{n+1} < d_{n+2} < d_{n+3} holds for n = ..." view of
    the maximal runs returned by :func:`scan_monotonic_runs`.
    """
    out = []
    for start, run_len in runs:
        out.extend(range(start, start + run_len - length + 1))
    return out
