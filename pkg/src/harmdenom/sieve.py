"""List n <= x with d_n = D_n by sifting out every block of every Q_p."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from ._backend import kernels
from .errors import InvalidArgumentError, ResourceLimitError
from .ep import EpSet, ep_compute
from .primes import is_prime_power, primes_upto
from .qp import qp_member

#: Bytes allowed for the membership array (one byte per n).
DEFAULT_MEMORY_BUDGET = 1 << 30


@dataclass(frozen=True)
class RunList:
    x: int
    runs: tuple[tuple[int, int], ...]

    @property
    def count(self) -> int:
        return sum(length for _, length in self.runs)

    def members(self) -> list[int]:
        return [n for start, length in self.runs for n in range(start, start + length)]

    def clipped(self, x: int) -> "RunList":
        out = []
        for start, length in self.runs:
            if start > x:
                break
            out.append((start, min(length, x - start + 1)))
        return RunList(x, tuple(out))

    def notation(self) -> str:
        """Runs as ``start_length`` tokens, e.g. ``1_5, 9_9, 27_6``."""
        return ", ".join(f"{s}_{n}" for s, n in self.runs)


@dataclass(frozen=True)
class ConjectureReport:
    x: int
    count: int
    ratio: float


def runs_from_members(members: Iterable[int], x: int) -> RunList:
    runs: list[list[int]] = []
    for n in sorted(set(members)):
        if runs and runs[-1][0] + runs[-1][1] == n:
            runs[-1][1] += 1
        else:
            runs.append([n, 1])
    return RunList(x, tuple((s, n) for s, n in runs))


def parse_notation(text: str, x: int) -> RunList:
    runs = []
    for token in text.replace(",", " ").split():
        start, _, length = token.partition("_")
        runs.append((int(start), int(length)))
    return RunList(x, tuple(runs))


def _small_members(p: int, x: int) -> list[int]:
    # only m with m * p <= x can open a block below x
    return kernels.ep_prefix(p, x // p)


def sieve_qtilde(
    x: int,
    ep_source: Callable[[int], EpSet] | None = None,
    workers: int = 1,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> RunList:
    """Q-tilde intersected with [1, x] as maximal runs.

    By default only the members m <= x/p of each E_p are computed, which is
    exact since larger m cannot open a block inside [1, x].  ``ep_source``
    substitutes full E_p sets (for instance from the on-disk cache).
    """
    if not isinstance(x, int) or x < 1:
        raise InvalidArgumentError(f"sieve bound must be a positive integer, got {x!r}")
    if x + 1 > memory_budget:
        raise ResourceLimitError(
            f"sieve bound {x} needs {x + 1} bytes, over the budget of "
            f"{memory_budget}; use a segmented sieve for bounds this large"
        )
    primes = [p for p in primes_upto(x // 2) if p > 2]
    if ep_source is None:
        fetch = lambda p: _small_members(p, x)  # noqa: E731
    else:
        fetch = lambda p: [m for m in ep_source(p) if m * p <= x]  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            member_lists = list(pool.map(fetch, primes))
    else:
        member_lists = [fetch(p) for p in primes]

    starts, stops = [], []
    for p, members in zip(primes, member_lists):
        for m in members:
            pa = p
            while m * pa <= x:
                starts.append(m * pa)
                stops.append(min((m + 1) * pa, x + 1))
                pa *= p
    marks = bytearray(x + 1)
    kernels.mark_intervals(marks, starts, stops)
    return RunList(x, tuple(kernels.zero_runs(marks, 1, x + 1)))


def qtilde_member(n: int) -> bool:
    """d_n = D_n, decided by the leading-digit test for each odd p <= n/2."""
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    for p in primes_upto(n // 2):
        if p > 2 and qp_member(n, p, ep_compute(p)):
            return False
    return True


def conjecture_report(x_values: Iterable[int], **sieve_kwargs) -> list[ConjectureReport]:
    """Q-tilde(x) and the ratio Q-tilde(x) log x / x for each x."""
    xs = sorted(set(x_values))
    if not xs:
        return []
    full = sieve_qtilde(xs[-1], **sieve_kwargs)
    out = []
    for x in xs:
        count = full.clipped(x).count
        out.append(ConjectureReport(x, count, count * math.log(x) / x))
    return out


def prime_power_starts(runs: RunList) -> list[int]:
    return [s for s, _ in runs.runs if is_prime_power(s)]
