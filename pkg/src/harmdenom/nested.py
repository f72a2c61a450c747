"""Aligning the blocks [(p-1) p^a, p^(a+1)) of several primes into a chain.

If I(1) contains I(2) contains ... contains I(k), every n in I(k) has
p_1 p_2 ... p_k dividing q_n.  Existence of such exponents follows from
Kronecker's theorem; here they are found by a bounded search over a_1 with
every comparison done on exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import prod

from .errors import InvalidArgumentError, SearchExhaustedError
from .oracle import DEFAULT_MAX_N, quotient_qn
from .primes import require_odd_prime
from .qp import QpInterval, qp_member

DEFAULT_A_MAX = 5000


@dataclass(frozen=True)
class NestedWitness:
    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    intervals: tuple[QpInterval, ...]
    witness: int


def _block(p: int, a: int) -> QpInterval:
    return QpInterval(p, p - 1, a)


def _fit_inside(p: int, outer: QpInterval, guess: int) -> int | None:
    """Exponent a >= 1 placing p's block inside ``outer``, or None.

    The block's start grows with a, so the largest a whose end still fits is
    the only candidate worth testing.
    """
    a = max(1, guess + 1)
    while a >= 1 and p ** (a + 1) > outer.stop:
        a -= 1
    while p ** (a + 2) <= outer.stop:
        a += 1
    if a < 1 or (p - 1) * p**a < outer.start:
        return None
    return a


def find_nested_exponents(primes, a_max: int = DEFAULT_A_MAX) -> NestedWitness:
    primes = tuple(primes)
    if not primes:
        raise InvalidArgumentError("need at least one prime")
    for p in primes:
        require_odd_prime(p)
    if any(q <= p for p, q in zip(primes, primes[1:])):
        raise InvalidArgumentError("primes must be strictly increasing")
    log1 = math.log(primes[0])
    for a1 in range(1, a_max + 1):
        chain = [_block(primes[0], a1)]
        for p in primes[1:]:
            guess = int(a1 * log1 / math.log(p))
            a = _fit_inside(p, chain[-1], guess)
            if a is None:
                break
            chain.append(_block(p, a))
        else:
            return NestedWitness(
                primes,
                tuple(iv.a for iv in chain),
                tuple(chain),
                chain[-1].start,
            )
    raise SearchExhaustedError(
        f"no nested alignment for {list(primes)} with a_1 <= {a_max}", bound=a_max
    )


def _nested(outer: QpInterval, inner: QpInterval) -> bool:
    return outer.start <= inner.start and inner.stop <= outer.stop


def verify_witness(w: NestedWitness, max_n: int = DEFAULT_MAX_N) -> bool:
    """Recheck nesting, digit tests, and (when small enough) q_n exactly."""
    if len(w.primes) != len(w.exponents) or len(w.primes) != len(w.intervals):
        return False
    for p, a, iv in zip(w.primes, w.exponents, w.intervals):
        if a < 1 or iv != _block(p, a):
            return False
    if any(b >= a for a, b in zip(w.exponents, w.exponents[1:])):
        return False
    if not all(_nested(o, i) for o, i in zip(w.intervals, w.intervals[1:])):
        return False
    if w.witness not in w.intervals[-1]:
        return False
    if not all(qp_member(w.witness, p) for p in w.primes):
        return False
    if w.witness <= max_n:
        return quotient_qn(w.witness, max_n).value % prod(w.primes) == 0
    return True
