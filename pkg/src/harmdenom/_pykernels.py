"""Pure-Python implementations of the hot kernels.

Behaviour is identical to the compiled ``_kernels`` extension; this module is
used whenever the extension is unavailable or ``HARMDENOM_PURE=1`` is set.
"""

from __future__ import annotations


def ep_prefix(p: int, limit: int) -> list[int]:
    """Indices 2 <= m <= min(limit, p - 1) with H_m = 0 (mod p).

    Inverses of 1..L are obtained with one modular inversion and a forward and
    backward sweep of prefix products.
    """
    top = min(limit, p - 1)
    if top < 2:
        return []
    prefix = [1] * (top + 1)
    acc = 1
    for i in range(1, top + 1):
        acc = acc * i % p
        prefix[i] = acc
    inv = pow(acc, -1, p)
    invs = [0] * (top + 1)
    for i in range(top, 0, -1):
        invs[i] = inv * prefix[i - 1] % p
        inv = inv * i % p
    out = []
    s = invs[1]
    for m in range(2, top + 1):
        s += invs[m]
        if s >= p:
            s -= p
        if s == 0:
            out.append(m)
    return out


def ep_sizes(primes: list[int]) -> list[int]:
    return [len(ep_prefix(p, p - 1)) for p in primes]


def padic_harmonic_sum(n: int, p: int, shift: int, modulus: int) -> int:
    """Sum over k <= n of p**shift / k reduced mod ``modulus`` (a power of p).

    Requires p**shift to absorb every p in 1..n, i.e. p**(shift+1) > n.
    """
    total = 0
    pj = 1
    j = 0
    while pj <= n:
        weight = p ** (shift - j)
        top = n // pj
        inner = 0
        for u in range(1, top + 1):
            if u % p:
                inner += pow(u, -1, modulus)
        total += weight * inner
        j += 1
        pj *= p
    return total % modulus


def mark_intervals(buf: bytearray, starts: list[int], stops: list[int]) -> None:
    for lo, hi in zip(starts, stops):
        if hi > lo:
            buf[lo:hi] = b"\x01" * (hi - lo)


def zero_runs(buf: bytearray, lo: int, hi: int) -> list[tuple[int, int]]:
    """Maximal runs of zero bytes in buf[lo:hi] as (start, length)."""
    runs = []
    data = bytes(buf)
    i = data.find(b"\x00", lo, hi)
    while i != -1:
        j = data.find(b"\x01", i, hi)
        if j == -1:
            j = hi
        runs.append((i, j - i))
        i = data.find(b"\x00", j, hi)
    return runs
