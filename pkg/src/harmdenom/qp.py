"""Structure of Q_p = {n : p | q_n}.

n lies in Q_p exactly when p <= n and its leading base-p digit belongs to
E_p, i.e. when n falls in one of the intervals [m p^a, (m+1) p^a) with
m in E_p and a >= 1.  This module also evaluates the harmonic density of
Q_p and the exact p-adic valuation of H_n without forming H_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .ep import EpSet, ep_compute
from .errors import InvalidArgumentError, PrecisionExhaustedError
from .primes import ilog, primes_upto, require_odd_prime, valuation

#: Largest cushion (precision beyond floor(log_p n)) tried before giving up.
DEFAULT_MAX_CUSHION = 256

_EULER_GAMMA = 0.57721566490153286060651209


@dataclass(frozen=True)
class QpInterval:
    """The block [m p^a, (m+1) p^a) of consecutive members of Q_p."""

    p: int
    m: int
    a: int

    @property
    def start(self) -> int:
        return self.m * self.p**self.a

    @property
    def stop(self) -> int:
        return (self.m + 1) * self.p**self.a

    @property
    def length(self) -> int:
        return self.p**self.a

    def __contains__(self, n):
        return self.start <= n < self.stop

    def clipped(self, x: int) -> range:
        """Members of this interval that are <= x."""
        return range(self.start, min(self.stop, x + 1))


@dataclass(frozen=True)
class PadicValuation:
    n: int
    p: int
    v: int
    certified_precision: int

    @property
    def dn_exponent(self) -> int:
        return max(0, -self.v)

    @property
    def qn_exponent(self) -> int:
        return ilog(self.n, self.p) - self.dn_exponent


@dataclass(frozen=True)
class DensityValue:
    p: int
    exact: float
    terms: tuple[float, ...]


def _check_ep(p: int, ep: EpSet | None) -> EpSet:
    if ep is None:
        return ep_compute(p)
    if ep.p != p:
        raise InvalidArgumentError(f"E_{ep.p} supplied for prime {p}")
    return ep


def leading_digit(n: int, p: int) -> tuple[int, int]:
    """(m, a) with p**a <= n < p**(a+1) and m = n // p**a."""
    a = ilog(n, p)
    return n // p**a, a


def qp_member(n: int, p: int, ep: EpSet | None = None) -> bool:
    ep = _check_ep(p, ep)
    if n < p:
        return False
    m, _ = leading_digit(n, p)
    return m in ep


def qp_intervals_upto(p: int, ep: EpSet | None, x: int) -> list[QpInterval]:
    """All blocks of Q_p that start at or below x, sorted by start."""
    ep = _check_ep(p, ep)
    out = []
    for m in ep:
        a = 1
        while m * p**a <= x:
            out.append(QpInterval(p, m, a))
            a += 1
    out.sort(key=lambda iv: iv.start)
    return out


def qp_count(p: int, ep: EpSet | None, x: int) -> int:
    """|Q_p intersected with [1, x]|."""
    total = 0
    for iv in qp_intervals_upto(p, ep, x):
        r = iv.clipped(x)
        total += r.stop - r.start
    return total


def qp_count_closed_form(p: int, ep: EpSet | None, b: int) -> int:
    """Count of Q_p up to x = p**b: |E_p| (p^b - p) / (p - 1)."""
    ep = _check_ep(p, ep)
    return len(ep) * (p**b - p) // (p - 1)


def density_exact(p: int, ep: EpSet | None = None) -> DensityValue:
    """Harmonic density (1/log p) * sum over m in E_p of log(1 + 1/m).

    Each term is a log1p of a value in (0, 1/2], so the result carries
    relative error of a few ulps.
    """
    ep = _check_ep(p, ep)
    logp = math.log(p)
    terms = tuple(math.log1p(1 / m) / logp for m in ep)
    return DensityValue(p, math.fsum(terms), terms)


def harmonic_float(n: int) -> float:
    """H_n in double precision (direct below 256, asymptotic series above)."""
    if n < 256:
        return math.fsum(1 / k for k in range(1, n + 1))
    inv2 = 1.0 / (n * n)
    tail = 1 / (2 * n) - inv2 * (1 / 12 - inv2 * (1 / 120 - inv2 / 252))
    return math.log(n) + _EULER_GAMMA + tail


def density_empirical(p: int, ep: EpSet | None, x: int) -> float:
    """(1/log x) * sum of 1/n over members n <= x of Q_p."""
    if x < 2:
        raise InvalidArgumentError("density_empirical needs x >= 2")
    total = 0.0
    for iv in qp_intervals_upto(p, ep, x):
        r = iv.clipped(x)
        total += harmonic_float(r.stop - 1) - harmonic_float(r.start - 1)
    return total / math.log(x)


def harmonic_p_valuation(
    n: int, p: int, max_cushion: int = DEFAULT_MAX_CUSHION
) -> PadicValuation:
    """v_p(H_n) from sum_k p^A / k computed modulo p^t, A = floor(log_p n).

    Every term p^A / k is a p-adic integer, so the sum S is one too and
    v_p(H_n) = v_p(S) - A, which is certified once S is nonzero mod p^t.
    """
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    require_odd_prime(p)
    shift = ilog(n, p)
    cushion = min(4, max_cushion)
    while True:
        t = shift + cushion
        modulus = p**t
        s = kernels.padic_harmonic_sum(n, p, shift, modulus)
        if s:
            return PadicValuation(n, p, valuation(s, p) - shift, t)
        if cushion >= max_cushion:
            raise PrecisionExhaustedError(
                f"v_{p}(H_{n}) not certified at precision p^{t}",
                lower_bound=t - shift,
            )
        cushion = min(2 * cushion, max_cushion)


def dn_exponent(n: int, p: int, max_cushion: int = DEFAULT_MAX_CUSHION) -> int:
    """Exponent of the prime p in d_n."""
    if p == 2:
        return ilog(n, 2)
    if n < p:
        return 0
    m, a = leading_digit(n, p)
    if m not in ep_compute(p):
        # p^a divides d_n and p^(a+1) does not divide D_n
        return a
    return harmonic_p_valuation(n, p, max_cushion).dn_exponent


def factor_dn_fast(n: int, max_cushion: int = DEFAULT_MAX_CUSHION) -> list[tuple[int, int]]:
    """Prime factorization of d_n without computing H_n."""
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    out = []
    for p in primes_upto(n):
        e = dn_exponent(n, p, max_cushion)
        if e:
            out.append((p, e))
    return out


def factor_qn_fast(n: int, max_cushion: int = DEFAULT_MAX_CUSHION) -> list[tuple[int, int]]:
    """Prime factorization of q_n = D_n / d_n."""
    out = []
    for p in primes_upto(n):
        e = ilog(n, p) - dn_exponent(n, p, max_cushion)
        if e:
            out.append((p, e))
    return out
