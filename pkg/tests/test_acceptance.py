"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is
printed in the terminal summary."""

import io
import time
from math import prod

import mpmath
import pytest

from harmdenom import oracle
from harmdenom.cli import run
from harmdenom.ep import ep_compute, wieferich_test
from harmdenom.nested import find_nested_exponents, verify_witness
from harmdenom.primes import is_prime_power, primes_between, primes_upto
from harmdenom.qp import (
    density_empirical,
    density_exact,
    factor_dn_fast,
    harmonic_p_valuation,
    qp_count,
    qp_member,
)
from harmdenom.sieve import prime_power_starts, sieve_qtilde

criterion = pytest.mark.criterion


def cli(*argv):
    out = io.StringIO()
    assert run(list(argv), stdout=out, stderr=io.StringIO()) == 0
    return out.getvalue().strip()


@criterion(1, "Table 1: c_n, d_n, D_n for n = 1..10")
def test_table1():
    start = time.perf_counter()
    c = [1, 3, 11, 25, 137, 49, 363, 761, 7129, 7381]
    d = [1, 2, 6, 12, 60, 20, 140, 280, 2520, 2520]
    big_d = [1, 2, 6, 12, 60, 60, 420, 840, 2520, 2520]
    for n in range(1, 11):
        assert cli("harmonic", str(n)) == f"{c[n - 1]}/{d[n - 1]}"
        assert oracle.lcm_upto(n).value == big_d[n - 1]
    assert time.perf_counter() - start < 1


PUBLISHED_RUNS = [
    (1, 5), (9, 9), (27, 6), (49, 5), (88, 12), (125, 31), (243, 29), (289, 5),
    (361, 2), (484, 2), (841, 6), (968, 99), (1164, 2), (1331, 1), (1369, 89),
    (2401, 99), (3125, 254), (3488, 172), (3721, 272), (6889, 87), (7085, 477),
    (7761, 71), (7921, 324), (8342, 51), (8502, 375), (9156, 155),
]


@criterion(2, "sieve 10000: 2641 members, 26 published runs, 15 prime-power starts")
def test_sieve_10000():
    start = time.perf_counter()
    assert cli("sieve", "10000", "--count") == "2641"
    runs = sieve_qtilde(10000)
    elapsed = time.perf_counter() - start
    problems = []
    if runs.count != 2641:
        problems.append(f"count {runs.count} != 2641")
    if len(runs.runs) != 26:
        problems.append(f"{len(runs.runs)} runs != 26")
    if list(runs.runs) != PUBLISHED_RUNS:
        diff = [(got, want) for got, want in zip(runs.runs, PUBLISHED_RUNS) if got != want]
        problems.append(f"runs differ from the published list at (computed, published) {diff}")
    if len(prime_power_starts(runs)) != 15:
        problems.append(f"{len(prime_power_starts(runs))} prime-power run starts != 15")
    if elapsed >= 60:
        problems.append(f"took {elapsed:.1f}s")
    assert not problems, "; ".join(problems)


TABLE2 = {
    (3, 2039): {1: 192, 3: 92, 4: 1, 5: 18, 7: 4, 9: 0},
    (2039, 4547): {1: 181, 3: 97, 4: 1, 5: 25, 7: 2, 9: 1},
    (4547, 7219): {1: 187, 3: 101, 4: 0, 5: 17, 7: 2, 9: 0},
    (7219, 10000): {1: 192, 3: 93, 4: 0, 5: 19, 7: 3, 9: 0},
    (3, 10000): {1: 752, 3: 383, 4: 2, 5: 79, 7: 11, 9: 1},
}


@criterion(3, "Table 2: |E_p| histogram over four prime ranges and total")
def test_table2():
    start = time.perf_counter()
    for (lo, hi), cells in TABLE2.items():
        lines = cli("ep-stats", "--lo", str(lo), "--hi", str(hi)).splitlines()
        counts = {}
        for line in lines[:-1]:
            size, count = line.removeprefix("|E_p|=").split(": ")
            counts[int(size)] = int(count)
        total = int(lines[-1].removeprefix("total: "))
        assert set(counts) <= set(cells)
        assert {k: counts.get(k, 0) for k in cells} == cells
        assert total == (1228 if (lo, hi) == (3, 10000) else 307)
    assert time.perf_counter() - start < 120


@criterion(4, "named sets E_1093, E_3511, E_2113 as published")
def test_named_sets():
    assert cli("ep", "1093") == "273,546,819,1092"
    assert ep_compute(1093).members == (273, 546, 819, 1092)
    assert ep_compute(3511).members == (877, 1755, 2633, 3510)
    assert ep_compute(2113).members == (44, 443, 553, 748, 1384, 1559, 1669, 2068, 2112)


@criterion(5, "oracle vs fast path for all n <= 2000")
def test_oracle_fast_equivalence():
    start = time.perf_counter()
    for n in range(1, 2001):
        q = oracle.quotient_qn(n).value
        for p in primes_upto(n)[1:]:
            assert qp_member(n, p) == (q % p == 0), (n, p)
        assert factor_dn_fast(n) == oracle.factor_dn_oracle(n), n
    assert time.perf_counter() - start < 600


@criterion(6, "Wieferich cross-check for odd p < 10000")
def test_wieferich_crosscheck():
    passing = []
    for p in primes_between(3, 10000):
        mid = (p - 1) // 2 in ep_compute(p)
        wief = wieferich_test(p)
        assert mid == wief, p
        if wief:
            passing.append(p)
    assert passing == [1093, 3511]
    assert cli("wieferich", "--max", "10000") == "1093,3511"


@criterion(7, "monotonicity phenomena of d_n")
def test_theorem1():
    prefix = oracle.harmonic_prefix(47 * 46)
    d = lambda n: prefix[n - 1].denominator  # noqa: E731
    for p in primes_upto(47):
        if p > 3:
            assert d(2 * p) == d(2 * p - 1)
            assert d(p * (p - 1)) < d(p * (p - 1) - 1)
    inc = oracle.scan_monotonic_runs(1500, "increasing", 4)
    assert oracle.window_starts(inc, 4) == [1, 2, 6, 22, 70, 820, 856, 1288]
    dec = oracle.scan_monotonic_runs(1500, "decreasing", 3)
    assert oracle.window_starts(dec, 3) == [19]
    assert oracle.factor_dn_oracle(19) == [
        (2, 4), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1)
    ]


@criterion(8, "stationary block 1331 <= n < 1361")
def test_stationary_block():
    prefix = oracle.harmonic_prefix(1360)
    base = oracle.lcm_upto(1331).value
    assert prefix[1330].denominator == base
    for n in range(1332, 1361):
        assert oracle.lcm_upto(n).value == base
        assert base == 37 * prefix[n - 1].denominator


@criterion(9, "density of Q_3 and the closed-form count")
def test_density():
    mpmath.mp.dps = 50
    reference = float(mpmath.log(mpmath.mpf(3) / 2) / mpmath.log(3))
    exact = density_exact(3).exact
    assert abs(exact - reference) <= 1e-12
    assert abs(density_empirical(3, None, 3**12) - exact) <= 0.05
    for p in (3, 5, 7):
        e = ep_compute(p)
        for b in range(1, 9):
            assert qp_count(p, e, p**b) == len(e) * (p**b - p) // (p - 1)


@criterion(10, "nested witnesses for {3,5} and {3,5,7}")
def test_nested():
    assert cli("nested", "3,5") == "20"
    w = find_nested_exponents([3, 5])
    assert w.witness == 20 and verify_witness(w)
    assert oracle.quotient_qn(20).value % 15 == 0
    w = find_nested_exponents([3, 5, 7])
    assert verify_witness(w)
    assert all(qp_member(w.witness, p) for p in (3, 5, 7))
    if w.witness <= oracle.DEFAULT_MAX_N:
        assert oracle.quotient_qn(w.witness).value % prod((3, 5, 7)) == 0
    assert int(cli("nested", "3,5,7")) == w.witness


@criterion(11, "Wolstenholme p^2 | c_(p-1) for 3 < p <= 47 on two paths")
def test_wolstenholme():
    prefix = oracle.harmonic_prefix(46)
    for p in primes_upto(47):
        if p > 3:
            assert prefix[p - 2].numerator % (p * p) == 0
            assert harmonic_p_valuation(p - 1, p).v >= 2
