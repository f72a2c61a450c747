# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

from . import _pykernels

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

# moduli below 2**63 keep every sum of two residues inside 64 bits
cdef uint64_t LIMIT = 1ULL << 63


cdef inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) noexcept nogil:
    return <uint64_t>((<u128>a * b) % m)


cdef uint64_t inv_mod(uint64_t a, uint64_t m) noexcept nogil:
    # extended Euclid; a must be a unit mod m
    cdef long long t = 0, nt = 1, q, tmp
    cdef long long r = <long long>m, nr = <long long>(a % m)
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += <long long>m
    return <uint64_t>t


cdef int prefix_members(uint64_t p, uint64_t top, uint64_t* prefix,
                        uint64_t* out) noexcept nogil:
    # prefix must hold top + 1 words; writes members into out, returns count
    cdef uint64_t i, acc = 1, inv, s, cur
    cdef int count = 0
    prefix[0] = 1
    for i in range(1, top + 1):
        acc = mulmod(acc, i, p)
        prefix[i] = acc
    inv = inv_mod(acc, p)
    # backward sweep: turn prefix[i] into 1/i in place
    i = top
    while i >= 1:
        cur = mulmod(inv, prefix[i - 1], p)
        inv = mulmod(inv, i, p)
        prefix[i] = cur
        i -= 1
    s = prefix[1]
    for i in range(2, top + 1):
        s += prefix[i]
        if s >= p:
            s -= p
        if s == 0:
            out[count] = i
            count += 1
    return count


def ep_prefix(p, limit):
    cdef uint64_t cp, top
    cdef uint64_t* prefix
    cdef uint64_t* out
    cdef int count, k
    if p >= LIMIT:
        return _pykernels.ep_prefix(p, limit)
    ptop = min(limit, p - 1)
    if ptop < 2:
        return []
    top = ptop
    cp = p
    prefix = <uint64_t*>malloc((top + 1) * sizeof(uint64_t))
    out = <uint64_t*>malloc((top + 1) * sizeof(uint64_t))
    if prefix == NULL or out == NULL:
        free(prefix)
        free(out)
        raise MemoryError()
    with nogil:
        count = prefix_members(cp, top, prefix, out)
    result = [out[k] for k in range(count)]
    free(prefix)
    free(out)
    return result


def ep_sizes(primes):
    cdef uint64_t p, biggest
    cdef uint64_t* prefix
    cdef uint64_t* out
    cdef int count
    if not primes:
        return []
    biggest = max(primes)
    if biggest >= LIMIT:
        return _pykernels.ep_sizes(primes)
    prefix = <uint64_t*>malloc((biggest + 1) * sizeof(uint64_t))
    out = <uint64_t*>malloc((biggest + 1) * sizeof(uint64_t))
    if prefix == NULL or out == NULL:
        free(prefix)
        free(out)
        raise MemoryError()
    sizes = []
    try:
        for p in primes:
            if p < 3:
                sizes.append(0)
                continue
            with nogil:
                count = prefix_members(p, p - 1, prefix, out)
            sizes.append(count)
    finally:
        free(prefix)
        free(out)
    return sizes


cdef uint64_t unit_inverse_sum(uint64_t top, uint64_t p, uint64_t m,
                               uint64_t* prefix) noexcept nogil:
    # sum of 1/u mod m over 1 <= u <= top with p not dividing u, batched
    cdef uint64_t u, acc = 1, inv, total = 0
    prefix[0] = 1
    for u in range(1, top + 1):
        if u % p:
            acc = mulmod(acc, u, m)
        prefix[u] = acc
    inv = inv_mod(acc, m)
    u = top
    while u >= 1:
        if u % p:
            total += mulmod(inv, prefix[u - 1], m)
            if total >= m:
                total -= m
            inv = mulmod(inv, u, m)
        u -= 1
    return total


def padic_harmonic_sum(n, p, shift, modulus):
    cdef uint64_t cn, cp, cm, pj, weight, top, total, w
    cdef int j, cshift
    cdef uint64_t* prefix
    if modulus >= LIMIT or n >= LIMIT:
        return _pykernels.padic_harmonic_sum(n, p, shift, modulus)
    cn, cp, cm, cshift = n, p, modulus, shift
    prefix = <uint64_t*>malloc((cn + 1) * sizeof(uint64_t))
    if prefix == NULL:
        raise MemoryError()
    total = 0
    with nogil:
        pj = 1
        j = 0
        while pj <= cn:
            # p**(shift - j) mod modulus
            weight = 1 % cm
            for w in range(cshift - j):
                weight = mulmod(weight, cp, cm)
            top = cn // pj
            if weight != 0:
                total = (total + mulmod(weight, unit_inverse_sum(top, cp, cm, prefix), cm)) % cm
            j += 1
            pj *= cp
    free(prefix)
    return total


def mark_intervals(bytearray buf, starts, stops):
    cdef unsigned char[:] view = buf
    cdef Py_ssize_t lo, hi
    for lo, hi in zip(starts, stops):
        if hi > lo:
            memset(&view[lo], 1, hi - lo)


def zero_runs(bytearray buf, Py_ssize_t lo, Py_ssize_t hi):
    cdef unsigned char[:] view = buf
    cdef Py_ssize_t i = lo, start
    runs = []
    while i < hi:
        if view[i] == 0:
            start = i
            while i < hi and view[i] == 0:
                i += 1
            runs.append((start, i - start))
        else:
            i += 1
    return runs
