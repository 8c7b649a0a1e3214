"""Finite harmonic sums: triple sums Z(n), multi-part composition sums, the
S/T double sums, inverse-power sums, and floor-weighted sums.

Two evaluation paths exist for the triple sums.  `multi_harmonic_sum` is the
reference path: it enumerates ordered compositions directly.  `z_mod_fast`
enumerates only i <= j <= k with multiplicity weights {1, 3, 6} over numpy
slices, indexing a shared inverse table by value mod M.  The test suite
proves them equal; the sweeps use the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from operator import mul

import numpy as np

from .errors import CongruenceLabError
from .modmath import ResidueClass, factorize, inverse_table

_MAX_ACCEL_MODULUS = 1 << 31  # pairwise int64 products stay exact below this


class InvalidSpec(CongruenceLabError):
    """Raised when a sum's parameters break the invertibility guarantees."""


@dataclass(frozen=True)
class TripleSumSpec:
    """Parameters of a restricted composition sum.

    total N is split into `parts` ordered positive parts, each coprime to
    coprime_base; the sum of inverse products is reduced mod modulus.  Every
    prime of the modulus must divide the base, which makes all summand
    denominators invertible.
    """

    total: int
    parts: int
    coprime_base: int
    modulus: int

    def __post_init__(self):
        if self.total < 3:
            raise InvalidSpec(f"total must be >= 3, got {self.total}")
        if self.parts < 2:
            raise InvalidSpec(f"parts must be >= 2, got {self.parts}")
        if self.coprime_base < 1:
            raise InvalidSpec(f"coprime base must be >= 1, got {self.coprime_base}")
        if self.modulus < 2:
            raise InvalidSpec(f"modulus must be >= 2, got {self.modulus}")
        bad = [p for p in factorize(self.modulus).primes if self.coprime_base % p]
        if bad:
            raise InvalidSpec(
                f"primes {bad} of modulus {self.modulus} do not divide base {self.coprime_base}"
            )


def _coprime_weights(total: int, base: int, modulus: int) -> list[int]:
    """w[x] = inverse of x mod modulus if gcd(x, base) == 1 else 0, for x < total."""
    inv = inverse_table(modulus)
    base_primes = factorize(base).primes
    w = [0] * total
    for x in range(1, total):
        ok = True
        for p in base_primes:
            if x % p == 0:
                ok = False
                break
        if ok:
            w[x] = inv[x % modulus]
    return w


def multi_harmonic_sum(spec: TripleSumSpec) -> ResidueClass:
    """Sum of 1/(l_1 ... l_t) over ordered compositions of N into t coprime parts.

    Brute-force reference path: cost O(N**(t-1)) compositions, accepted by
    the caller.  The t = 3 case runs as two nested loops over a precomputed
    weight table; higher t recurses with an early coprimality filter.
    """
    N, t, M = spec.total, spec.parts, spec.modulus
    w = _coprime_weights(N, spec.coprime_base, M)
    if t == 2:
        acc = 0
        for i in range(1, N):
            acc += w[i] * w[N - i]
        return ResidueClass(acc % M, M)
    if t == 3:
        acc = 0
        for i in range(1, N - 1):
            wi = w[i]
            if not wi:
                continue
            ws = w[1 : N - i]
            acc = (acc + wi * (sum(map(mul, ws, reversed(ws))) % M)) % M
        return ResidueClass(acc, M)

    def rec(remaining: int, parts_left: int) -> int:
        if parts_left == 1:
            return w[remaining] if remaining < N else 0
        acc = 0
        for first in range(1, remaining - parts_left + 2):
            wf = w[first]
            if wf:
                acc = (acc + wf * rec(remaining - first, parts_left - 1)) % M
        return acc

    return ResidueClass(rec(N, t), M)


def _triple_sum_symmetric(total: int, base: int, modulus: int) -> int:
    """Weighted enumeration of i <= j <= k compositions, vectorized per i.

    Inner products run in int64; requires modulus < 2**31 and
    total * modulus < 2**62 (asserted), which covers the desk-scale sweeps.
    """
    N, M = total, modulus
    if base % 2 == 0 and N % 2 == 0:
        return 0  # three odd parts cannot sum to an even total
    if M >= _MAX_ACCEL_MODULUS or N * M >= 1 << 62:
        raise InvalidSpec(f"accelerated path limited to modulus < 2**31, got {M}")
    inv = np.asarray(inverse_table(M), dtype=np.int64)
    vals = inv[np.arange(N, dtype=np.int64) % M]
    for p in factorize(base).primes:
        vals[p::p] = 0
    vals[0] = 0
    acc = 0
    for i in range(1, N // 3 + 1):
        vi = int(vals[i])
        if not vi:
            continue
        hi = (N - i) // 2
        js = vals[i : hi + 1]
        ks = vals[N - i - hi : N - 2 * i + 1][::-1]
        prod = js * ks % M
        # weights: 6 for i<j<k, 3 when exactly two parts agree, 1 for i=j=k
        s = 6 * int(prod.sum() % M) - 3 * int(prod[0])
        if (N - i) % 2 == 0:
            s -= 3 * int(prod[-1])
        if N == 3 * i:
            s += int(prod[0])
        acc = (acc + vi * (s % M)) % M
    return acc


def _validate_z_args(n: int, modulus: int) -> None:
    if n < 3:
        raise InvalidSpec(f"triple sums need n >= 3, got {n}")
    if modulus < 2:
        raise InvalidSpec(f"modulus must be >= 2, got {modulus}")
    bad = [p for p in factorize(modulus).primes if n % p]
    if bad:
        raise InvalidSpec(f"primes {bad} of modulus {modulus} do not divide n = {n}")


def z_mod(n: int, modulus: int) -> ResidueClass:
    """Z(n) mod modulus: the triple sum over i+j+k = n with parts coprime to n.

    Every prime of the modulus must divide n.  Runs on the optimized path;
    equality with the ordered enumeration is covered by the test suite.
    """
    return z_mod_fast(n, modulus)


def z_mod_fast(n: int, modulus: int) -> ResidueClass:
    """Symmetry-reduced Z(n) mod modulus; returns 0 for even n without enumerating."""
    _validate_z_args(n, modulus)
    if n % 2 == 0:
        return ResidueClass(0, modulus)
    return ResidueClass(_triple_sum_symmetric(n, n, modulus), modulus)


def restricted_triple_sum(total: int, p: int, modulus: int) -> ResidueClass:
    """Sum of 1/(ijk) over i+j+k = total with parts coprime to p, mod a power of p.

    Same accelerated engine as z_mod_fast with the coprimality base relaxed
    to a single prime; used for the scaled-total congruence sweeps.
    """
    if total < 3:
        raise InvalidSpec(f"triple sums need total >= 3, got {total}")
    for q in factorize(modulus).primes:
        if q != p:
            raise InvalidSpec(f"modulus {modulus} is not a power of {p}")
    return ResidueClass(_triple_sum_symmetric(total, p, modulus), modulus)


def _power_of(modulus: int, p: int) -> None:
    m = modulus
    while m % p == 0:
        m //= p
    if m != 1:
        raise InvalidSpec(f"modulus {modulus} is not a power of {p}")


def _sum_guard(length: int, modulus: int) -> None:
    if length * modulus >= 1 << 62:
        raise InvalidSpec(f"sum of {length} residues mod {modulus} exceeds the int64 budget")


def s_sum(n: int, p: int, m: int, modulus: int) -> ResidueClass:
    """S(n;p) = sum over a < n coprime to p of (1/a**2) * H(am-1), mod a power of p.

    H(x) is the inverse sum over i <= x with i coprime to p.  The inner
    prefix sums are accumulated once over the whole index range (am grows by
    m per step), giving O(n*m) work instead of O(n**2 * m).
    """
    if m < 1 or m % p == 0:
        raise InvalidSpec(f"m must be positive and coprime to {p}, got {m}")
    _power_of(modulus, p)
    if n < 2:
        return ResidueClass(0, modulus)
    M = modulus
    L = (n - 1) * m
    _sum_guard(L, M)
    inv = np.asarray(inverse_table(M), dtype=np.int64)
    inv_idx = inv[np.arange(L, dtype=np.int64) % M]
    prefix = np.cumsum(inv_idx)
    a = np.arange(1, n, dtype=np.int64)
    a = a[a % p != 0]
    inner = prefix[a * m - 1] % M
    inv_a = inv[a % M]
    terms = inv_a * inv_a % M * inner % M
    return ResidueClass(int(terms.sum() % M), M)


def t_sum(n: int, p: int, m: int, modulus: int) -> ResidueClass:
    """T(n;p): as s_sum but the inner index runs over i = am (mod p), i < am.

    Maintains one prefix accumulator per residue class mod p so the moving
    congruence condition still costs O(n*m) in total.
    """
    if m < 1 or m % p == 0:
        raise InvalidSpec(f"m must be positive and coprime to {p}, got {m}")
    _power_of(modulus, p)
    if n < 2:
        return ResidueClass(0, modulus)
    M = modulus
    L = (n - 1) * m
    _sum_guard(L, M)
    inv = np.asarray(inverse_table(M), dtype=np.int64)
    inv_idx = inv[np.arange(L, dtype=np.int64) % M]
    by_class = np.empty_like(inv_idx)
    for r in range(p):
        by_class[r::p] = np.cumsum(inv_idx[r::p])
    a = np.arange(1, n, dtype=np.int64)
    a = a[a % p != 0]
    idx = np.maximum(a * m - p, 0)  # largest progression member below am; 0 slot is empty
    inner = by_class[idx] % M
    inv_a = inv[a % M]
    terms = inv_a * inv_a % M * inner % M
    return ResidueClass(int(terms.sum() % M), M)


def inverse_power_sum(l: int, s: int, p: int, modulus: int) -> ResidueClass:
    """Sum of 1/k**s over k < p**l with k coprime to p, mod a power of p.

    A modulus of at least p**(2l) witnesses every divisibility case of the
    four-way classification by the parity of s.
    """
    if l < 1 or s < 1:
        raise InvalidSpec(f"need l >= 1 and s >= 1, got l={l}, s={s}")
    _power_of(modulus, p)
    M = modulus
    inv = inverse_table(M)
    acc = 0
    for k in range(1, p**l):
        if k % p:
            acc += pow(inv[k % M], s, M)
    return ResidueClass(acc % M, M)


def floor_weighted_sum(p: int, m: int, k: int) -> ResidueClass:
    """Sum over a = 1..p-1 of floor(a*m/p) / a**k, mod p."""
    if m < 1 or m % p == 0:
        raise InvalidSpec(f"m must be positive and coprime to {p}, got {m}")
    if k < 0:
        raise InvalidSpec(f"k must be >= 0, got {k}")
    inv = inverse_table(p)
    acc = 0
    for a in range(1, p):
        acc += pow(inv[a], k, p) * (a * m // p)
    return ResidueClass(acc % p, p)
