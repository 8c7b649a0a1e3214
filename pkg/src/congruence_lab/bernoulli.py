"""Bernoulli numbers in four forms: exact rationals, residues mod p, residues
mod p**e, and Kummer-reduced residues for large even indices.

Two deliberately independent computation routes are kept side by side: the
exact recurrence over Fractions and the same recurrence run entirely in
residues mod p.  They serve as mutual oracles in the test suite.  The
convention B_1 = -1/2 is fixed by the recurrence sum(C(n+1, i) * B_i) = 0.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import CongruenceLabError
from .modmath import PrimePowerModulus, ResidueClass, mod_inv

# Exact numerators grow fast; 64 keeps B_{2p-4} reachable for p <= 31, which
# is all the mod-p**2 checks need.
EXACT_CAP = 64

# ExactRational is the stdlib Fraction: always reduced, denominator positive,
# arbitrary precision.  It satisfies every invariant the package needs.
ExactRational = Fraction


class IndexTooLarge(CongruenceLabError):
    """Requested exact Bernoulli index beyond the configured cap."""


class IndexOutOfRange(CongruenceLabError):
    """Requested residue index outside the valid range for the prime."""


class KummerInapplicable(CongruenceLabError):
    """Kummer reduction requested for an index divisible by p - 1."""


@dataclass(frozen=True)
class PValued:
    """A p-adically scaled value: unit * p**valuation, or exactly zero.

    valuation is -1 exactly when (p-1) divides the Bernoulli index (von
    Staudt-Clausen), in which case unit holds (p * B_k) mod p**e.  A zero
    value is flagged by unit=None.
    """

    p: int
    valuation: int
    unit: ResidueClass | None

    @property
    def is_zero(self) -> bool:
        return self.unit is None

    def residue(self) -> ResidueClass:
        """The represented value as a residue; requires valuation >= 0."""
        if self.unit is None:
            raise ValueError("exact zero has no modulus context here")
        if self.valuation < 0:
            raise ValueError("value is not p-integral; use the scaled unit instead")
        m = self.unit.modulus
        return ResidueClass(self.unit.value * self.p**self.valuation % m, m)


_exact_lock = threading.Lock()
_exact_cache: list[Fraction] = [Fraction(1)]


def bernoulli_exact(k: int, cap: int = EXACT_CAP) -> Fraction:
    """Exact B_k from the defining recurrence, with B_1 = -1/2."""
    if k < 0:
        raise ValueError(f"index must be >= 0, got {k}")
    if cap > EXACT_CAP:
        raise ValueError(f"cap must be <= {EXACT_CAP}, got {cap}")
    if k > cap:
        raise IndexTooLarge(f"B_{k} beyond exact cap {cap}")
    with _exact_lock:
        while len(_exact_cache) <= k:
            n = len(_exact_cache)
            s = sum(Fraction(comb(n + 1, i)) * _exact_cache[i] for i in range(n))
            _exact_cache.append(-s / (n + 1))
        return _exact_cache[k]


# Residue tables per prime: _mod_tables[p][k] = B_k mod p for 0 <= k <= p-3.
_mod_lock = threading.Lock()
_mod_tables: dict[int, np.ndarray] = {}

_MAX_RESIDUE_PRIME = 2_000_000  # keeps p**3 within int64 dot products


def _residue_table(p: int) -> np.ndarray:
    if p > _MAX_RESIDUE_PRIME:
        raise ValueError(f"residue recurrence limited to p <= {_MAX_RESIDUE_PRIME}")
    kmax = p - 3
    B = np.zeros(kmax + 1, dtype=np.int64)
    B[0] = 1
    # row holds C(m, i) mod p for the current m, starting at m = 1.
    row = np.zeros(kmax + 2, dtype=np.int64)
    row[0] = 1
    row[1] = 1
    for n in range(1, kmax + 1):
        # advance row from C(n, .) to C(n+1, .)
        row[1 : n + 1] = (row[1 : n + 1] + row[0:n]) % p
        row[n + 1] = 1
        dot = int(row[:n].dot(B[:n]) % p)
        B[n] = -pow(n + 1, -1, p) * dot % p
    return B


def _table_for(p: int) -> np.ndarray:
    tab = _mod_tables.get(p)
    if tab is None:
        tab = _residue_table(p)
        with _mod_lock:
            _mod_tables.setdefault(p, tab)
    return tab


def bernoulli_mod_p(k: int, p: int) -> ResidueClass:
    """B_k mod p by running the defining recurrence entirely in residues.

    Valid for even k (or 0) with k <= p-3: every denominator the recurrence
    meets is then invertible mod p.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    if k < 0 or k % 2 == 1:
        raise IndexOutOfRange(f"index must be even and >= 0, got {k}")
    if k > p - 3:
        raise IndexOutOfRange(f"index {k} exceeds p-3 = {p - 3} (mod {p})")
    return ResidueClass(int(_table_for(p)[k]), p)


def bernoulli_mod_pe(k: int, m: PrimePowerModulus) -> PValued:
    """Reduce the exact B_k into PValued form modulo m.p**m.e.

    If p does not divide the denominator the result is unit * p**valuation
    with valuation >= 0; if it does (exactly when (p-1) | k), valuation is -1
    and the unit carries (p * B_k) mod p**e.
    """
    b = bernoulli_exact(k)
    p, mod = m.p, m.modulus
    if b == 0:
        return PValued(p, 0, None)
    num, den = b.numerator, b.denominator
    if den % p == 0:
        # von Staudt-Clausen: p divides the denominator exactly once
        unit = num % mod * mod_inv(den // p, mod).value % mod
        return PValued(p, -1, ResidueClass(unit, mod))
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    unit = num % mod * mod_inv(den, mod).value % mod
    return PValued(p, v, ResidueClass(unit, mod))


def bernoulli_mod_p_kummer(k: int, p: int) -> ResidueClass:
    """B_k mod p for large even k via the Kummer congruence.

    B_k / k is congruent mod p to B_k0 / k0 for the unique even k0 in
    [2, p-3] with k = k0 (mod p-1); requires (p-1) not dividing k.
    """
    if k < 2 or k % 2 == 1:
        raise IndexOutOfRange(f"index must be even and >= 2, got {k}")
    if k % (p - 1) == 0:
        raise KummerInapplicable(f"(p-1) divides {k} for p = {p}")
    k0 = 2 + (k - 2) % (p - 1)
    b0 = bernoulli_mod_p(k0, p).value
    return ResidueClass(k % p * pow(k0, -1, p) % p * b0 % p, p)
