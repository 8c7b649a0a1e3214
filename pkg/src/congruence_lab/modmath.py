"""Modular arithmetic over odd prime powers and composite moduli.

Residues are always canonicalized to the least nonnegative representative.
Moduli are capped below 2**63: the accelerated sweep paths rely on 64-bit
intermediate products, so anything larger is rejected up front instead of
being computed slowly or wrongly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

from .errors import CongruenceLabError

MAX_MODULUS = 1 << 63


class NotInvertible(CongruenceLabError):
    """Raised when an inverse is requested for a value sharing a factor with the modulus."""

    def __init__(self, a: int, modulus: int, g: int):
        super().__init__(f"{a} is not invertible modulo {modulus} (gcd {g})")
        self.a = a
        self.modulus = modulus
        self.gcd = g


class NonCoprimeModuli(CongruenceLabError):
    """Raised when CRT inputs share a common factor."""


class ModulusTooLarge(CongruenceLabError):
    """Raised for moduli at or above 2**63 (outside the desk-scale contract)."""


def _check_modulus(m: int) -> None:
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if m >= MAX_MODULUS:
        raise ModulusTooLarge(f"modulus {m} >= 2**63")


def _is_small_prime(n: int) -> bool:
    # Trial division; moduli in this package are desk scale.
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    top = isqrt(n)
    while f <= top:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class ResidueClass:
    """A canonical residue paired with its modulus.

    Arithmetic between two ResidueClass values requires equal moduli.
    """

    value: int
    modulus: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def _match(self, other: "ResidueClass") -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} != {other.modulus}")

    def __add__(self, other: "ResidueClass") -> "ResidueClass":
        self._match(other)
        return ResidueClass((self.value + other.value) % self.modulus, self.modulus)

    def __sub__(self, other: "ResidueClass") -> "ResidueClass":
        self._match(other)
        return ResidueClass((self.value - other.value) % self.modulus, self.modulus)

    def __mul__(self, other: "ResidueClass") -> "ResidueClass":
        self._match(other)
        return ResidueClass(self.value * other.value % self.modulus, self.modulus)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class PrimePowerModulus:
    """An odd prime p with exponent e and the precomputed modulus p**e."""

    p: int
    e: int
    modulus: int = field(init=False)

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or not _is_small_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.e < 1:
            raise ValueError(f"exponent must be >= 1, got {self.e}")
        m = self.p**self.e
        _check_modulus(m)
        object.__setattr__(self, "modulus", m)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as an ascending tuple of (prime, exponent) pairs."""

    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def n(self) -> int:
        out = 1
        for p, a in self.factors:
            out *= p**a
        return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def mod_inv(a: int, m: int) -> ResidueClass:
    """Inverse of a modulo m via extended Euclid.

    Raises NotInvertible (carrying the gcd) when gcd(a, m) != 1.  Extended
    Euclid rather than Fermat powering so composite moduli work uniformly.
    """
    _check_modulus(m)
    g, x, _ = _xgcd(a % m, m)
    if g != 1:
        raise NotInvertible(a, m, g)
    return ResidueClass(x % m, m)


def mod_pow(b: int, x: int, m: int) -> ResidueClass:
    """b**x mod m by square-and-multiply (built-in three-argument pow)."""
    _check_modulus(m)
    if x < 0:
        raise ValueError(f"exponent must be >= 0, got {x}")
    return ResidueClass(pow(b, x, m), m)


def inverse_table(modulus: int, limit: int | None = None) -> list[int]:
    """Inverses of all a < limit coprime to modulus, by the prefix-product trick.

    Returns a plain list t with t[a] = a**-1 mod modulus, and t[a] = 0 for a
    not invertible (the 0 slot marks absence; 0 is never a true inverse).
    Costs O(limit) multiplications plus a single extended-Euclid inversion.
    This is the raw form used by the sweep inner loops; `batch_inverses`
    wraps it in ResidueClass values.
    """
    _check_modulus(modulus)
    if limit is None:
        limit = modulus
    if limit > modulus:
        raise ValueError(f"limit {limit} exceeds modulus {modulus}")
    primes = factorize(modulus).primes
    invertible = bytearray(b"\x01" * limit)
    if limit:
        invertible[0] = 0
    for p in primes:
        invertible[p::p] = b"\x00" * len(range(p, limit, p))
    table = [0] * limit
    idxs = [a for a in range(1, limit) if invertible[a]]
    if not idxs:
        return table
    prefix = [0] * len(idxs)
    acc = 1
    for t, a in enumerate(idxs):
        acc = acc * a % modulus
        prefix[t] = acc
    run = mod_inv(acc, modulus).value
    for t in range(len(idxs) - 1, 0, -1):
        table[idxs[t]] = run * prefix[t - 1] % modulus
        run = run * idxs[t] % modulus
    table[idxs[0]] = run
    return table


def batch_inverses(m: PrimePowerModulus, limit: int) -> list[ResidueClass | None]:
    """Inverse table modulo m.modulus for all a < limit, None at multiples of p."""
    raw = inverse_table(m.modulus, limit)
    return [ResidueClass(v, m.modulus) if v else None for v in raw]


def crt_combine(parts: list[ResidueClass]) -> ResidueClass:
    """Combine residues with pairwise-coprime moduli into one residue mod the product."""
    if not parts:
        raise ValueError("crt_combine needs at least one residue")
    r, m = parts[0].value, parts[0].modulus
    for part in parts[1:]:
        r2, m2 = part.value, part.modulus
        g = gcd(m, m2)
        if g != 1:
            raise NonCoprimeModuli(f"moduli {m} and {m2} share factor {g}")
        _check_modulus(m * m2)
        # r + m*t = r2 (mod m2)
        t = (r2 - r) * mod_inv(m, m2).value % m2
        r, m = r + m * t, m * m2
    return ResidueClass(r, m)


def factorize(n: int) -> Factorization:
    """Canonical ascending factorization by trial division; factorize(1) is empty.

    Intended for desk-scale n (up to about 10**12).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    factors: list[tuple[int, int]] = []
    for p in (2, 3):
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            factors.append((p, a))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                a = 0
                while n % p == 0:
                    n //= p
                    a += 1
                factors.append((p, a))
        f += 6
    if n > 1:
        factors.append((n, 1))
    return Factorization(tuple(factors))


def totient(n: int) -> int:
    """Euler's totient via the factorization product formula."""
    out = 1
    for p, a in factorize(n).factors:
        out *= (p - 1) * p ** (a - 1)
    return out
