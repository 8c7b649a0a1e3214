"""Bounded searches for the prime pairs tied to the zero cases of the triple
sum: primes p with q = p**2 + p + 1 prime, the quadratic-recurrence integer
sequence whose consecutive terms parameterize the mutual-divisibility pairs,
and the pairs themselves.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from .errors import CongruenceLabError

log = logging.getLogger(__name__)

SIEVE_LIMIT = 10**8

# These witnesses decide primality exactly for every n < 2**64.
_U64_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DEFAULT_ROUNDS = 40
_DEFAULT_SEED = 0x5EED


class LimitExceeded(CongruenceLabError):
    """Search or sieve limit beyond the configured memory budget."""


class IntegralityViolation(CongruenceLabError):
    """The sequence recurrence produced a non-integer step; implementation error."""


@dataclass(frozen=True)
class PrimalityResult:
    prime: bool
    method: str

    def __bool__(self) -> bool:
        return self.prime


@dataclass(frozen=True)
class PairRecord:
    """One verified prime pair.

    kind is "square-form" (q = p**2 + p + 1) or "mutual" (p | q**2 + q + 1
    and q | p**2 + p + 1); the recorded relations can be re-verified from
    the fields alone.
    """

    p: int
    q: int
    kind: str
    primality_method: str

    def reverify(self) -> bool:
        if not (is_prime(self.p).prime and is_prime(self.q).prime):
            return False
        if self.kind == "square-form":
            return self.q == self.p**2 + self.p + 1
        if self.kind == "mutual":
            return (self.q**2 + self.q + 1) % self.p == 0 and (self.p**2 + self.p + 1) % self.q == 0
        return False


@dataclass(frozen=True)
class ChaoSequence:
    """Terms a(1), a(2), ... with a(1) = a(2) = 1 and
    a(n-1) * a(n+1) = 1 + a(n) + a(n)**2 for all interior n."""

    terms: tuple[int, ...]

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.terms, self.terms[1:]))


def sieve_primes(limit: int) -> list[int]:
    """All primes below limit, ascending (plain byte sieve)."""
    if limit > SIEVE_LIMIT:
        raise LimitExceeded(f"sieve limit {limit} exceeds {SIEVE_LIMIT}")
    if limit <= 2:
        return []
    flags = bytearray(b"\x01" * limit)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(range(p * p, limit, p))
    return [i for i in range(2, limit) if flags[i]]


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int, rounds: int = DEFAULT_ROUNDS, seed: int = _DEFAULT_SEED) -> PrimalityResult:
    """Primality with a method tag: deterministic below 2**64, else Miller-Rabin
    with `rounds` random witnesses drawn from a fixed-seed generator."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n < 2:
        return PrimalityResult(False, "deterministic")
    for p in _SMALL_PRIMES:
        if n == p:
            return PrimalityResult(True, "deterministic")
        if n % p == 0:
            return PrimalityResult(False, "deterministic")
    if n < 1 << 64:
        return PrimalityResult(_miller_rabin(n, _U64_WITNESSES), "deterministic")
    rng = random.Random((seed, n))
    bases = [rng.randrange(2, n - 1) for _ in range(rounds)]
    return PrimalityResult(_miller_rabin(n, bases), f"probabilistic({rounds})")


def search_square_form(limit: int) -> list[PairRecord]:
    """All odd primes p < limit with p**2 + p + 1 prime.

    p = 2 is excluded (the congruence results concern odd primes); the pair
    (2, 7) is reported on the log instead of the result list.
    """
    out = []
    for p in sieve_primes(limit):
        if p == 2:
            log.info("square-form search: (2, 7) qualifies but p = 2 is excluded by convention")
            continue
        q = p * p + p + 1
        res = is_prime(q)
        if res.prime:
            out.append(PairRecord(p, q, "square-form", res.method))
    return out


def chao_sequence(count: int) -> ChaoSequence:
    """First `count` terms, generated by the linear step a(n+1) = 5a(n) - a(n-1) - 1.

    The defining quadratic relation a(n-1) * a(n+1) = 1 + a(n) + a(n)**2 is
    asserted at every step as the generation oracle.
    """
    if count < 2:
        raise ValueError(f"count must be >= 2, got {count}")
    terms = [1, 1]
    while len(terms) < count:
        prev, cur = terms[-2], terms[-1]
        nxt = 5 * cur - prev - 1
        rhs = 1 + cur + cur * cur
        if prev * nxt != rhs:
            raise IntegralityViolation(
                f"quadratic relation broken at n = {len(terms)}: {prev} * {nxt} != {rhs}"
            )
        terms.append(nxt)
    return ChaoSequence(tuple(terms))


def mutual_pairs(term_count: int, brute_limit: int) -> list[PairRecord]:
    """Mutual-divisibility prime pairs.

    Takes consecutive sequence terms (a(n), a(n+1)) that are both prime, then
    unions in a brute scan of all prime pairs p < q < brute_limit with
    p | q**2 + q + 1 and q | p**2 + p + 1.  The scan is expected to add
    nothing new; a pair outside the sequence would be a counterexample to the
    completeness claim and is loudly logged.
    """
    if term_count < 2 or brute_limit < 2:
        raise ValueError("term_count and brute_limit must be positive")
    found: dict[tuple[int, int], PairRecord] = {}
    for p, q in chao_sequence(term_count).pairs():
        rp, rq = is_prime(p), is_prime(q)
        if rp.prime and rq.prime:
            method = rp.method if rp.method == rq.method else f"{rp.method}/{rq.method}"
            found[(p, q)] = PairRecord(p, q, "mutual", method)
    chao_keys = set(found)
    primes = sieve_primes(brute_limit)
    for qi, q in enumerate(primes):
        nq = q * q + q + 1
        for p in primes[:qi]:
            if nq % p == 0 and (p * p + p + 1) % q == 0:
                if (p, q) not in found:
                    log.warning("brute scan found mutual pair (%d, %d) outside the sequence", p, q)
                    found[(p, q)] = PairRecord(p, q, "mutual", "deterministic")
    extra = set(found) - chao_keys
    if extra:
        log.warning("mutual pairs outside the sequence: %s", sorted(extra))
    return [found[k] for k in sorted(found)]
