"""Congruence checks over parameter grids.

Each check instantiates one congruence family: the left side is a harmonic
sum computed by the `harmonic` module, the right side a Bernoulli-number
expression assembled by clearing denominators into modular inverses (never
floating point).  Denominator coprimality is asserted at every reduction.
Checks are independent work items; `run_suite` may fan them out over worker
processes and merges results in a deterministic order.
"""

from __future__ import annotations

import logging
import multiprocessing
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Callable, Iterable, NamedTuple

from ._version import __version__
from .bernoulli import (
    bernoulli_exact,
    bernoulli_mod_p,
    bernoulli_mod_pe,
)
from .errors import CongruenceLabError
from .harmonic import (
    TripleSumSpec,
    floor_weighted_sum,
    inverse_power_sum,
    multi_harmonic_sum,
    restricted_triple_sum,
    s_sum,
    t_sum,
    z_mod,
    z_mod_fast,
)
from .modmath import PrimePowerModulus, ResidueClass, crt_combine, factorize
from .primepairs import sieve_primes

log = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
GUARDED = "guarded"
ERROR = "error"

TRIPLE_SUM_BUDGET = 4000
CONJECTURE_BUDGET = 2000
COMPOSITION_BUDGET = 10**8


class BudgetExceeded(CongruenceLabError):
    """Instance parameters beyond the configured enumeration budget."""


@dataclass(frozen=True)
class CheckResult:
    """One verified congruence instance."""

    check_id: str
    params: dict
    lhs: ResidueClass
    rhs: ResidueClass
    status: str
    elapsed_ms: float = 0.0
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def sort_key(self):
        return (self.check_id, tuple(sorted(self.params.items())))


def _result(check_id: str, params: dict, lhs: ResidueClass, rhs: ResidueClass) -> CheckResult:
    status = PASS if lhs.value == rhs.value else FAIL
    return CheckResult(check_id, params, lhs, rhs, status)


def _rational_mod(x, modulus: int) -> int:
    """Reduce an exact rational mod modulus; the denominator must be invertible."""
    fr = Fraction(x)
    if gcd(fr.denominator, modulus) != 1:
        raise ArithmeticError(f"denominator {fr.denominator} not invertible mod {modulus}")
    return fr.numerator * pow(fr.denominator, -1, modulus) % modulus


# Z(n) mod n is shared by many checks on the same n; cache it per process.
_z_cache: dict[int, int] = {}


def _z_full(n: int) -> int:
    v = _z_cache.get(n)
    if v is None:
        v = z_mod_fast(n, n).value
        _z_cache[n] = v
    return v


def _z_res(n: int, modulus: int) -> int:
    if n % modulus == 0:
        return _z_full(n) % modulus
    return z_mod_fast(n, modulus).value


# ---------------------------------------------------------------------------
# individual checks


def check_prime_power(p: int, r: int, budget: int = TRIPLE_SUM_BUDGET) -> CheckResult:
    """Z(p**r) = -2 p**(r-1) B_{p-3} (mod p**r)."""
    n = p**r
    if n > budget:
        raise BudgetExceeded(f"p**r = {n} exceeds budget {budget}")
    lhs = ResidueClass(_z_res(n, n), n)
    w = -2 * bernoulli_mod_p(p - 3, p).value % p
    rhs = ResidueClass(p ** (r - 1) * w % n, n)
    return _result("C-EQ1" if r == 1 else "C-WC", {"p": p, "r": r}, lhs, rhs)


def check_theorem12(p: int, q: int, a: int, b: int, budget: int = TRIPLE_SUM_BUDGET) -> CheckResult:
    """Z(p**a q**b) = 2 (2-q) (1 - q**-3) p**(a-1) q**(b-1) B_{p-3} (mod p**a)."""
    n = p**a * q**b
    if n > budget:
        raise BudgetExceeded(f"p**a * q**b = {n} exceeds budget {budget}")
    M = p**a
    lhs = ResidueClass(_z_res(n, M), M)
    w = _rational_mod(2 * (2 - q) * (1 - Fraction(1, q**3)) * q ** (b - 1), p)
    w = w * bernoulli_mod_p(p - 3, p).value % p
    rhs = ResidueClass(p ** (a - 1) * w % M, M)
    check_id = "C-T1" if a == 1 and b == 1 else "C-T2"
    return _result(check_id, {"p": p, "q": q, "alpha": a, "beta": b}, lhs, rhs)


class Theorem3Condition(NamedTuple):
    paper_condition: bool
    residue_condition: bool


def theorem3_condition(p: int, q: int) -> Theorem3Condition:
    """The zero criterion in both of its forms.

    paper_condition: p = q**2+q+1, or q = p**2+p+1, or p | q**2+q+1 and
    q | p**2+p+1.  residue_condition: (q = 2 or q**3 = 1 mod p) and
    (p = 2 or p**3 = 1 mod q), which is when both theorem-form right sides
    vanish (given nonzero B factors).
    """
    paper = (
        p == q * q + q + 1
        or q == p * p + p + 1
        or ((q * q + q + 1) % p == 0 and (p * p + p + 1) % q == 0)
    )
    residue = (q % p == 2 % p or pow(q, 3, p) == 1 % p) and (
        p % q == 2 % q or pow(p, 3, q) == 1 % q
    )
    return Theorem3Condition(paper, residue)


def check_theorem3(p: int, q: int, a: int, b: int, budget: int = TRIPLE_SUM_BUDGET) -> CheckResult:
    """Z(p**a q**b) = 0 (mod p**a q**b) exactly when the zero criterion holds.

    The emitted status records the three-way biconditional: zero residue,
    paper-form condition, residue-form condition must all agree.  Instances
    where B_{p-3} or B_{q-3} vanishes mod their prime cannot support the
    "only if" direction and are marked guarded instead of asserted.
    """
    n = p**a * q**b
    if n > budget:
        raise BudgetExceeded(f"p**a * q**b = {n} exceeds budget {budget}")
    cond = theorem3_condition(p, q)
    lhs = ResidueClass(_z_res(n, n), n)
    rhs = ResidueClass(0, n)
    zero = lhs.value == 0
    params = {
        "p": p,
        "q": q,
        "alpha": a,
        "beta": b,
        "paper": int(cond.paper_condition),
        "residue": int(cond.residue_condition),
        "zero": int(zero),
    }
    guard = bernoulli_mod_p(p - 3, p).value == 0 or bernoulli_mod_p(q - 3, q).value == 0
    if guard:
        status = GUARDED
    else:
        ok = zero == cond.paper_condition and cond.paper_condition == cond.residue_condition
        status = PASS if ok else FAIL
    return CheckResult("C-T3", params, lhs, rhs, status)


def check_conjecture(n: int, budget: int = CONJECTURE_BUDGET) -> list[CheckResult]:
    """For each odd p with p**a || n: Z(n) against the product-form right side.

    The right side multiplies (1 - 2/q)(1 - q**-3) over the other primes q of
    n (including 2), then -2n/p and B_{p-3}, reduced mod p**a.  For even n
    the q = 2 factor vanishes and Z(n) = 0 by parity, so both sides are zero.
    """
    if n > budget:
        raise BudgetExceeded(f"n = {n} exceeds budget {budget}")
    if n < 3:
        return []
    fact = factorize(n)
    out = []
    for p, a in fact.factors:
        if p == 2:
            continue
        M = p**a
        lhs = ResidueClass(_z_res(n, M), M)
        prod = 1
        for q in fact.primes:
            if q != p:
                prod = prod * _rational_mod((1 - Fraction(2, q)) * (1 - Fraction(1, q**3)), p) % p
        w = -2 * (n // M) % p * prod % p * bernoulli_mod_p(p - 3, p).value % p
        rhs = ResidueClass(p ** (a - 1) * w % M, M)
        out.append(_result("C-CONJ", {"n": n, "p": p, "alpha": a}, lhs, rhs))
    return out


def check_remark1(p: int, q: int, budget: int = TRIPLE_SUM_BUDGET) -> CheckResult:
    """Z(pq) mod pq against the symmetric phi-indexed form, assembled by CRT.

    With phi = (p-1)(q-1), both mod-p and mod-q sides equal
    -6 (1 + 3/(phi-2)) (1 + 1/(phi-1)**3) B_{phi-2}; B_{phi-2} enters through
    the Kummer index reduction of B_k/k, so the assembly stays valid even
    when phi-2 is divisible by p or q.  Requires p, q > 3.
    """
    if min(p, q) <= 3:
        raise ValueError("Kummer index reduction needs p, q > 3")
    n = p * q
    if n > budget:
        raise BudgetExceeded(f"pq = {n} exceeds budget {budget}")
    phi = (p - 1) * (q - 1)
    parts = []
    for P in (p, q):
        k0 = 2 + (phi - 4) % (P - 1)
        ratio = bernoulli_mod_p(k0, P).value * pow(k0, -1, P) % P  # B_{phi-2}/(phi-2) mod P
        t1 = (phi + 1) % P
        t2 = (1 + pow(pow(phi - 1, -1, P), 3, P)) % P
        parts.append(ResidueClass(-6 * t1 * t2 * ratio % P, P))
    rhs = crt_combine(parts)
    lhs = ResidueClass(_z_full(n), n)
    return _result("C-R1", {"p": p, "q": q}, lhs, rhs)


def check_xia_cai(p: int) -> CheckResult:
    """Z(p) = 12 B_{p-3}/(p-3) - 6 B_{2p-4}/(2p-4) (mod p**2), for 7 <= p <= 31."""
    if not 7 <= p <= 31:
        raise BudgetExceeded(f"mod p**2 check limited to 7 <= p <= 31, got {p}")
    M = p * p
    lhs = z_mod(p, M)
    mm = PrimePowerModulus(p, 2)
    u1 = bernoulli_mod_pe(p - 3, mm).residue().value
    u2 = bernoulli_mod_pe(2 * p - 4, mm).residue().value
    rhs_val = (12 * u1 * pow(p - 3, -1, M) - 6 * u2 * pow(2 * p - 4, -1, M)) % M
    return _result("C-XC", {"p": p}, lhs, ResidueClass(rhs_val, M))


def check_multi(p: int, t: int, r: int, check_id: str | None = None) -> CheckResult:
    """The t-part composition sum over i_1 + ... + i_t = p**r, parts coprime to p.

    r = 1 (parts summing to p, t <= p-2):
        odd t:   -(t-1)! B_{p-t} (mod p)
        even t:  -t (t!) / (2(t+1)) p B_{p-t-1} (mod p**2)
    r >= 2 (t in {2, 4}, r >= t/2, p > t):
        -t!/(t+1) p**r B_{p-t-1} (mod p**(r+1))
    """
    N = p**r
    if N ** (t - 1) > COMPOSITION_BUDGET:
        raise BudgetExceeded(f"{N}**{t - 1} compositions exceed budget")
    if r == 1:
        if p <= 3 or not 2 <= t <= p - 2:
            raise ValueError(f"r = 1 form needs p > 3 and 2 <= t <= p-2, got p={p}, t={t}")
        if t % 2:
            M = p
            rhs_val = _rational_mod(-factorial(t - 1) * bernoulli_exact(p - t), M)
        else:
            M = p * p
            rhs_val = _rational_mod(
                Fraction(-t * factorial(t), 2 * (t + 1)) * p * bernoulli_exact(p - t - 1), M
            )
    else:
        if t not in (2, 4) or r < t // 2 or p <= t:
            raise ValueError(f"r >= 2 form needs t in (2, 4), r >= t/2, p > t, got {p}, {t}, {r}")
        M = p ** (r + 1)
        rhs_val = _rational_mod(
            Fraction(-factorial(t), t + 1) * p**r * bernoulli_exact(p - t - 1), M
        )
    lhs = multi_harmonic_sum(TripleSumSpec(N, t, p, M))
    if check_id is None:
        check_id = "C-ZC" if r == 1 else "C-ZH"
    return _result(check_id, {"p": p, "t": t, "r": r}, lhs, ResidueClass(rhs_val, M))


# --- lemma checks ---


def check_lemma1(p: int, r: int, m: int) -> CheckResult:
    """Sum over i+j+k = m p**r with parts coprime to p equals m Z(p**r) (mod p**r)."""
    M = p**r
    lhs = restricted_triple_sum(m * M, p, M)
    rhs = ResidueClass(m * _z_res(M, M) % M, M)
    return _result("C-L1", {"p": p, "r": r, "m": m}, lhs, rhs)


def _lemma2_power(p: int, l: int, s: int) -> int:
    if s % 2:
        if (s + 1) % (p - 1) == 0 and s % p != 0:
            return 2 * l - 1
        return 2 * l
    if s % (p - 1) == 0:
        return l - 1
    return l


def check_lemma2(p: int, l: int, s: int) -> CheckResult:
    """The inverse-power sum over k < p**l is divisible by the case-selected power of p."""
    power = _lemma2_power(p, l, s)
    if power < 1:
        raise ValueError(f"vacuous divisibility case for p={p}, l={l}, s={s}")
    full = inverse_power_sum(l, s, p, p ** (2 * l))
    M = p**power
    lhs = ResidueClass(full.value % M, M)
    return _result("C-L2", {"p": p, "l": l, "s": s}, lhs, ResidueClass(0, M))


def check_lemma3(p: int, m: int) -> CheckResult:
    """S(p;p) = m**2 B_{p-3} (mod p)."""
    lhs = s_sum(p, p, m, p)
    rhs = ResidueClass(m * m * bernoulli_mod_p(p - 3, p).value % p, p)
    return _result("C-L3", {"p": p, "m": m}, lhs, rhs)


def check_lemma4(p: int, m: int, alpha: int) -> CheckResult:
    """S(p**a;p) = p**(a-1) m**2 B_{p-3} (mod p**a), a >= 2."""
    M = p**alpha
    lhs = s_sum(M, p, m, M)
    w = m * m * bernoulli_mod_p(p - 3, p).value % p
    rhs = ResidueClass(p ** (alpha - 1) * w % M, M)
    return _result("C-L4", {"p": p, "m": m, "alpha": alpha}, lhs, rhs)


def check_lemma5(p: int, q: int, m: int, alpha: int, beta: int) -> CheckResult:
    """S(p**a q**b;p) = q**b p**(a-1) m**2 B_{p-3} (mod p**a), a >= 2."""
    M = p**alpha
    lhs = s_sum(M * q**beta, p, m, M)
    w = q**beta * m * m * bernoulli_mod_p(p - 3, p).value % p
    rhs = ResidueClass(p ** (alpha - 1) * w % M, M)
    return _result("C-L5", {"p": p, "q": q, "m": m, "alpha": alpha, "beta": beta}, lhs, rhs)


def lemma6_rhs(p: int, m: int, k: int) -> ResidueClass:
    """Reference value for the floor-weighted sum, 1 <= k <= p-2.

    Even k: 0.  Odd k >= 3: (m**k - m**p)/k * B_{p-k} (mod p).  For k = 1
    the index p-1 makes B_{p-1} non-p-integral, so the value is assembled
    from the scaled unit (p * B_{p-1}) mod p and the exact integer
    (m - m**p)/p.
    """
    if not 1 <= k <= p - 2:
        raise ValueError(f"asserted range is 1 <= k <= p-2, got k={k}")
    if k % 2 == 0:
        return ResidueClass(0, p)
    if k == 1:
        scaled = bernoulli_mod_pe(p - 1, PrimePowerModulus(p, 1))
        t = (m - m**p) // p  # exact by Fermat
        return ResidueClass(t * scaled.unit.value % p, p)
    val = (pow(m, k, p) - pow(m, p, p)) * pow(k, -1, p) % p
    return ResidueClass(val * bernoulli_mod_p(p - k, p).value % p, p)


def check_lemma6(p: int, m: int, k: int) -> CheckResult:
    """Floor-weighted sum against its closed form, asserted for 1 <= k <= p-2 only."""
    lhs = floor_weighted_sum(p, m, k)
    rhs = lemma6_rhs(p, m, k)
    return _result("C-L6", {"p": p, "m": m, "k": k}, lhs, rhs)


def lemma6_k0_report(p: int, m: int) -> dict:
    """The k = 0 case is reported, not asserted: the stated value -(m+1)/2
    disagrees with direct computation, which matches (1-m)/2 instead."""
    computed = floor_weighted_sum(p, m, 0).value
    stated = _rational_mod(Fraction(-(m + 1), 2), p)
    alternative = _rational_mod(Fraction(1 - m, 2), p)
    info = {"p": p, "m": m, "computed": computed, "stated": stated, "alternative": alternative}
    log.info(
        "floor sum k=0 p=%d m=%d: computed %d, stated form gives %d, (1-m)/2 gives %d",
        p, m, computed, stated, alternative,
    )
    return info


def _t_factor(m: int) -> Fraction:
    # (m**3 - m) / (3m); reduces to an integer whenever 3 does not divide m
    return Fraction(m**3 - m, 3 * m)


def check_lemma7(p: int, m: int, alpha: int) -> CheckResult:
    """T(p**a;p) = (m**3-m)/(3m) p**(a-1) B_{p-3} (mod p**a), a >= 2."""
    M = p**alpha
    lhs = t_sum(M, p, m, M)
    w = _rational_mod(_t_factor(m), p) * bernoulli_mod_p(p - 3, p).value % p
    rhs = ResidueClass(p ** (alpha - 1) * w % M, M)
    return _result("C-L7", {"p": p, "m": m, "alpha": alpha}, lhs, rhs)


def check_lemma8(p: int, q: int, m: int, alpha: int, beta: int) -> CheckResult:
    """T(p**a q**b;p) = (m**3-m)/(3m) p**(a-1) q**b B_{p-3} (mod p**a), a >= 2."""
    M = p**alpha
    lhs = t_sum(M * q**beta, p, m, M)
    w = _rational_mod(_t_factor(m), p) * q**beta % p * bernoulli_mod_p(p - 3, p).value % p
    rhs = ResidueClass(p ** (alpha - 1) * w % M, M)
    return _result("C-L8", {"p": p, "q": q, "m": m, "alpha": alpha, "beta": beta}, lhs, rhs)


def check_eq3(p: int, m: int) -> CheckResult:
    """T(p;p) = (1/m) * (floor-weighted sum at k = 3) (mod p)."""
    lhs = t_sum(p, p, m, p)
    rhs_val = pow(m, -1, p) * floor_weighted_sum(p, m, 3).value % p
    return _result("C-EQ3", {"p": p, "m": m}, lhs, ResidueClass(rhs_val, p))


def check_lemmas(p: int, q: int | None = None) -> list[CheckResult]:
    """All lemma instances for one prime over the default grids (q optional)."""
    out: list[CheckResult] = []
    ms = _lemma_ms(p)
    for r in (1, 2, 3):
        out.extend(check_lemma1(p, r, m) for m in range(1, 11))
    for l in (1, 2):
        for s in range(1, 11):
            if _lemma2_power(p, l, s) >= 1:
                out.append(check_lemma2(p, l, s))
    out.extend(check_lemma3(p, m) for m in ms)
    for alpha in (2, 3):
        out.extend(check_lemma4(p, m, alpha) for m in ms)
        out.extend(check_lemma7(p, m, alpha) for m in ms)
    for m in ms:
        for k in range(1, p - 1):
            out.append(check_lemma6(p, m, k))
        lemma6_k0_report(p, m)
        out.append(check_eq3(p, m))
    if q is not None:
        for alpha in (2, 3):
            for beta in (1, 2):
                out.extend(check_lemma5(p, q, m, alpha, beta) for m in ms)
                out.extend(check_lemma8(p, q, m, alpha, beta) for m in ms)
    return out


# ---------------------------------------------------------------------------
# sweep configuration, grids, and the runner

_LEMMA_PRIMES = (3, 5, 7, 11, 13)
_LEMMA_QS = (3, 5, 7)

CHECK_IDS = (
    "C-EQ1",
    "C-WC",
    "C-T1",
    "C-T2",
    "C-T3",
    "C-CONJ",
    "C-R1",
    "C-XC",
    "C-ZC",
    "C-ZH",
    "C-L1",
    "C-L2",
    "C-L3",
    "C-L4",
    "C-L5",
    "C-L6",
    "C-L7",
    "C-L8",
    "C-EQ3",
)

_DEFAULT_CAPS = {
    "C-EQ1": 200,
    "C-WC": 4000,
    "C-T1": 3000,
    "C-T2": 4000,
    "C-T3": 3000,
    "C-CONJ": 2000,
    "C-R1": 3000,
    "C-XC": 31,
}
_BOUNDED = frozenset(_DEFAULT_CAPS)


@dataclass(frozen=True)
class SweepConfig:
    """Which checks to run, their bounds, and the worker count."""

    checks: tuple[str, ...] = CHECK_IDS
    bound: int | None = None
    caps: dict = field(default_factory=dict)
    jobs: int = 1

    def __post_init__(self):
        unknown = [c for c in tuple(self.checks) + tuple(self.caps) if c not in CHECK_IDS]
        if unknown:
            raise ValueError(f"unknown check ids: {', '.join(unknown)}")
        if self.bound is not None and self.bound < 3:
            raise ValueError(f"bound must be >= 3, got {self.bound}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")

    def cap_for(self, check_id: str) -> int:
        if check_id in self.caps:
            return self.caps[check_id]
        if self.bound is not None and check_id in _BOUNDED:
            return self.bound
        return _DEFAULT_CAPS.get(check_id, 0)


def _odd_primes(limit: int) -> list[int]:
    return [p for p in sieve_primes(limit + 1) if p > 2]


def _lemma_ms(p: int) -> tuple[int, ...]:
    return tuple(m for m in range(1, 11) if m % p)


def _grid_eq1(cap: int) -> list[tuple]:
    return [(p, 1) for p in _odd_primes(cap)]


def _grid_wc(cap: int) -> list[tuple]:
    out = []
    for p in _odd_primes(int(cap**0.5) + 1):
        r = 2
        while p**r <= cap:
            out.append((p, r))
            r += 1
    return sorted(out)


def _grid_t12(cap: int, min_exp: int) -> list[tuple]:
    """Ordered (p, q, a, b) with p**a q**b <= cap and a+b >= min_exp."""
    out = []
    primes = _odd_primes(cap // 3)
    for p in primes:
        a = 1
        while p**a * 3 <= cap:
            for q in _odd_primes(cap // p**a):
                if q == p:
                    continue
                b = 1
                while p**a * q**b <= cap:
                    if a + b >= min_exp:
                        out.append((p, q, a, b))
                    b += 1
            a += 1
    return sorted(out)


def _grid_t1(cap: int) -> list[tuple]:
    return [(p, q, 1, 1) for (p, q, a, b) in _grid_t12(cap, 2) if a == b == 1]


def _grid_t2(cap: int) -> list[tuple]:
    return _grid_t12(cap, 3)


_T3_HIGHER_EXPONENTS = (
    (3, 13, 2, 1),
    (3, 13, 1, 2),
    (3, 13, 3, 1),
    (3, 13, 2, 2),
    (5, 31, 2, 1),
    (5, 31, 3, 1),
    (3, 5, 2, 1),
    (3, 5, 1, 2),
)


def _grid_t3(cap: int) -> list[tuple]:
    out = []
    for p in _odd_primes(cap // 3):
        for q in _odd_primes(cap // p):
            if q > p:
                out.append((p, q, 1, 1))
    out.extend(item for item in _T3_HIGHER_EXPONENTS if item[0] * item[1] <= cap)
    return sorted(out)


def _grid_conj(cap: int) -> list[tuple]:
    out = []
    for n in range(3, cap + 1):
        if n % 2 == 0:
            out.append((n,))
            continue
        fact = factorize(n)
        if len([p for p in fact.primes if p != 2]) >= 2:
            out.append((n,))
    return out


def _grid_r1(cap: int) -> list[tuple]:
    out = []
    for p in _odd_primes(cap // 5):
        if p <= 3:
            continue
        for q in _odd_primes(cap // p):
            if q > p and q > 3:
                out.append((p, q))
    return sorted(out)


def _grid_xc(cap: int) -> list[tuple]:
    return [(p,) for p in (7, 11, 13, 17, 19, 23, 29, 31) if p <= cap]


def _grid_zc(cap: int) -> list[tuple]:
    return [(p, t, 1) for p in (5, 7, 11, 13) for t in range(2, min(5, p - 2) + 1)]


def _grid_zh(cap: int) -> list[tuple]:
    items = [(p, 2, r) for p in (5, 7, 11) for r in (1, 2, 3)]
    items += [(p, 4, 2) for p in (5, 7)]
    return sorted(items)


def _grid_l1(cap: int) -> list[tuple]:
    # m runs over 1..10 including multiples of p: the scaled-total congruence
    # holds in both cases and both are recorded.
    return [(p, r, m) for p in _LEMMA_PRIMES for r in (1, 2, 3) for m in range(1, 11)]


def _grid_l2(cap: int) -> list[tuple]:
    return [
        (p, l, s)
        for p in _LEMMA_PRIMES
        for l in (1, 2)
        for s in range(1, 11)
        if _lemma2_power(p, l, s) >= 1
    ]


def _grid_l3(cap: int) -> list[tuple]:
    return [(p, m) for p in _LEMMA_PRIMES for m in _lemma_ms(p)]


def _grid_l47(cap: int) -> list[tuple]:
    return [(p, m, a) for p in _LEMMA_PRIMES for m in _lemma_ms(p) for a in (2, 3)]


def _grid_l58(cap: int) -> list[tuple]:
    return [
        (p, q, m, a, b)
        for p in _LEMMA_PRIMES
        for q in _LEMMA_QS
        if q != p
        for m in _lemma_ms(p)
        for a in (2, 3)
        for b in (1, 2)
    ]


def _grid_l6(cap: int) -> list[tuple]:
    # k = 0 items are logged informationally by the runner, never asserted
    return [(p, m, k) for p in _LEMMA_PRIMES for m in _lemma_ms(p) for k in range(0, p - 1)]


def _run_l6(p: int, m: int, k: int):
    if k == 0:
        lemma6_k0_report(p, m)
        return []
    return check_lemma6(p, m, k)


def _grid_eq3(cap: int) -> list[tuple]:
    return [(p, m) for p in _LEMMA_PRIMES for m in _lemma_ms(p)]


def _run_eq1(p, r):
    return check_prime_power(p, r, budget=max(TRIPLE_SUM_BUDGET, p**r))


def _run_t12(p, q, a, b):
    return check_theorem12(p, q, a, b, budget=max(TRIPLE_SUM_BUDGET, p**a * q**b))


def _run_t3(p, q, a, b):
    return check_theorem3(p, q, a, b, budget=max(TRIPLE_SUM_BUDGET, p**a * q**b))


def _run_conj(n):
    return check_conjecture(n, budget=max(CONJECTURE_BUDGET, n))


def _run_r1(p, q):
    return check_remark1(p, q, budget=max(TRIPLE_SUM_BUDGET, p * q))


_PARAM_NAMES = {
    "C-EQ1": ("p", "r"),
    "C-WC": ("p", "r"),
    "C-T1": ("p", "q", "alpha", "beta"),
    "C-T2": ("p", "q", "alpha", "beta"),
    "C-T3": ("p", "q", "alpha", "beta"),
    "C-CONJ": ("n",),
    "C-R1": ("p", "q"),
    "C-XC": ("p",),
    "C-ZC": ("p", "t", "r"),
    "C-ZH": ("p", "t", "r"),
    "C-L1": ("p", "r", "m"),
    "C-L2": ("p", "l", "s"),
    "C-L3": ("p", "m"),
    "C-L4": ("p", "m", "alpha"),
    "C-L5": ("p", "q", "m", "alpha", "beta"),
    "C-L6": ("p", "m", "k"),
    "C-L7": ("p", "m", "alpha"),
    "C-L8": ("p", "q", "m", "alpha", "beta"),
    "C-EQ3": ("p", "m"),
}

_REGISTRY: dict[str, tuple[Callable, Callable]] = {
    "C-EQ1": (_grid_eq1, _run_eq1),
    "C-WC": (_grid_wc, _run_eq1),
    "C-T1": (_grid_t1, _run_t12),
    "C-T2": (_grid_t2, _run_t12),
    "C-T3": (_grid_t3, _run_t3),
    "C-CONJ": (_grid_conj, _run_conj),
    "C-R1": (_grid_r1, _run_r1),
    "C-XC": (_grid_xc, check_xia_cai),
    "C-ZC": (_grid_zc, lambda p, t, r: check_multi(p, t, r, check_id="C-ZC")),
    "C-ZH": (_grid_zh, lambda p, t, r: check_multi(p, t, r, check_id="C-ZH")),
    "C-L1": (_grid_l1, check_lemma1),
    "C-L2": (_grid_l2, check_lemma2),
    "C-L3": (_grid_l3, check_lemma3),
    "C-L4": (_grid_l47, check_lemma4),
    "C-L5": (_grid_l58, check_lemma5),
    "C-L6": (_grid_l6, _run_l6),
    "C-L7": (_grid_l47, check_lemma7),
    "C-L8": (_grid_l58, check_lemma8),
    "C-EQ3": (_grid_eq3, check_eq3),
}


def _run_item(item: tuple[str, tuple]) -> list[CheckResult]:
    check_id, args = item
    runner = _REGISTRY[check_id][1]
    start = time.perf_counter()
    try:
        got = runner(*args)
    except Exception as exc:  # a bad instance must not abort the suite
        elapsed = (time.perf_counter() - start) * 1000.0
        params = dict(zip(_PARAM_NAMES[check_id], args))
        zero = ResidueClass(0, 2)
        return [CheckResult(check_id, params, zero, zero, ERROR, elapsed, repr(exc))]
    elapsed = (time.perf_counter() - start) * 1000.0
    results = got if isinstance(got, list) else [got]
    if results:
        share = elapsed / len(results)
        results = [
            CheckResult(r.check_id, r.params, r.lhs, r.rhs, r.status, share, r.error)
            for r in results
        ]
    return results


@dataclass
class Report:
    """Ordered results plus tallies; the CLI serializes this losslessly."""

    suite: str
    version: str
    config: dict
    results: list[CheckResult]
    summary: dict[str, int]


def summarize(results: Iterable[CheckResult]) -> dict[str, int]:
    counts = {PASS: 0, FAIL: 0, GUARDED: 0, ERROR: 0}
    for r in results:
        counts[r.status] += 1
    return counts


def _config_echo(cfg: SweepConfig) -> dict:
    return {
        "checks": list(cfg.checks),
        "bound": cfg.bound,
        "caps": dict(cfg.caps),
        "jobs": cfg.jobs,
    }


def run_suite(cfg: SweepConfig) -> Report:
    """Run the selected checks over their grids.

    Results are sorted by (check id, parameters) so the report does not
    depend on the worker count; any instance-level error becomes an ERROR
    result instead of aborting the sweep.
    """
    items: list[tuple[str, tuple]] = []
    for check_id in sorted(set(cfg.checks)):
        grid = _REGISTRY[check_id][0]
        for args in grid(cfg.cap_for(check_id)):
            items.append((check_id, args))
    if cfg.jobs > 1 and len(items) > 1:
        chunk = max(1, len(items) // (cfg.jobs * 8))
        with multiprocessing.Pool(cfg.jobs) as pool:
            nested = pool.map(_run_item, items, chunksize=chunk)
    else:
        nested = [_run_item(item) for item in items]
    results = [r for sub in nested for r in sub]
    results.sort(key=CheckResult.sort_key)
    return Report("congruence-lab", __version__, _config_echo(cfg), results, summarize(results))
