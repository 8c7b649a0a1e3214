"""congruence-lab: harmonic triple-sum congruences modulo prime powers.

Computes Z(n) (the sum of 1/(ijk) over i+j+k = n with parts coprime to n)
and its relatives modulo prime powers, Bernoulli numbers in exact and
modular forms, verifies a family of congruences between the two against
brute-force oracles, and searches for the associated prime pairs.
"""

from ._version import __version__
from .bernoulli import (
    EXACT_CAP,
    ExactRational,
    PValued,
    bernoulli_exact,
    bernoulli_mod_p,
    bernoulli_mod_p_kummer,
    bernoulli_mod_pe,
)
from .errors import CongruenceLabError
from .harmonic import (
    InvalidSpec,
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
from .modmath import (
    Factorization,
    NonCoprimeModuli,
    NotInvertible,
    PrimePowerModulus,
    ResidueClass,
    batch_inverses,
    crt_combine,
    factorize,
    inverse_table,
    mod_inv,
    mod_pow,
    totient,
)
from .primepairs import (
    ChaoSequence,
    IntegralityViolation,
    PairRecord,
    chao_sequence,
    is_prime,
    mutual_pairs,
    search_square_form,
    sieve_primes,
)
from .verifier import (
    CheckResult,
    Report,
    SweepConfig,
    check_conjecture,
    check_lemmas,
    check_multi,
    check_prime_power,
    check_remark1,
    check_theorem12,
    check_theorem3,
    check_xia_cai,
    run_suite,
    theorem3_condition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
