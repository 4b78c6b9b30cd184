"""Shanks-recurrence periods, k-Shanks primes, and monogenicity of S_k(x) and S_k(x^p)."""

from .dedekind import (
    DedekindVerdict,
    MonogenicityCertificate,
    certify_base,
    certify_power,
    dedekind_at,
    index_divisible_at_p_via_ring,
)
from .fq import (
    IrreducibleModP,
    ModPoly,
    RingElem,
    SplitsDistinct,
    TripleRoot,
    classify_shanks_mod_p,
    conjugates,
    eval_shanks_at_ring,
    factor_mod_q,
    poly_gcd,
    ring_pow,
)
from .intpoly import (
    FactoredDisc,
    IntPoly,
    ShanksParams,
    compute_params,
    discriminant_exact,
    factored_disc_power,
    power_compose,
    resultant,
    shanks_poly,
)
from .recurrence import (
    PeriodRecord,
    ShanksTestResult,
    is_k_shanks,
    period_brute,
    period_fast,
    period_prime_square,
)
from .shanks import (
    SearchConfig,
    SearchRecord,
    run_search,
    search_shanks_primes,
    verify_table1,
    verify_theorem_pair,
)

__version__ = "0.1.0"
