"""Dedekind's index criterion and monogenicity certificates for S_k(x) and S_k(x^p)."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Optional

from . import fq
from .errors import DomainError, ExactDivisionFailed, HypothesisViolation, InternalInconsistency
from .fq import ModPoly
from .intpoly import (
    DEFAULT_FACTOR_CEILING,
    IntPoly,
    compute_params,
    is_prime,
    power_compose,
    prime_divisors,
    shanks_poly,
)

log = logging.getLogger(__name__)

FULL_DEDEKIND = "full_dedekind"
RING_CRITERION = "ring_criterion"
BOTH_AGREE = "both_agree"

ASSUMPTION_IRREDUCIBLE = "irreducibility of the polynomial over Q is assumed, not verified"


@dataclass(frozen=True)
class DedekindVerdict:
    q: int
    divides_index: bool
    gcd_witness: ModPoly


@dataclass(frozen=True)
class MonogenicityCertificate:
    k: int
    p: Optional[int]
    critical_primes: tuple[int, ...]
    verdicts: tuple[DedekindVerdict, ...]
    monogenic: bool
    route: str
    assumptions: tuple[str, ...] = field(default=())


def dedekind_at(
    T: IntPoly,
    q: int,
    rng: random.Random | None = None,
    symmetric_lifts: bool = False,
) -> DedekindVerdict:
    """Decide whether q divides the index [Z_K : Z[theta]] for a root theta of T.

    T must be monic and irreducible over Q; the second is not checked.
    """
    if not T.is_monic():
        raise DomainError("T must be monic")
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    Tbar = ModPoly.from_intpoly(T, q)
    factors = fq.factor_mod_q(Tbar, rng)
    g = IntPoly((1,))
    gbar = ModPoly(q, (1,))
    for t, _ in factors:
        g = g * t.lift(symmetric_lifts)
        gbar = gbar * t
    hbar, r = divmod(Tbar, gbar)
    if not r.is_zero():
        raise InternalInconsistency("radical does not divide T mod q")
    h = hbar.lift(symmetric_lifts)
    diff = g * h - T
    if any(c % q for c in diff.coeffs):
        raise ExactDivisionFailed(f"(g*h - T) is not divisible by {q}")
    F = IntPoly(c // q for c in diff.coeffs)
    Fbar = ModPoly.from_intpoly(F, q)
    witness = fq.poly_gcd(fq.poly_gcd(Fbar, gbar), hbar)
    return DedekindVerdict(q, not witness.is_one(), witness)


def index_divisible_at_p_via_ring(k: int, p: int) -> bool:
    """Whether p divides the index of S_k(x^p), via S_k(rho^p) = 0 in R_{p^2}.

    Only valid when S_k is irreducible mod p.
    """
    cls = fq.classify_shanks_mod_p(k, p)
    if not isinstance(cls, fq.IrreducibleModP):
        raise DomainError(f"S_{k} is not irreducible mod {p} ({cls.tag})")
    m = p * p
    return fq.eval_shanks_at_ring(k, fq.ring_pow(fq.rho(k, m), p)).is_zero()


def _require_admissible(k: int, factor_ceiling: int) -> None:
    params = compute_params(k, factor_ceiling)
    if not params.hypotheses_ok:
        raise HypothesisViolation(k, params.failure_reasons)


def certify_base(
    k: int,
    rng: random.Random | None = None,
    factor_ceiling: int = DEFAULT_FACTOR_CEILING,
) -> MonogenicityCertificate:
    """Run Dedekind at every prime dividing k^2+3k+9, the only primes the discriminant can square."""
    _require_admissible(k, factor_ceiling)
    T = shanks_poly(k)
    primes = prime_divisors(k * k + 3 * k + 9, factor_ceiling)
    verdicts = tuple(dedekind_at(T, q, rng) for q in primes)
    return MonogenicityCertificate(
        k, None, tuple(primes), verdicts,
        not any(v.divides_index for v in verdicts), FULL_DEDEKIND,
    )


def certify_power(
    k: int,
    p: int,
    rng: random.Random | None = None,
    factor_ceiling: int = DEFAULT_FACTOR_CEILING,
    routes: str = "auto",
) -> MonogenicityCertificate:
    """Certify S_k(x^p) as monogenic or not.

    ``routes`` is ``"auto"`` (both routes when S_k is irreducible mod p, else
    full Dedekind), ``"full"`` or ``"ring"``.  When both run they must agree.
    """
    _require_admissible(k, factor_ceiling)
    if p == 2 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    if routes not in ("auto", "full", "ring"):
        raise DomainError(f"unknown routes {routes!r}")
    irreducible = isinstance(fq.classify_shanks_mod_p(k, p, rng), fq.IrreducibleModP)
    run_ring = irreducible and routes in ("auto", "ring")
    run_full = routes == "full" or (routes == "auto") or not irreducible
    critical = sorted({p, *prime_divisors(k * k + 3 * k + 9, factor_ceiling)})
    assumptions = (ASSUMPTION_IRREDUCIBLE,)

    ring_verdict = index_divisible_at_p_via_ring(k, p) if run_ring else None
    if not run_full:
        return MonogenicityCertificate(k, p, (p,), (), not ring_verdict, RING_CRITERION, assumptions)

    T = power_compose(shanks_poly(k), p)
    verdicts = tuple(dedekind_at(T, q, rng) for q in critical)
    for v in verdicts:
        if v.q != p and v.divides_index:
            # these primes cannot divide the index once S_k is monogenic
            raise InternalInconsistency(f"k={k}, p={p}: unexpected index divisor {v.q}")
    monogenic = not any(v.divides_index for v in verdicts)
    route = FULL_DEDEKIND
    if ring_verdict is not None:
        at_p = next(v for v in verdicts if v.q == p)
        if at_p.divides_index != ring_verdict:
            raise InternalInconsistency(
                f"k={k}, p={p}: Dedekind says {at_p.divides_index}, ring criterion says {ring_verdict}"
            )
        route = BOTH_AGREE
    return MonogenicityCertificate(k, p, tuple(critical), verdicts, monogenic, route, assumptions)
