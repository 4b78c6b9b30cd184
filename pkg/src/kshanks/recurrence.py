"""The cubic recurrence U_n = k U_{n-1} + (k+3) U_{n-2} + U_{n-3} and its periods.

A period is measured as the first return of the state ``(U_n, U_{n+1}, U_{n+2})``
to ``(0, 0, 1)``.  The companion matrix has determinant 1, so the sequence is
purely periodic modulo every m and this equals the order of the matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import fq
from .errors import CeilingExceeded, DomainError, InternalInconsistency
from .intpoly import DEFAULT_FACTOR_CEILING, factorize, is_prime

BRUTE = "brute"
FAST = "fast"


@dataclass(frozen=True)
class PeriodRecord:
    k: int
    m: int
    pi: int
    method: str


@dataclass(frozen=True)
class ShanksTestResult:
    k: int
    p: int
    pi_p: int
    pi_p2: int
    is_shanks: bool
    classification: str
    ring_criterion: Optional[bool] = None


def sequence(k: int, n: int, m: int | None = None) -> list[int]:
    """First n terms of (U_n), optionally reduced mod m."""
    u = [0, 0, 1]
    while len(u) < n:
        nxt = k * u[-1] + (k + 3) * u[-2] + u[-3]
        u.append(nxt % m if m else nxt)
    return u[:n]


def period_brute(k: int, m: int, ceiling: int | None = None) -> PeriodRecord:
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    if ceiling is None:
        ceiling = m**3
    a, b, c = 0, 0, 1
    k1 = k % m
    k3 = (k + 3) % m
    n = 0
    while n < ceiling:
        a, b, c = b, c, (k1 * c + k3 * b + a) % m
        n += 1
        if c == 1 and a == 0 and b == 0:
            return PeriodRecord(k, m, n, BRUTE)
    raise CeilingExceeded(f"no period for k={k} mod {m} within {ceiling} steps")


def _mat_mul(x, y, m):
    return [[sum(x[i][t] * y[t][j] for t in range(3)) % m for j in range(3)] for i in range(3)]


def step_matrix(k: int, m: int) -> list[list[int]]:
    """Matrix taking (U_n, U_{n+1}, U_{n+2}) to (U_{n+1}, U_{n+2}, U_{n+3})."""
    return [[0, 1, 0], [0, 0, 1], [1 % m, (k + 3) % m, k % m]]


def advance_state(k: int, m: int, n: int) -> tuple[int, int, int]:
    """The state triple after n steps from (0, 0, 1), by repeated squaring."""
    result = [[int(i == j) for j in range(3)] for i in range(3)]
    base = step_matrix(k, m)
    while n:
        if n & 1:
            result = _mat_mul(result, base, m)
        n >>= 1
        if n:
            base = _mat_mul(base, base, m)
    return tuple(row[2] % m for row in result)


def period_fast(
    k: int,
    p: int,
    classification: fq.Classification | None = None,
    factor_ceiling: int = DEFAULT_FACTOR_CEILING,
    iteration_ceiling: int | None = None,
) -> PeriodRecord:
    """pi(p) from the order of rho in R_p, or of the roots in F_p^* when S_k splits.

    The triple-root case has no closed route and is computed by iteration; the
    record then carries ``method="brute"``.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if classification is None:
        classification = fq.classify_shanks_mod_p(k, p)
    if isinstance(classification, fq.IrreducibleModP):
        n = p * p + p + 1
        pi = fq.unit_order(fq.rho(k, p), n, factorize(n, factor_ceiling))
    elif isinstance(classification, fq.SplitsDistinct):
        fac = factorize(p - 1, factor_ceiling) if p > 2 else {}
        pi = fq.lcm(*(fq.residue_order(r, p, fac) for r in classification.roots))
    else:
        return period_brute(k, p, iteration_ceiling)
    return PeriodRecord(k, p, pi, FAST)


def period_prime_square(k: int, p: int, pi_p: int) -> int:
    """pi(p^2), which is either pi(p) or p * pi(p)."""
    if advance_state(k, p * p, pi_p) == (0, 0, 1):
        return pi_p
    return p * pi_p


def ring_criterion(k: int, p: int) -> bool:
    """Whether S_k(rho^p) vanishes in R_{p^2}."""
    m = p * p
    return fq.eval_shanks_at_ring(k, fq.ring_pow(fq.rho(k, m), p)).is_zero()


def is_k_shanks(
    k: int,
    p: int,
    rng: random.Random | None = None,
    factor_ceiling: int = DEFAULT_FACTOR_CEILING,
    iteration_ceiling: int | None = None,
) -> ShanksTestResult:
    """Decide pi(p^2) == pi(p); in the irreducible case also check S_k(rho^p) = 0 mod p^2 agrees."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    cls = fq.classify_shanks_mod_p(k, p, rng)
    pi_p = period_fast(k, p, cls, factor_ceiling, iteration_ceiling).pi
    pi_p2 = period_prime_square(k, p, pi_p)
    is_shanks = pi_p2 == pi_p
    ring = None
    if isinstance(cls, fq.IrreducibleModP):
        ring = ring_criterion(k, p)
        if ring != is_shanks:
            raise InternalInconsistency(
                f"k={k}, p={p}: pi(p^2)=pi(p) is {is_shanks} but S_k(rho^p)=0 mod p^2 is {ring}"
            )
    return ShanksTestResult(k, p, pi_p, pi_p2, is_shanks, cls.tag, ring)
