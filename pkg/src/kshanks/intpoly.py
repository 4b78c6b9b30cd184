"""Exact integer polynomials, the Shanks family, discriminants and the admissibility test for k.

Polynomials are dense with ascending coefficients.  All integers are Python ints,
so nothing here ever overflows; the factored discriminant type exists because
``p**(3*p)`` is still wasteful to expand outside of tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Iterable, Sequence

from .errors import DomainError, FactorizationStalled

DEFAULT_FACTOR_CEILING = 10**7


@dataclass(frozen=True)
class IntPoly:
    """Dense polynomial over Z, ``coeffs[i]`` is the coefficient of ``x**i``."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        return IntPoly(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = str(a) if (a != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            terms.append(f"{sign} {body}{mono}")
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def shanks_poly(k: int) -> IntPoly:
    """The Shanks cubic ``x^3 - k x^2 - (k+3) x - 1``."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    return IntPoly((-1, -(k + 3), -k, 1))


def power_compose(f: IntPoly, p: int) -> IntPoly:
    """Return ``f(x**p)``."""
    if f.is_zero():
        raise DomainError("cannot compose the zero polynomial")
    if p < 1:
        raise DomainError(f"exponent must be positive, got {p}")
    out = [0] * (p * f.degree + 1)
    for i, c in enumerate(f.coeffs):
        out[i * p] = c
    return IntPoly(out)


def _det_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free determinant; every intermediate division is exact."""
    m = [r[:] for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[i][i]
        for r in range(i + 1, n):
            mr, mi = m[r], m[i]
            a = mr[i]
            for c in range(i + 1, n):
                mr[c] = (piv * mr[c] - a * mi[c]) // prev
            mr[i] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f: IntPoly, g: IntPoly) -> list[list[int]]:
    m, n = f.degree, g.degree
    size = m + n
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return rows


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Exact resultant as the determinant of the Sylvester matrix."""
    if f.is_zero() or g.is_zero():
        raise DomainError("resultant of the zero polynomial is undefined")
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    return _det_bareiss(sylvester_matrix(f, g))


def discriminant_exact(f: IntPoly) -> int:
    d = f.degree
    if d < 1:
        raise DomainError("discriminant needs degree >= 1")
    r = resultant(f, f.derivative())
    q, rem = divmod(r, f.lc)
    assert rem == 0
    return -q if (d * (d - 1) // 2) % 2 else q


# -- trial division -----------------------------------------------------------

def factorize(n: int, ceiling: int = DEFAULT_FACTOR_CEILING) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division with divisors up to ``ceiling``.

    Raises FactorizationStalled when a cofactor remains that could still be
    composite, i.e. it exceeds ``ceiling**2``.
    """
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    out: dict[int, int] = {}
    m = n
    for d in (2, 3):
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
    d, step = 5, 2
    while d * d <= m:
        if d > ceiling:
            raise FactorizationStalled(n, m, ceiling)
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += step
        step = 6 - step
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def prime_divisors(n: int, ceiling: int = DEFAULT_FACTOR_CEILING) -> list[int]:
    return sorted(factorize(n, ceiling))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi (simple sieve)."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [i for i in range(max(lo, 2), hi + 1) if sieve[i]]


# -- admissibility ------------------------------------------------------------

REASON_K_NONPOSITIVE = "k < 1"
REASON_K_3_MOD_9 = "k ≡ 3 (mod 9)"
REASON_NOT_SQUAREFREE = "D not squarefree"
REASON_UNDETERMINED = "D factorization undetermined"


@dataclass(frozen=True)
class ShanksParams:
    k: int
    disc_base_root: int
    cap_d: int
    hypotheses_ok: bool
    failure_reasons: tuple[str, ...] = field(default=())


def compute_params(k: int, ceiling: int = DEFAULT_FACTOR_CEILING) -> ShanksParams:
    base = k * k + 3 * k + 9
    cap_d = base // 9 if k % 3 == 0 else base
    reasons = []
    if k < 1:
        reasons.append(REASON_K_NONPOSITIVE)
    if k % 9 == 3:
        reasons.append(REASON_K_3_MOD_9)
    if cap_d > 0:
        try:
            if any(e > 1 for e in factorize(cap_d, ceiling).values()):
                reasons.append(REASON_NOT_SQUAREFREE)
        except FactorizationStalled:
            reasons.append(REASON_UNDETERMINED)
    return ShanksParams(k, base, cap_d, not reasons, tuple(reasons))


@dataclass(frozen=True)
class FactoredDisc:
    """``sign * p**exp_p * base**exp_base``, kept unexpanded."""

    sign: int
    p: int
    exp_p: int
    base: int
    exp_base: int

    def expand(self) -> int:
        return self.sign * self.p**self.exp_p * self.base**self.exp_base

    def as_dict(self) -> dict[str, int]:
        return {"sign": self.sign, "p": self.p, "exp_p": self.exp_p,
                "base": self.base, "exp_base": self.exp_base}


def factored_disc_power(k: int, p: int) -> FactoredDisc:
    """Discriminant of ``S_k(x**p)`` for an odd prime p, in factored form."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if p == 2 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    sign = -1 if ((p - 2) * (p - 1) // 2) % 2 else 1
    return FactoredDisc(sign, p, 3 * p, k * k + 3 * k + 9, 2 * p)
