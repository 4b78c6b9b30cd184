"""Polynomials over Z/mZ, factorization over prime fields, and the cubic ring R_m.

Internally polynomials are plain lists of residues, lowest degree first, with
no trailing zeros (``[]`` is zero).  ``ModPoly`` is the immutable public face.
Factorization is squarefree decomposition, then distinct-degree, then
Cantor-Zassenhaus equal-degree splitting.  Frobenius is applied through a
precomputed matrix of ``x**(i*q) mod f`` so large q costs a handful of
``powmod`` calls rather than one per step.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd as igcd
from typing import Iterable, Sequence

from .errors import DomainError, InternalInconsistency
from .intpoly import IntPoly, is_prime

# -- list-level arithmetic ----------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _reduce(a: Iterable[int], m: int) -> list[int]:
    return _trim([c % m for c in a])


def _add(a, b, m):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    return _trim(out)


def _sub(a, b, m):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % m
    return _trim(out)


def _scale(a, s, m):
    s %= m
    if s == 0:
        return []
    return _trim([c * s % m for c in a])


_KRONECKER_MIN = 24


def _slot_bytes(n, m):
    return ((n * (m - 1) ** 2).bit_length() + 8) // 8


def _pack(a, nb):
    return int.from_bytes(b"".join(c.to_bytes(nb, "little") for c in a), "little")


def _unpack(v, nb, count, m):
    data = v.to_bytes(nb * count, "little")
    return [int.from_bytes(data[i * nb : (i + 1) * nb], "little") % m for i in range(count)]


def _mul(a, b, m):
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if min(la, lb) < _KRONECKER_MIN:
        out = [0] * (la + lb - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return _trim([c % m for c in out])
    # Kronecker substitution: one big-integer product.
    nb = _slot_bytes(min(la, lb), m)
    v = _pack(a, nb) * _pack(b, nb)
    return _trim(_unpack(v, nb, la + lb - 1, m))


def _divmod(a, b, m):
    """Quotient and remainder; b's leading coefficient must be a unit mod m."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    inv = pow(b[-1], -1, m)
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i] % m
        if c == 0:
            continue
        c = c * inv % m
        q[i - db] = c
        off = i - db
        for j in range(db):
            r[off + j] = (r[off + j] - c * b[j]) % m
        r[i] = 0
    return _trim(q), _trim([c % m for c in r[:db]])


def _rem(a, b, m):
    return _divmod(a, b, m)[1]


def _exact_div(a, b, m):
    q, r = _divmod(a, b, m)
    if r:
        raise InternalInconsistency("inexact polynomial division")
    return q


def _monic(a, m):
    if not a:
        return []
    if a[-1] == 1:
        return list(a)
    return _scale(a, pow(a[-1], -1, m), m)


def _gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _deriv(a, m):
    return _trim([i * c % m for i, c in enumerate(a)][1:])


def _mulmod(a, b, f, m):
    return _rem(_mul(a, b, m), f, m)


def _powmod(base, e, f, m):
    result = [1]
    base = _rem(base, f, m)
    while e:
        if e & 1:
            result = _mulmod(result, base, f, m)
        e >>= 1
        if e:
            base = _mulmod(base, base, f, m)
    return _rem(result, f, m)


def _eval(a, x, m):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


# -- Frobenius via a precomputed basis ---------------------------------------


class _Frobenius:
    """Applies ``h -> h**q mod f`` over F_q as a linear map."""

    def __init__(self, f, q):
        self.f, self.q, self.n = f, q, len(f) - 1
        n = self.n
        rows = [[1]]
        if n > 1:
            xq = _powmod([0, 1], q, f, q)
            for _ in range(1, n):
                rows.append(_mulmod(rows[-1], xq, f, q))
        self.nb = _slot_bytes(n, q)
        self.packed = [_pack(r + [0] * (n - len(r)), self.nb) for r in rows]

    def __call__(self, h):
        acc = 0
        for c, row in zip(h, self.packed):
            if c:
                acc += c * row
        if not acc:
            return []
        return _trim(_unpack(acc, self.nb, self.n, self.q))


# -- factorization over F_q ---------------------------------------------------


def _pth_root(a, p):
    # coefficients of a live only at multiples of p; c**(1/p) = c in F_p
    return _trim([a[i] for i in range(0, len(a), p)])


def _sqf_parts(f, p):
    """Squarefree decomposition of a monic f; may repeat a base across multiplicities."""
    out = []
    d = _deriv(f, p)
    if not d:
        return [(g, e * p) for g, e in _sqf_parts(_pth_root(f, p), p)]
    c = _gcd(f, d, p)
    w = _exact_div(f, c, p)
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, p)
        z = _exact_div(w, y, p)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = _exact_div(c, y, p)
    if len(c) > 1:
        out.extend((g, e * p) for g, e in _sqf_parts(_pth_root(c, p), p))
    return out


def _ddf(f, p):
    """Distinct-degree factorization of a monic squarefree f."""
    out = []
    if len(f) <= 2:
        return [(f, 1)] if len(f) == 2 else []
    frob = _Frobenius(f, p)
    h = [0, 1]
    rest = f
    d = 0
    while 2 * (d + 1) <= len(rest) - 1:
        d += 1
        h = frob(h)
        g = _gcd(rest, _sub(_rem(h, rest, p), [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            rest = _exact_div(rest, g, p)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _edf(f, d, p, rng):
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    if n < d or n % d:
        raise InternalInconsistency("equal-degree input has wrong degree")
    if d == 1 and p < 64:
        return [[(-r) % p, 1] for r in range(p) if _eval(f, r, p) == 0]
    frob = _Frobenius(f, p) if p != 2 else None
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # absolute trace into F_2: a + a^2 + ... + a^(2^(d-1))
            t, b = a, a
            for _ in range(d - 1):
                b = _mulmod(b, b, f, p)
                t = _add(t, b, p)
            cand = t
        else:
            # a^((p^d-1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
            norm, b = a, a
            for _ in range(d - 1):
                b = frob(b)
                norm = _mulmod(norm, b, f, p)
            cand = _sub(_powmod(norm, (p - 1) // 2, f, p), [1], p)
        g = _gcd(f, cand, p)
        if 1 < len(g) < len(f):
            return _edf(g, d, p, rng) + _edf(_exact_div(f, g, p), d, p, rng)


def _factor_list(f, p, rng):
    merged: dict[tuple[int, ...], int] = {}
    for part, e in _sqf_parts(f, p):
        for g, d in _ddf(part, p):
            for h in _edf(g, d, p, rng):
                key = tuple(h)
                merged[key] = merged.get(key, 0) + e
    return sorted(((list(h), e) for h, e in merged.items()), key=lambda t: (len(t[0]), t[0], t[1]))


# -- public types -------------------------------------------------------------


@dataclass(frozen=True)
class ModPoly:
    """Polynomial over Z/mZ; residues in ``[0, modulus)``, lowest degree first."""

    modulus: int
    coeffs: tuple[int, ...]

    def __init__(self, modulus: int, coeffs: Iterable[int] = ()):
        if modulus < 2:
            raise DomainError(f"modulus must be >= 2, got {modulus}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(_reduce(coeffs, modulus)))

    @classmethod
    def from_intpoly(cls, f: IntPoly, m: int) -> ModPoly:
        return cls(m, f.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def _check(self, other: ModPoly) -> None:
        if other.modulus != self.modulus:
            raise DomainError("moduli differ")

    def __add__(self, other: ModPoly) -> ModPoly:
        self._check(other)
        return ModPoly(self.modulus, _add(self.coeffs, other.coeffs, self.modulus))

    def __sub__(self, other: ModPoly) -> ModPoly:
        self._check(other)
        return ModPoly(self.modulus, _sub(self.coeffs, other.coeffs, self.modulus))

    def __mul__(self, other: ModPoly) -> ModPoly:
        self._check(other)
        return ModPoly(self.modulus, _mul(self.coeffs, other.coeffs, self.modulus))

    def __pow__(self, n: int) -> ModPoly:
        out = [1]
        for _ in range(n):
            out = _mul(out, self.coeffs, self.modulus)
        return ModPoly(self.modulus, out)

    def __divmod__(self, other: ModPoly) -> tuple[ModPoly, ModPoly]:
        self._check(other)
        q, r = _divmod(self.coeffs, other.coeffs, self.modulus)
        return ModPoly(self.modulus, q), ModPoly(self.modulus, r)

    def __call__(self, x: int) -> int:
        return _eval(self.coeffs, x, self.modulus)

    def monic(self) -> ModPoly:
        return ModPoly(self.modulus, _monic(self.coeffs, self.modulus))

    def lift(self, symmetric: bool = False) -> IntPoly:
        """Integer lift with coefficients in [0, m), or in (-m/2, m/2] if symmetric."""
        m = self.modulus
        if not symmetric:
            return IntPoly(self.coeffs)
        return IntPoly(c - m if c > m // 2 else c for c in self.coeffs)

    def __str__(self) -> str:
        return f"({IntPoly(self.coeffs)}) mod {self.modulus}"


def _require_prime(q: int) -> None:
    if not is_prime(q):
        raise DomainError(f"modulus {q} is not prime")


def poly_gcd(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic gcd over a prime field (zero only when both inputs are zero)."""
    a._check(b)
    _require_prime(a.modulus)
    return ModPoly(a.modulus, _gcd(a.coeffs, b.coeffs, a.modulus))


def factor_mod_q(f: ModPoly, rng: random.Random | None = None) -> list[tuple[ModPoly, int]]:
    """Complete factorization of a monic polynomial over F_q.

    Returns ``(irreducible monic factor, multiplicity)`` pairs sorted by
    degree then coefficients.  ``rng`` drives the equal-degree splitting;
    the default is a fresh ``random.Random(0)``.
    """
    q = f.modulus
    _require_prime(q)
    if f.is_zero() or f.coeffs[-1] != 1:
        raise DomainError("factor_mod_q needs a monic nonzero polynomial")
    if rng is None:
        rng = random.Random(0)
    if f.degree == 0:
        return []
    return [(ModPoly(q, g), e) for g, e in _factor_list(list(f.coeffs), q, rng)]


# -- classification of S_k mod p ---------------------------------------------


@dataclass(frozen=True)
class IrreducibleModP:
    tag = "irreducible"


@dataclass(frozen=True)
class SplitsDistinct:
    roots: tuple[int, int, int]
    tag = "split"


@dataclass(frozen=True)
class TripleRoot:
    root: int
    tag = "triple"


Classification = IrreducibleModP | SplitsDistinct | TripleRoot


def shanks_mod(k: int, m: int) -> list[int]:
    return _reduce((-1, -(k + 3), -k, 1), m)


def classify_shanks_mod_p(k: int, p: int, rng: random.Random | None = None) -> Classification:
    """Factorization shape of ``S_k`` over F_p: irreducible, three distinct roots, or a triple root."""
    _require_prime(p)
    if p > 3 and (k * k + 3 * k + 9) % p == 0:
        root = k * pow(3, -1, p) % p
        alt2 = -3 * pow(k + 3, -1, p) % p
        alt3 = -(k + 3) * pow(k, -1, p) % p
        f = shanks_mod(k, p)
        if not (root == alt2 == alt3 and _eval(f, root, p) == 0
                and _eval(_deriv(f, p), root, p) == 0):
            raise InternalInconsistency(f"triple-root closed forms disagree for k={k}, p={p}")
        return TripleRoot(root)
    factors = factor_mod_q(ModPoly(p, shanks_mod(k, p)), rng)
    shape = sorted((g.degree, e) for g, e in factors)
    if shape == [(3, 1)]:
        return IrreducibleModP()
    if shape == [(1, 1)] * 3:
        return SplitsDistinct(tuple(sorted((-g.coeffs[0]) % p for g, _ in factors)))
    if shape == [(1, 3)]:
        return TripleRoot((-factors[0][0].coeffs[0]) % p)
    raise InternalInconsistency(f"S_{k} mod {p} has factor shape {shape}")


# -- the ring R_m = (Z/mZ)[x]/(S_k) -------------------------------------------


@dataclass(frozen=True)
class RingElem:
    """``c0 + c1*rho + c2*rho**2`` in ``(Z/mZ)[x]/(S_k(x))``."""

    k: int
    modulus: int
    coeffs: tuple[int, int, int]

    def __init__(self, k: int, modulus: int, coeffs: Sequence[int]):
        if len(coeffs) > 3:
            raise DomainError("ring elements have at most three coefficients")
        c = [a % modulus for a in coeffs] + [0] * (3 - len(coeffs))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(c))

    def _check(self, other: RingElem) -> None:
        if (self.k, self.modulus) != (other.k, other.modulus):
            raise DomainError("elements live in different rings")

    def _new(self, coeffs) -> RingElem:
        return RingElem(self.k, self.modulus, coeffs)

    def __add__(self, other: RingElem | int) -> RingElem:
        if isinstance(other, int):
            other = self._new((other,))
        self._check(other)
        return self._new([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return self._new([-a for a in self.coeffs])

    def __sub__(self, other: RingElem | int) -> RingElem:
        return self + (-other)

    def __rsub__(self, other: int) -> RingElem:
        return (-self) + other

    def __mul__(self, other: RingElem | int) -> RingElem:
        if isinstance(other, int):
            return self._new([a * other for a in self.coeffs])
        self._check(other)
        a0, a1, a2 = self.coeffs
        b0, b1, b2 = other.coeffs
        m, k = self.modulus, self.k
        c0 = a0 * b0
        c1 = a0 * b1 + a1 * b0
        c2 = a0 * b2 + a1 * b1 + a2 * b0
        c3 = (a1 * b2 + a2 * b1) % m
        c4 = a2 * b2 % m
        # rho^4 = k rho^3 + (k+3) rho^2 + rho, rho^3 = k rho^2 + (k+3) rho + 1
        c3 = (c3 + k * c4) % m
        c2 += (k + 3) * c4
        c1 += c4
        c2 += k * c3
        c1 += (k + 3) * c3
        c0 += c3
        return self._new((c0, c1, c2))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RingElem:
        return ring_pow(self, n)

    def is_zero(self) -> bool:
        return self.coeffs == (0, 0, 0)

    def is_one(self) -> bool:
        return self.coeffs == (1, 0, 0)


def rho(k: int, m: int) -> RingElem:
    return RingElem(k, m, (0, 1, 0))


def ring_one(k: int, m: int) -> RingElem:
    return RingElem(k, m, (1, 0, 0))


def ring_pow(e: RingElem, n: int) -> RingElem:
    if n < 0:
        raise DomainError("negative exponents need inverses, which R_m does not provide in general")
    result = ring_one(e.k, e.modulus)
    base = e
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def conjugates(k: int, m: int) -> tuple[RingElem, RingElem]:
    """The other two roots of S_k, as polynomials in rho."""
    sigma = RingElem(k, m, (-2, -(k + 1), 1))
    tau = RingElem(k, m, (k + 2, k, -1))
    return sigma, tau


def eval_shanks_at_ring(k: int, e: RingElem) -> RingElem:
    """``e**3 - k e**2 - (k+3) e - 1`` in R_m."""
    e2 = e * e
    return e2 * e - e2 * k - e * (k + 3) - 1


def unit_order(e: RingElem, multiple: int, factors: dict[int, int]) -> int:
    """Order of ``e``, given that ``e**multiple == 1`` and ``factors`` factors ``multiple``."""
    if not ring_pow(e, multiple).is_one():
        raise InternalInconsistency(f"element does not satisfy e^{multiple} = 1")
    n = multiple
    for ell in factors:
        while n % ell == 0 and ring_pow(e, n // ell).is_one():
            n //= ell
    return n


def residue_order(a: int, p: int, factors: dict[int, int]) -> int:
    """Multiplicative order of ``a`` in F_p^*, given the factorization of ``p - 1``."""
    if a % p == 0:
        raise DomainError("zero has no multiplicative order")
    n = p - 1
    for ell in factors:
        while n % ell == 0 and pow(a, n // ell, p) == 1:
            n //= ell
    return n


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // igcd(out, x)
    return out
