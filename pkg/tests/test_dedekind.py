import random

import pytest
import sympy

from kshanks.dedekind import (
    BOTH_AGREE,
    FULL_DEDEKIND,
    RING_CRITERION,
    certify_base,
    certify_power,
    dedekind_at,
    index_divisible_at_p_via_ring,
)
from kshanks.errors import DomainError, HypothesisViolation
from kshanks.intpoly import IntPoly, discriminant_exact, power_compose, shanks_poly
from kshanks.recurrence import period_brute

from conftest import sympy_index


def test_dedekind_examples():
    assert not dedekind_at(shanks_poly(33), 3).divides_index
    assert not dedekind_at(shanks_poly(33), 7).divides_index
    assert not dedekind_at(power_compose(shanks_poly(1), 13), 13).divides_index


def test_dedekind_detects_index():
    v = dedekind_at(IntPoly((-5, 0, 1)), 2)  # Z[sqrt 5] has index 2
    assert v.divides_index and v.gcd_witness.degree == 1
    assert not dedekind_at(IntPoly((-5, 0, 1)), 5).divides_index
    with pytest.raises(DomainError):
        dedekind_at(IntPoly((1, 0, 2)), 2)


def _random_monic_irreducible(rng, deg):
    x = sympy.symbols("x")
    while True:
        c = [rng.randint(-12, 12) for _ in range(deg)] + [1]
        P = sympy.Poly(list(reversed(c)), x)
        if P.is_irreducible:
            return IntPoly(c)


def test_dedekind_matches_integral_basis_oracle():
    rng = random.Random(7)
    checked = divisible = 0
    for _ in range(120):
        f = _random_monic_irreducible(rng, rng.choice([2, 3]))
        disc = discriminant_exact(f)
        index = sympy_index(f)
        for q, e in sympy.factorint(abs(disc)).items():
            if e < 2:
                continue
            v = dedekind_at(f, q)
            assert v.divides_index == (index % q == 0), (f, q)
            assert v.divides_index == (not v.gcd_witness.is_one())
            checked += 1
            divisible += v.divides_index
    assert checked > 20 and divisible > 5


@pytest.mark.parametrize("k, p", [(33, 17), (95, 13), (1, 7), (4, 11), (1, 13), (33, 7), (2, 3)])
def test_lift_choice_does_not_matter(k, p):
    T = power_compose(shanks_poly(k), p)
    for q in {p, *sympy.primefactors(k * k + 3 * k + 9)}:
        a = dedekind_at(T, q)
        b = dedekind_at(T, q, symmetric_lifts=True)
        assert a.divides_index == b.divides_index


def test_ring_route_examples():
    assert index_divisible_at_p_via_ring(33, 17)
    assert index_divisible_at_p_via_ring(95, 13)
    assert period_brute(1, 7).pi * 7 == period_brute(1, 49).pi
    assert not index_divisible_at_p_via_ring(1, 7)
    with pytest.raises(DomainError):
        index_divisible_at_p_via_ring(1, 5)


def test_certify_base_examples():
    c = certify_base(33)
    assert c.monogenic and c.critical_primes == (3, 7, 19) and c.route == FULL_DEDEKIND
    c = certify_base(1)
    assert c.monogenic and c.critical_primes == (13,)
    with pytest.raises(HypothesisViolation) as exc:
        certify_base(12)
    assert exc.value.reasons == ["k ≡ 3 (mod 9)"]


def test_certify_power_examples():
    c = certify_power(33, 17)
    assert not c.monogenic and c.route == BOTH_AGREE and c.critical_primes == (3, 7, 17, 19)
    c = certify_power(1, 13)
    assert c.monogenic and c.route == FULL_DEDEKIND
    # S_1 has no root mod 3; pi(3) = 13 and pi(9) = 39 by iteration, so 3 is not 1-Shanks
    assert (period_brute(1, 3).pi, period_brute(1, 9).pi) == (13, 39)
    c = certify_power(1, 3)
    assert c.monogenic and c.route == BOTH_AGREE
    assert sympy_index(power_compose(shanks_poly(1), 3)) == 1


def test_certify_power_routes():
    assert certify_power(33, 17, routes="ring").route == RING_CRITERION
    assert not certify_power(33, 17, routes="ring").monogenic
    assert certify_power(33, 17, routes="full").route == FULL_DEDEKIND
    # ring route is unavailable off the irreducible case and falls back to full
    assert certify_power(1, 13, routes="ring").route == FULL_DEDEKIND
    with pytest.raises(DomainError):
        certify_power(1, 2)
    with pytest.raises(HypothesisViolation):
        certify_power(12, 5)


@pytest.mark.parametrize("k, p", [(1, 5), (1, 7), (2, 5), (4, 3), (7, 5)])
def test_power_verdict_matches_integral_basis(k, p):
    T = power_compose(shanks_poly(k), p)
    c = certify_power(k, p)
    assert c.monogenic == (sympy_index(T) == 1)


@pytest.mark.slow
def test_nonmonogenic_power_against_integral_basis():
    # 13 is a 71-Shanks prime; the oracle finds index 13^3
    T = power_compose(shanks_poly(71), 13)
    assert sympy_index(T) == 13**3
    assert not certify_power(71, 13).monogenic


@pytest.mark.parametrize("k, p", [(33, 17), (95, 13), (71, 13), (409, 61), (618, 43), (987, 101)])
def test_three_way_agreement_on_shanks_primes(k, p):
    from kshanks.recurrence import is_k_shanks

    T = power_compose(shanks_poly(k), p)
    assert is_k_shanks(k, p).is_shanks
    assert index_divisible_at_p_via_ring(k, p)
    assert dedekind_at(T, p).divides_index
