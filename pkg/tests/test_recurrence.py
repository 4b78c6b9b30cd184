import pytest
from hypothesis import given, strategies as st

from kshanks.errors import CeilingExceeded, DomainError
from kshanks.fq import IrreducibleModP, classify_shanks_mod_p
from kshanks.recurrence import (
    advance_state,
    is_k_shanks,
    period_brute,
    period_fast,
    period_prime_square,
    ring_criterion,
    sequence,
)


def test_sequence_start():
    assert sequence(1, 8) == [0, 0, 1, 1, 5, 10, 31, 76]
    assert sequence(2, 6) == [0, 0, 1, 2, 9, 29]


def test_brute_hand_iteration_mod_2():
    states = [tuple(sequence(1, 10, 2)[i : i + 3]) for i in range(8)]
    assert states == [(0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 1, 0),
                      (1, 0, 1), (0, 1, 0), (1, 0, 0), (0, 0, 1)]
    assert period_brute(1, 2).pi == 7


def test_brute_table_values():
    assert period_brute(33, 17).pi == 307
    assert period_brute(95, 13).pi == 183


def test_brute_errors():
    with pytest.raises(DomainError):
        period_brute(1, 1)
    with pytest.raises(CeilingExceeded):
        period_brute(33, 17, ceiling=306)


@given(st.integers(1, 60), st.integers(2, 40))
def test_brute_is_a_period_of_the_sequence(k, m):
    pi = period_brute(k, m).pi
    u = sequence(k, 2 * pi + 3, m)
    assert pi >= 3
    assert u[pi : pi + 3] == [0, 0, 1]
    assert all(u[i] == u[i + pi] for i in range(pi + 3))
    assert all(u[i : i + 3] != [0, 0, 1] for i in range(1, pi))


@given(st.integers(1, 100), st.integers(2, 60), st.integers(0, 500))
def test_advance_state_matches_sequence(k, m, n):
    assert list(advance_state(k, m, n)) == sequence(k, n + 3, m)[n : n + 3]


def test_fast_examples():
    assert period_fast(33, 17).pi == 307 == 17**2 + 17 + 1
    assert period_fast(409, 61).pi == 3783
    # the root-order sketch gives lcm(1, 4, 4); the iteration decides
    assert period_brute(1, 5).pi == 4
    assert period_fast(1, 5).pi == 4
    triple = period_fast(1, 13)
    assert triple.method == "brute" and triple.pi == period_brute(1, 13).pi


def test_prime_square_examples():
    assert period_prime_square(33, 17, 307) == 307
    assert period_prime_square(987, 101, 10303) == 10303
    assert period_brute(1, 7).pi == 19
    assert period_brute(1, 49).pi == 133
    assert period_prime_square(1, 7, 19) == 7 * 19


def test_is_k_shanks_examples():
    r = is_k_shanks(33, 17)
    assert r.is_shanks and r.ring_criterion and r.pi_p == r.pi_p2 == 307
    r = is_k_shanks(618, 43)
    assert r.is_shanks and r.pi_p == 1893
    r = is_k_shanks(1, 7)
    assert not r.is_shanks and r.ring_criterion is False and (r.pi_p, r.pi_p2) == (19, 133)
    assert is_k_shanks(1, 5).ring_criterion is None
    with pytest.raises(DomainError):
        is_k_shanks(1, 9)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])
def test_irreducible_case_properties(p):
    for k in range(1, 31):
        if not isinstance(classify_shanks_mod_p(k, p), IrreducibleModP):
            continue
        pi = period_fast(k, p).pi
        assert (p * p + p + 1) % pi == 0
        assert p == 3 or pi != 3
        pi2 = period_prime_square(k, p, pi)
        assert pi2 in (pi, p * pi)
        assert ring_criterion(k, p) == (pi2 == pi)


def test_two_is_never_skipped():
    # S_k is irreducible mod 2 for every k, so pi(2) = 7
    assert {period_fast(k, 2).pi for k in range(1, 20)} == {7}


@pytest.mark.parametrize("k, p", [(33, 17), (1, 7), (1, 3), (95, 13), (4, 11)])
def test_rho_to_the_period_is_one(k, p):
    from kshanks.fq import rho, ring_pow

    pi = period_brute(k, p).pi
    assert ring_pow(rho(k, p), pi).is_one()
    assert all(not ring_pow(rho(k, p), d).is_one() for d in range(1, pi) if pi % d == 0)
