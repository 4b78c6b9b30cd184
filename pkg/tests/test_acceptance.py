"""Exit criteria.  Each test prints one PASS/FAIL line (visible even under capture)."""

import random
import time

import pytest

from kshanks.dedekind import certify_base, certify_power, dedekind_at, index_divisible_at_p_via_ring
from kshanks.fq import IrreducibleModP, TripleRoot, classify_shanks_mod_p, conjugates, rho, unit_order
from kshanks.intpoly import (
    compute_params,
    discriminant_exact,
    factored_disc_power,
    factorize,
    power_compose,
    primes_between,
    shanks_poly,
)
from kshanks.recurrence import is_k_shanks, period_brute, period_fast, period_prime_square
from kshanks.shanks import SearchConfig, run_search, verify_table1

from conftest import brute_roots

ADMISSIBLE_30 = [k for k in range(1, 31) if compute_params(k).hypotheses_ok]
ODD_PRIMES_60 = primes_between(3, 60)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
        assert ok, detail

    return emit


def test_criterion_1_table1(report):
    t = time.perf_counter()
    rep = verify_table1()
    dt = time.perf_counter() - t
    periods = [(r.pi_p, r.pi_p2) for r in rep.rows]
    ok = rep.passed and periods == [(n, n) for n in (307, 183, 3783, 1893, 10303)] and dt < 10
    report(1, ok, f"Table 1 rows pass={[r.passed for r in rep.rows]} periods={periods} in {dt:.2f}s")


def test_criterion_2_base_monogenic(report):
    t = time.perf_counter()
    ks = [k for k in range(1, 201) if compute_params(k).hypotheses_ok]
    bad = [k for k in ks if not certify_base(k).monogenic]
    dt = time.perf_counter() - t
    report(2, not bad and dt < 30, f"{len(ks)} admissible k <= 200, non-monogenic: {bad}, {dt:.2f}s")


def test_criterion_3_ramified_power_monogenic(report):
    t = time.perf_counter()
    cells, bad = 0, []
    for k in range(1, 51):
        if not compute_params(k).hypotheses_ok:
            continue
        for p in primes_between(3, 50):
            if (k * k + 3 * k + 9) % p:
                continue
            cert = certify_power(k, p, routes="full")
            cells += 1
            if not (cert.monogenic and cert.route == "full_dedekind" and p in cert.critical_primes):
                bad.append((k, p))
    dt = time.perf_counter() - t
    report(3, cells > 0 and not bad and dt < 120, f"{cells} cells (k, p | k^2+3k+9), failures {bad}, {dt:.2f}s")


def test_criterion_4_three_way_equivalence(report):
    cells, disagree = 0, []
    for k in ADMISSIBLE_30:
        for p in ODD_PRIMES_60:
            if not isinstance(classify_shanks_mod_p(k, p), IrreducibleModP):
                continue
            a = is_k_shanks(k, p).is_shanks
            b = index_divisible_at_p_via_ring(k, p)
            c = dedekind_at(power_compose(shanks_poly(k), p), p).divides_index
            cells += 1
            if not (a == b == c):
                disagree.append((k, p, a, b, c))
    report(4, cells > 0 and not disagree, f"{cells} irreducible cells, disagreements {disagree}")


def test_criterion_5_period_lemma(report):
    cells, bad = 0, []
    for k in ADMISSIBLE_30:
        for p in ODD_PRIMES_60:
            if not isinstance(classify_shanks_mod_p(k, p), IrreducibleModP):
                continue
            cells += 1
            pi = period_fast(k, p).pi
            pi2 = period_prime_square(k, p, pi)
            n = p * p + p + 1
            fac = factorize(n)
            sigma, tau = conjugates(k, p)
            orders = [unit_order(e, n, fac) for e in (rho(k, p), sigma, tau)]
            if n % pi or pi2 not in (pi, p * pi) or orders != [pi] * 3:
                bad.append((k, p, pi, pi2, orders))
    report(5, cells > 0 and not bad, f"{cells} irreducible cells, violations {bad}")


def test_criterion_6_factor_shape(report):
    rng = random.Random(20261019)
    primes = primes_between(2, 500)
    bad = []
    for _ in range(500):
        k, p = rng.randint(1, 10**4), rng.choice(primes)
        cls = classify_shanks_mod_p(k, p)
        nroots = len(brute_roots(shanks_poly(k).coeffs, p))
        shape_ok = nroots in (0, 3) or (nroots == 1 and isinstance(cls, TripleRoot))
        if not shape_ok:
            bad.append((k, p, cls))
    report(6, not bad, f"500 random (k, p <= 500) pairs, single-root shapes {bad}")


def test_criterion_7_discriminants(report):
    bad = []
    for k in range(1, 6):
        for p in (3, 5):
            exact = discriminant_exact(power_compose(shanks_poly(k), p))
            if exact != factored_disc_power(k, p).expand():
                bad.append((k, p))
    base_bad = [k for k in range(1, 501) if discriminant_exact(shanks_poly(k)) != (k * k + 3 * k + 9) ** 2]
    report(7, not bad and not base_bad,
           f"composed mismatches {bad}; base mismatches for k <= 500: {base_bad}")


def test_criterion_8_brute_fast_agreement(report):
    cells, bad = 0, []
    for k in range(1, 31):
        for p in primes_between(2, 50):
            fast = period_fast(k, p).pi
            fast2 = period_prime_square(k, p, fast)
            b1, b2 = period_brute(k, p).pi, period_brute(k, p * p).pi
            cells += 2
            if (fast, fast2) != (b1, b2):
                bad.append((k, p, fast, b1, fast2, b2))
    report(8, not bad, f"{cells} (k, m) cells, mismatches {bad}")


def test_criterion_9_resume(tmp_path, report):
    grid = dict(k_min=1, k_max=20, p_min=2, p_max=31, seed=7)
    full = tmp_path / "full.jsonl"
    run_search(SearchConfig(**grid), full)
    part = tmp_path / "part.jsonl"
    cfg = SearchConfig(**grid, checkpoint=str(tmp_path / "ck"))
    run_search(cfg, part, stop_after_k=9)
    interrupted = part.stat().st_size
    run_search(cfg, part)
    ok = 0 < interrupted < full.stat().st_size and part.read_bytes() == full.read_bytes()
    report(9, ok, f"resumed output byte-identical: {part.read_bytes() == full.read_bytes()} "
                  f"({full.stat().st_size} bytes, interrupted at {interrupted})")
