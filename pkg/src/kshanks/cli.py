"""Command-line front end.

Exit codes: 0 success / all pass, 2 invalid arguments, 3 ceiling exceeded,
4 brute and fast periods disagree, 5 k fails the hypotheses, 6 a verification
failed.  Output is one record per line in json (default), csv or text.
"""

from __future__ import annotations

import logging
import os
import sys

import click

from . import records
from .dedekind import certify_base, certify_power
from .errors import CeilingExceeded, CheckpointError, DomainError, HypothesisViolation, TheoremViolation
from .intpoly import DEFAULT_FACTOR_CEILING, factorize, is_prime
from .recurrence import PeriodRecord, is_k_shanks, period_brute, period_fast, period_prime_square
from .shanks import SearchConfig, cell_rng, run_search, search_shanks_primes, verify_table1, verify_theorem_suite

EXIT_CEILING = 3
EXIT_DISAGREE = 4
EXIT_HYPOTHESIS = 5
EXIT_VERIFY = 6

CEILING_ENV = "SHANKS_CEILING"


def _emit(recs, fmt, stream=None):
    stream = stream or sys.stdout
    header_done = False
    for rec in recs:
        if fmt == "csv" and not header_done:
            stream.write(records.csv_header(rec))
            header_done = True
        stream.write(records.render(rec, fmt))
    stream.flush()


def _ceiling(value):
    if value is not None:
        return value
    env = os.environ.get(CEILING_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise click.UsageError(f"{CEILING_ENV} must be an integer, got {env!r}")
    return None


def _fail(code, msg):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def common(f):
    f = click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized factoring.")(f)
    f = click.option("--format", "fmt", type=click.Choice(records.FORMATS), default="json", show_default=True)(f)
    f = click.option("--ceiling", type=click.IntRange(min=1), default=None,
                     help=f"Iteration/factoring ceiling (also ${CEILING_ENV}).")(f)
    return f


def _prime(ctx, param, value):
    if value is not None and not is_prime(value):
        raise click.BadParameter(f"{value} is not prime")
    return value


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose):
    """Periods of the Shanks recurrence, k-Shanks primes and monogenicity of S_k(x^p)."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")


def _prime_power_base(m):
    """p if m is p or p^2 for a prime p, else None."""
    if is_prime(m):
        return m
    fac = factorize(m)
    if len(fac) == 1:
        (p, e), = fac.items()
        if e == 2:
            return p
    return None


def _fast_period(k, m, ceiling):
    p = _prime_power_base(m)
    if p is None:
        raise click.UsageError(f"fast method needs m = p or p^2, got {m}")
    kwargs = {"factor_ceiling": ceiling or DEFAULT_FACTOR_CEILING, "iteration_ceiling": ceiling}
    rec = period_fast(k, p, **kwargs)
    if m == p:
        return rec
    return PeriodRecord(k, m, period_prime_square(k, p, rec.pi), rec.method)


@cli.command("period")
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--m", type=click.IntRange(min=2), required=True)
@click.option("--method", type=click.Choice(["brute", "fast", "both"]), default=None,
              help="Default: fast when m is p or p^2, brute otherwise.")
@common
def cmd_period(k, m, method, fmt, seed, ceiling):
    """Period of (U_n) modulo m."""
    ceiling = _ceiling(ceiling)
    if method is None:
        method = "fast" if _prime_power_base(m) else "brute"
    try:
        if method == "brute":
            out = [period_brute(k, m, ceiling)]
        elif method == "fast":
            out = [_fast_period(k, m, ceiling)]
        else:
            out = [period_brute(k, m, ceiling), _fast_period(k, m, ceiling)]
    except CeilingExceeded as exc:
        _fail(EXIT_CEILING, str(exc))
    _emit([records.to_record(r) for r in out], fmt)
    if method == "both" and out[0].pi != out[1].pi:
        _fail(EXIT_DISAGREE, f"brute {out[0].pi} != fast {out[1].pi}")


@cli.command("test")
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--p", type=click.IntRange(min=2), required=True, callback=_prime)
@common
def cmd_test(k, p, fmt, seed, ceiling):
    """Is p a k-Shanks prime?"""
    ceiling = _ceiling(ceiling)
    try:
        res = is_k_shanks(k, p, cell_rng(seed, k, p), ceiling or DEFAULT_FACTOR_CEILING, ceiling)
    except CeilingExceeded as exc:
        _fail(EXIT_CEILING, str(exc))
    _emit([records.to_record(res)], fmt)


@cli.command("certify")
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--p", type=click.IntRange(min=3), default=None, callback=_prime,
              help="Certify S_k(x^p) instead of S_k(x).")
@click.option("--route", type=click.Choice(["auto", "full", "ring"]), default="auto", show_default=True)
@common
def cmd_certify(k, p, route, fmt, seed, ceiling):
    """Monogenicity certificate for S_k(x) or S_k(x^p)."""
    fc = _ceiling(ceiling) or DEFAULT_FACTOR_CEILING
    rng = cell_rng(seed, k, p or 0)
    try:
        if p is None:
            cert = certify_base(k, rng, fc)
        else:
            cert = certify_power(k, p, rng, fc, routes=route)
    except HypothesisViolation as exc:
        _fail(EXIT_HYPOTHESIS, f"k={k}: " + "; ".join(exc.reasons))
    except DomainError as exc:
        raise click.UsageError(str(exc))
    except CeilingExceeded as exc:
        _fail(EXIT_CEILING, str(exc))
    _emit([records.to_record(cert)], fmt)


@cli.command("search")
@click.option("--k-min", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--k-max", type=click.IntRange(min=1), required=True)
@click.option("--p-min", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--p-max", type=click.IntRange(min=2), required=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--checkpoint", type=click.Path(dir_okay=False), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (default stdout).")
@common
def cmd_search(k_min, k_max, p_min, p_max, jobs, checkpoint, out, fmt, seed, ceiling):
    """Grid search over (k, p), one record per admissible cell."""
    ceiling = _ceiling(ceiling)
    if checkpoint and not out:
        raise click.UsageError("--checkpoint needs --out")
    try:
        cfg = SearchConfig(k_min, k_max, p_min, p_max, jobs, checkpoint, ceiling,
                           ceiling or DEFAULT_FACTOR_CEILING, seed, fmt)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    try:
        if out:
            n = run_search(cfg, out)
            logging.getLogger(__name__).info("wrote %d records to %s", n, out)
        else:
            _emit((records.to_record(r) for r in search_shanks_primes(cfg)), fmt)
    except CheckpointError as exc:
        raise click.UsageError(str(exc))
    except CeilingExceeded as exc:
        _fail(EXIT_CEILING, str(exc))
    except TheoremViolation as exc:
        _fail(EXIT_VERIFY, str(exc))


@cli.command("verify")
@click.option("--suite", type=click.Choice(["table1", "theorem"]), required=True)
@click.option("--k-min", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--k-max", type=click.IntRange(min=1), default=30, show_default=True)
@click.option("--p-max", type=click.IntRange(min=3), default=60, show_default=True)
@common
def cmd_verify(suite, k_min, k_max, p_max, fmt, seed, ceiling):
    """Reproduce Table 1, or check every equivalence on a (k, p) grid."""
    if suite == "table1":
        report = verify_table1(seed)
        lines = [
            {"record": "table1_row", "k": r.k, "p": r.p, "expected": r.expected,
             "pi_p": r.pi_p, "pi_p2": r.pi_p2, "passed": r.passed, "failures": r.failures}
            for r in report.rows
        ]
    else:
        report = verify_theorem_suite(k_max, p_max, k_min=k_min, seed=seed)
        lines = [{"record": "violation", "detail": v} for v in report.violations]
    lines.append({"record": "summary", "suite": suite, "cells": report.cells,
                  "passed": report.passed, "violations": len(report.violations)})
    _emit(lines, fmt)
    if not report.passed:
        sys.exit(EXIT_VERIFY)


def main(argv=None):
    cli.main(args=argv, prog_name="kshanks")


if __name__ == "__main__":
    main()
