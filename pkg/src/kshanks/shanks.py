"""Per-pair theorem checks, the resumable k-Shanks grid search, and Table 1 reproduction."""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Optional

from . import fq, records
from .dedekind import certify_power
from .errors import (
    CheckpointError,
    DomainError,
    HypothesisViolation,
    InternalInconsistency,
    TheoremViolation,
)
from .intpoly import DEFAULT_FACTOR_CEILING, compute_params, factorize, is_prime, primes_between
from .recurrence import period_fast, period_prime_square, ring_criterion

log = logging.getLogger(__name__)

TABLE1 = ((33, 17, 307), (95, 13, 183), (409, 61, 3783), (618, 43, 1893), (987, 101, 10303))


@dataclass(frozen=True)
class SearchRecord:
    k: int
    p: int
    classification: str
    pi_p: int
    pi_p2: int
    is_shanks: bool
    power_monogenic: Optional[bool]
    checks_passed: tuple[str, ...] = ()


@dataclass(frozen=True)
class SearchConfig:
    k_min: int
    k_max: int
    p_min: int = 2
    p_max: int = 100
    jobs: int = 1
    checkpoint: Optional[str] = None
    iteration_ceiling: Optional[int] = None
    factor_ceiling: int = DEFAULT_FACTOR_CEILING
    seed: int = 0
    fmt: str = "json"

    def __post_init__(self):
        if self.k_min < 1 or self.k_max < self.k_min:
            raise DomainError(f"empty or invalid k range [{self.k_min}, {self.k_max}]")
        if self.p_max < max(self.p_min, 2):
            raise DomainError(f"empty p range [{self.p_min}, {self.p_max}]")
        if self.jobs < 1:
            raise DomainError("jobs must be >= 1")
        if self.fmt not in records.FORMATS:
            raise DomainError(f"unknown format {self.fmt!r}")

    def digest(self) -> str:
        """Hash of everything that shapes the output; jobs and checkpoint path excluded."""
        d = asdict(self)
        d.pop("jobs")
        d.pop("checkpoint")
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()[:16]


def cell_rng(seed: int, k: int, p: int) -> random.Random:
    return random.Random(f"{seed}:{k}:{p}")


def lemma31_orders(k: int, p: int, pi_p: int) -> bool:
    """ord(rho) = ord(sigma) = ord(tau) = pi(p) in R_p (irreducible case)."""
    n = p * p + p + 1
    fac = factorize(n)
    sigma, tau = fq.conjugates(k, p)
    return all(fq.unit_order(e, n, fac) == pi_p for e in (fq.rho(k, p), sigma, tau))


def verify_theorem_pair(
    k: int,
    p: int,
    rng: random.Random | None = None,
    factor_ceiling: int = DEFAULT_FACTOR_CEILING,
    iteration_ceiling: int | None = None,
    certify: bool = True,
) -> SearchRecord:
    """Check every applicable statement for one admissible (k, p) and return the record.

    Raises TheoremViolation on the first failed statement.  ``certify=False``
    skips monogenicity (used for p = 2, where the argument needs p >= 3).
    """
    params = compute_params(k, factor_ceiling)
    if not params.hypotheses_ok:
        raise HypothesisViolation(k, params.failure_reasons)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if certify and p == 2:
        raise DomainError("monogenicity checks need an odd prime")
    if rng is None:
        rng = random.Random(0)

    checks = []

    def check(tag, ok, detail):
        if not ok:
            raise TheoremViolation(f"k={k}, p={p}: {tag} failed ({detail})")
        checks.append(tag)

    try:
        cls = fq.classify_shanks_mod_p(k, p, rng)
    except InternalInconsistency as exc:
        raise TheoremViolation(f"k={k}, p={p}: cor26_shape failed ({exc})") from exc
    check("cor26_shape", True, "")

    pi_p = period_fast(k, p, cls, factor_ceiling, iteration_ceiling).pi
    pi_p2 = period_prime_square(k, p, pi_p)
    is_shanks = pi_p2 == pi_p
    check("lemma31_membership", pi_p2 in (pi_p, p * pi_p) and pi_p >= 3, f"pi(p)={pi_p}, pi(p^2)={pi_p2}")

    power_monogenic = None
    if isinstance(cls, fq.IrreducibleModP):
        check("lemma31_div", (p * p + p + 1) % pi_p == 0 and (p == 3 or pi_p != 3), f"pi(p)={pi_p}")
        check("lemma31_orders", lemma31_orders(k, p, pi_p), "orders of rho, sigma, tau differ")
        check("equiv_332", ring_criterion(k, p) == is_shanks, "ring criterion vs periods")
        if certify:
            try:
                cert = certify_power(k, p, rng, factor_ceiling)
            except InternalInconsistency as exc:
                raise TheoremViolation(f"k={k}, p={p}: certification routes disagree ({exc})") from exc
            power_monogenic = cert.monogenic
            check("thm13_2", is_shanks == (not power_monogenic), f"is_shanks={is_shanks}")
    elif isinstance(cls, fq.TripleRoot) and certify:
        try:
            cert = certify_power(k, p, rng, factor_ceiling)
        except InternalInconsistency as exc:
            raise TheoremViolation(f"k={k}, p={p}: {exc}") from exc
        power_monogenic = cert.monogenic
        check("thm13_3", power_monogenic, "S_k(x^p) not monogenic")
    return SearchRecord(k, p, cls.tag, pi_p, pi_p2, is_shanks, power_monogenic, tuple(checks))


# -- grid search --------------------------------------------------------------


def _row(k: int, cfg: SearchConfig) -> list[SearchRecord]:
    params = compute_params(k, cfg.factor_ceiling)
    if not params.hypotheses_ok:
        return []
    out = []
    for p in primes_between(cfg.p_min, cfg.p_max):
        out.append(verify_theorem_pair(
            k, p, cell_rng(cfg.seed, k, p), cfg.factor_ceiling, cfg.iteration_ceiling,
            certify=p != 2,
        ))
    return out


def read_checkpoint(path: str | os.PathLike, cfg: SearchConfig) -> Optional[int]:
    """Last completed k recorded in the checkpoint, or None if there is none."""
    path = Path(path)
    if not path.exists():
        return None
    raw = path.read_bytes()
    lines = raw.split(b"\n")
    if len(lines) != 3 or lines[2] != b"":
        raise CheckpointError(path, len(raw), "expected exactly two newline-terminated lines")
    if not lines[0].startswith(b"k="):
        raise CheckpointError(path, 0, "first line must be k=<int>")
    try:
        last = int(lines[0][2:].decode())
    except ValueError:
        raise CheckpointError(path, 2, "k is not an integer") from None
    off = len(lines[0]) + 1
    if not lines[1].startswith(b"config="):
        raise CheckpointError(path, off, "second line must be config=<hash>")
    if lines[1][7:].decode(errors="replace") != cfg.digest():
        raise CheckpointError(path, off + 7, "config hash does not match this search")
    if not cfg.k_min - 1 <= last <= cfg.k_max:
        raise CheckpointError(path, 2, f"k={last} outside the configured range")
    return last


def write_checkpoint(path: str | os.PathLike, k: int, cfg: SearchConfig) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(f"k={k}\nconfig={cfg.digest()}\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _rows_in_order(cfg: SearchConfig, ks: range) -> Iterator[tuple[int, list[SearchRecord]]]:
    if cfg.jobs == 1:
        for k in ks:
            yield k, _row(k, cfg)
        return
    window = 4 * cfg.jobs
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        pending: dict[int, object] = {}
        it = iter(ks)
        for k in it:
            pending[k] = pool.submit(_row, k, cfg)
            if len(pending) >= window:
                break
        for k in ks:
            if k not in pending:
                continue
            rows = pending.pop(k).result()
            nxt = next(it, None)
            if nxt is not None:
                pending[nxt] = pool.submit(_row, nxt, cfg)
            yield k, rows


def search_shanks_primes(cfg: SearchConfig) -> Iterator[SearchRecord]:
    """Records for every admissible (k, p) cell in (k, p) order.

    With ``cfg.checkpoint`` set, resumes after the last completed k and marks
    each k row complete once the consumer has taken its last record.
    """
    start = cfg.k_min
    if cfg.checkpoint:
        last = read_checkpoint(cfg.checkpoint, cfg)
        if last is not None:
            start = last + 1
            log.info("resuming after k=%d", last)
    for k, rows in _rows_in_order(cfg, range(start, cfg.k_max + 1)):
        if not rows:
            params = compute_params(k, cfg.factor_ceiling)
            if not params.hypotheses_ok:
                log.info("skipping k=%d: %s", k, ", ".join(params.failure_reasons))
        yield from rows
        if cfg.checkpoint:
            write_checkpoint(cfg.checkpoint, k, cfg)


def run_search(cfg: SearchConfig, out: str | os.PathLike, stop_after_k: int | None = None) -> int:
    """Stream records to ``out`` in ``cfg.fmt``, resuming if a checkpoint exists.

    On resume the output is cut back to the rows the checkpoint vouches for,
    so an interrupted run continues byte-for-byte.  ``stop_after_k`` ends the
    run early after that row (simulates an interruption).  Returns the
    number of records written by this call.
    """
    out = Path(out)
    last = read_checkpoint(cfg.checkpoint, cfg) if cfg.checkpoint else None
    if last is None:
        out.write_bytes(b"")
    else:
        _truncate_output(out, cfg.fmt, last)
    written = 0
    with open(out, "a", encoding="utf-8", newline="") as fh:
        header_done = out.stat().st_size > 0
        for rec in search_shanks_primes(cfg):
            if stop_after_k is not None and rec.k > stop_after_k:
                break
            flat = records.to_record(rec)
            if cfg.fmt == "csv" and not header_done:
                fh.write(records.csv_header(flat))
                header_done = True
            fh.write(records.render(flat, cfg.fmt))
            fh.flush()
            written += 1
    return written


def _truncate_output(out: Path, fmt: str, last_k: int) -> None:
    if not out.exists():
        if last_k >= 0:
            out.write_bytes(b"")
        return
    data = out.read_bytes()
    offset = 0
    header = None
    keep = 0
    for line in data.splitlines(keepends=True):
        text = line.decode("utf-8")
        if fmt == "csv" and header is None:
            header = next(csv.reader([text]))
            offset += len(line)
            keep = offset
            continue
        try:
            k = int(records.parse_line(text, fmt, header)["k"])
        except (ValueError, KeyError) as exc:
            raise CheckpointError(out, offset, f"unparseable output line ({exc})") from None
        if not line.endswith(b"\n"):
            break
        if k > last_k:
            break
        offset += len(line)
        keep = offset
    with open(out, "r+b") as fh:
        fh.truncate(keep)


# -- reports ------------------------------------------------------------------


@dataclass
class Table1Row:
    k: int
    p: int
    expected: int
    pi_p: Optional[int] = None
    pi_p2: Optional[int] = None
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class Report:
    suite: str
    rows: list = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    cells: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations and all(getattr(r, "passed", True) for r in self.rows)


def verify_table1(seed: int = 0) -> Report:
    report = Report("table1")
    for k, p, expected in TABLE1:
        row = Table1Row(k, p, expected)
        try:
            if not compute_params(k).hypotheses_ok:
                row.failures.append("k not admissible")
            cls = fq.classify_shanks_mod_p(k, p, cell_rng(seed, k, p))
            if not isinstance(cls, fq.IrreducibleModP):
                row.failures.append(f"S_k mod p is {cls.tag}")
            rec = verify_theorem_pair(k, p, cell_rng(seed, k, p))
            row.pi_p, row.pi_p2 = rec.pi_p, rec.pi_p2
            if rec.pi_p != expected or rec.pi_p2 != expected:
                row.failures.append(f"periods {rec.pi_p}, {rec.pi_p2} != {expected}")
            if not rec.is_shanks:
                row.failures.append("not a k-Shanks prime")
            if rec.power_monogenic is not False:
                row.failures.append("S_k(x^p) not certified non-monogenic")
        except Exception as exc:  # a failed row is reported, never raised
            row.failures.append(f"{type(exc).__name__}: {exc}")
        report.rows.append(row)
        report.cells += 1
    return report


def verify_theorem_suite(k_max: int, p_max: int, k_min: int = 1, p_min: int = 3, seed: int = 0) -> Report:
    """verify_theorem_pair over every admissible k and odd prime p in range."""
    report = Report("theorem")
    for k in range(k_min, k_max + 1):
        if not compute_params(k).hypotheses_ok:
            continue
        for p in primes_between(max(p_min, 3), p_max):
            try:
                report.rows.append(verify_theorem_pair(k, p, cell_rng(seed, k, p)))
            except TheoremViolation as exc:
                report.violations.append(str(exc))
            report.cells += 1
    return report
