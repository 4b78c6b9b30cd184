"""Flat key/value rendering of result objects, and the three line formats.

Every record carries a ``record`` key naming its type so it can be parsed back.
Structured values (lists, nested verdicts) stay structured in json and are
written as compact JSON strings in csv and text.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .dedekind import DedekindVerdict, MonogenicityCertificate
from .fq import ModPoly
from .intpoly import FactoredDisc, factored_disc_power
from .recurrence import PeriodRecord, ShanksTestResult

FORMATS = ("json", "csv", "text")
_SAFE_INT = 2**53


def _num(v):
    if isinstance(v, int) and not isinstance(v, bool) and abs(v) >= _SAFE_INT:
        return str(v)
    return v


def _int(v):
    return None if v is None else int(v)


def to_record(obj) -> dict[str, Any]:
    from .shanks import SearchRecord

    if isinstance(obj, PeriodRecord):
        return {"record": "period", "k": obj.k, "m": obj.m, "pi": _num(obj.pi), "method": obj.method}
    if isinstance(obj, ShanksTestResult):
        return {
            "record": "shanks_test", "k": obj.k, "p": obj.p,
            "pi_p": _num(obj.pi_p), "pi_p2": _num(obj.pi_p2),
            "is_shanks": obj.is_shanks, "classification": obj.classification,
            "ring_criterion": obj.ring_criterion,
        }
    if isinstance(obj, MonogenicityCertificate):
        out = {
            "record": "certificate", "k": obj.k, "p": obj.p,
            "monogenic": obj.monogenic, "route": obj.route,
            "critical_primes": list(obj.critical_primes),
            "verdicts": [
                {"q": v.q, "divides_index": v.divides_index, "gcd_witness": list(v.gcd_witness.coeffs)}
                for v in obj.verdicts
            ],
            "assumptions": list(obj.assumptions),
        }
        if obj.p is not None:
            out["discriminant"] = factored_disc_power(obj.k, obj.p).as_dict()
        return out
    if isinstance(obj, SearchRecord):
        return {
            "record": "search", "k": obj.k, "p": obj.p, "classification": obj.classification,
            "pi_p": _num(obj.pi_p), "pi_p2": _num(obj.pi_p2), "is_shanks": obj.is_shanks,
            "power_monogenic": obj.power_monogenic, "checks_passed": list(obj.checks_passed),
        }
    raise TypeError(f"no record form for {type(obj).__name__}")


def from_record(rec: dict[str, Any]):
    """Inverse of ``to_record`` (also accepts the string-valued csv/text forms)."""
    from .shanks import SearchRecord

    rec = {key: _decode(val) for key, val in rec.items()}
    kind = rec["record"]
    if kind == "period":
        return PeriodRecord(int(rec["k"]), int(rec["m"]), int(rec["pi"]), rec["method"])
    if kind == "shanks_test":
        return ShanksTestResult(
            int(rec["k"]), int(rec["p"]), int(rec["pi_p"]), int(rec["pi_p2"]),
            rec["is_shanks"], rec["classification"], rec["ring_criterion"],
        )
    if kind == "certificate":
        verdicts = tuple(
            DedekindVerdict(int(v["q"]), v["divides_index"], ModPoly(int(v["q"]), v["gcd_witness"]))
            for v in rec["verdicts"]
        )
        return MonogenicityCertificate(
            int(rec["k"]), _int(rec["p"]), tuple(int(q) for q in rec["critical_primes"]),
            verdicts, rec["monogenic"], rec["route"], tuple(rec["assumptions"]),
        )
    if kind == "search":
        return SearchRecord(
            int(rec["k"]), int(rec["p"]), rec["classification"], int(rec["pi_p"]),
            int(rec["pi_p2"]), rec["is_shanks"], rec["power_monogenic"], tuple(rec["checks_passed"]),
        )
    raise ValueError(f"unknown record type {kind!r}")


def disc_from_dict(d: dict[str, int]) -> FactoredDisc:
    return FactoredDisc(d["sign"], d["p"], d["exp_p"], d["base"], d["exp_base"])


def _decode(val):
    if not isinstance(val, str):
        return val
    if val == "":
        return None
    if val[0] in "[{" or val in ("true", "false", "null"):
        return json.loads(val)
    return val


def _encode_flat(val) -> str:
    if val is None:
        return ""
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, (list, dict)):
        return json.dumps(val, separators=(",", ":"), ensure_ascii=False)
    return str(val)


def csv_header(rec: dict[str, Any]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(list(rec))
    return buf.getvalue()


def render(rec: dict[str, Any], fmt: str) -> str:
    """One line (newline-terminated) for a record; csv lines carry no header."""
    if fmt == "json":
        return json.dumps(rec, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow([_encode_flat(v) for v in rec.values()])
        return buf.getvalue()
    if fmt == "text":
        return " ".join(f"{key}={_encode_flat(v)}" for key, v in rec.items()) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_line(line: str, fmt: str, header: list[str] | None = None) -> dict[str, Any]:
    """Parse one rendered line back into a record dict."""
    if fmt == "json":
        return json.loads(line)
    if fmt == "csv":
        if header is None:
            raise ValueError("csv parsing needs the header")
        values = next(csv.reader([line]))
        if len(values) != len(header):
            raise ValueError("csv row width does not match header")
        return dict(zip(header, values))
    if fmt == "text":
        out = {}
        for tok in _split_text(line.rstrip("\n")):
            key, sep, val = tok.partition("=")
            if not sep:
                raise ValueError(f"malformed token {tok!r}")
            out[key] = val
        return out
    raise ValueError(f"unknown format {fmt!r}")


def _split_text(s: str) -> list[str]:
    # spaces only appear inside JSON-encoded values, never at bracket depth 0
    toks, depth, cur, in_str = [], 0, [], False
    for ch in s:
        if in_str:
            cur.append(ch)
            if ch == '"' and (len(cur) < 2 or cur[-2] != "\\"):
                in_str = False
            continue
        if ch == '"':
            in_str = True
        elif ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
        if ch == " " and depth == 0:
            toks.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        toks.append("".join(cur))
    return toks
