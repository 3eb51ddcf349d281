"""Certificate documents for search results.

A certificate is a JSON object::

    {"schema": ..., "tool_version": ..., "kind": "hj.number",
     "input": {...}, "status": "found" | "none" | "exhausted" | "unresolved",
     "result": {...}, "table": [...],
     "run": {"wall_clock_s": ..., "workers": ...},
     "attestation": {"order": "canonical-least", "result_sha256": ...}}

Everything except ``run`` and ``attestation`` is covered by the hash, so
the worker count and timing never change the attested content. Words are
always in their textual form (``a#1b``).
"""

from __future__ import annotations

import hashlib
import json
import math

from . import __version__
from .hj import Coloring, HJNumber, Line, count_roots
from .jset import Exhausted, Witness
from .psg import AdequacyReport, FsElement
from .words import Alphabet

SCHEMA = "hjlift-cert/1"
HASHED = ("schema", "kind", "input", "status", "result", "table")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def result_hash(cert: dict) -> str:
    body = {key: cert.get(key) for key in HASHED}
    return hashlib.sha256(canonical_json(body).encode("utf-8")).hexdigest()


def envelope(kind: str, inputs: dict, status: str, result: dict, table=None, run=None) -> dict:
    cert = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "kind": kind,
        "input": inputs,
        "status": status,
        "result": result,
        "table": table or [],
        "run": run or {},
    }
    cert["attestation"] = {"order": "canonical-least", "result_sha256": result_hash(cert)}
    return cert


def dumps(cert: dict) -> str:
    return json.dumps(cert, indent=2, ensure_ascii=False) + "\n"


def hj_letters(k: int) -> str:
    return "abcdefghijklmnopqrstuvwxyz"[:k] if k <= 26 else None


def coloring_rows(c: Coloring, alphabet: Alphabet) -> list:
    return [[alphabet.format(w), col] for w, col in c.items()]


def element_text(x, alphabet: Alphabet | None) -> str | int:
    if isinstance(x, FsElement):
        return x.format(lambda v: alphabet.format(v) if isinstance(v, tuple) else str(v))
    if isinstance(x, tuple):
        return alphabet.format(x)
    return x


def find_line_result(c: Coloring, n: int, line: Line | None, alphabet: Alphabet):
    inputs = {"k": c.k, "letters": "".join(alphabet.letters), "n": n, "coloring": coloring_rows(c, alphabet)}
    checked = sum(count_roots(c.k, N, n) for N in c.lengths if N >= n)
    if line is None:
        return inputs, "none", {"root": None, "checked_roots": checked}
    result = {
        "root": alphabet.format(line.root),
        "points": [alphabet.format(p) for p in line.points],
        "color": line.color,
    }
    return inputs, "found", result


def line_free_result(k: int, c: int, N: int, coloring: Coloring | None, alphabet: Alphabet):
    inputs = {"k": k, "c": c, "N": N, "letters": "".join(alphabet.letters)}
    if coloring is None:
        return inputs, "none", {"coloring": None, "colorings_space": c ** (k**N)}
    result = {"coloring": coloring_rows(coloring, alphabet), "checked_lines": count_roots(k, N, 1)}
    return inputs, "found", result


def hj_number_result(r: HJNumber, alphabet: Alphabet):
    inputs = {"k": r.k, "c": r.c, "N_max": r.N_max, "letters": "".join(alphabet.letters)}
    result = {
        "value": r.value,
        "line_free": {str(N): coloring_rows(col, alphabet) for N, col in r.line_free.items()},
        "cylinder_checks": {str(N): ok for N, ok in r.cylinder_checks.items()},
    }
    return inputs, ("found" if r.resolved else "unresolved"), result


def witness_result(found, F, A_products, alphabet: Alphabet | None) -> tuple[str, dict]:
    if isinstance(found, Exhausted):
        return "exhausted", {"candidates": found.candidates, "reason": found.reason}
    result = {
        "m": found.m,
        "t": list(found.t),
        "a": [element_text(x, alphabet) for x in found.a],
        "products": [
            {"sequence": i, "product": element_text(p, alphabet), "verdict": ok}
            for i, (p, ok) in enumerate(A_products)
        ],
    }
    return "found", result


def adequacy_result(report: AdequacyReport) -> tuple[str, dict]:
    result = {
        "passed": report.passed,
        "failing": None if report.failing is None else [list(e.indices) for e in report.failing],
        "horizon_exhaustion": report.horizon_exhaustion,
        "checked": report.checked,
    }
    return ("found" if report.passed else "exhausted"), result


def product_rows_expected(L: int, nhoms: int) -> int:
    """Number of ``(H, phi)`` pairs: ``sum_j C(L, j) nhoms^j``."""
    return (1 + nhoms) ** L - 1
