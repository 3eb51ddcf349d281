"""Search runs that return certificate documents.

Each ``run_*`` function takes already-parsed inputs plus their text form,
runs one search and returns a certificate (see :mod:`hjlift.certificates`).
The command-line driver is a thin layer over these.
"""

from __future__ import annotations

import time

import numpy as np

from . import certificates as cert
from .hj import Coloring, find_mono_line, hj_number, search_line_free
from .jset import (
    ADDITION,
    WORDS,
    Bounds,
    Exhausted,
    canonical_pool,
    find_witness,
    find_witness_adequate,
)
from .lift import (
    CSetStructure,
    FixedLevel,
    SameLevel,
    cset_sequence,
    fs_constrained_find,
    lemma1_lift,
    substitutions,
    theorem16_find,
    theorem17_find,
    theorem3_find,
)
from .predicates import TRUE, parse_predicate
from .psg import FsTruncation, TableTruncation, is_adequate_truncated, sigma
from .sequences import parse_sequences
from .words import Alphabet, parse_hom

_clock = time.perf_counter


def _finish(kind, inputs, status, result, table=None, started=0.0, workers=1):
    run = {"wall_clock_s": round(_clock() - started, 6), "workers": workers}
    return cert.envelope(kind, inputs, status, result, table, run)


def _bounds_echo(b: Bounds) -> dict:
    return {"m_max": b.m_max, "horizon": b.t_horizon, "pool_len": b.pool_len}


def _seq_lines(text: str) -> list[str]:
    return [ln.split(";", 1)[0].strip() for ln in text.splitlines() if ln.split(";", 1)[0].strip()]


# ---------------------------------------------------------------------------
# hj


def run_find_line(coloring: Coloring, n: int, alphabet: Alphabet, workers: int = 1) -> dict:
    started = _clock()
    line = find_mono_line(coloring, n, workers)
    inputs, status, result = cert.find_line_result(coloring, n, line, alphabet)
    return _finish("hj.find-line", inputs, status, result, started=started, workers=workers)


def run_line_free(k, c, N, alphabet: Alphabet, mode="auto", workers: int = 1) -> dict:
    started = _clock()
    coloring = search_line_free(k, c, N, mode, workers)
    inputs, status, result = cert.line_free_result(k, c, N, coloring, alphabet)
    return _finish("hj.line-free", inputs, status, result, started=started, workers=workers)


def run_hj_number(k, c, N_max, alphabet: Alphabet, workers: int = 1) -> dict:
    started = _clock()
    r = hj_number(k, c, N_max, workers)
    inputs, status, result = cert.hj_number_result(r, alphabet)
    return _finish("hj.number", inputs, status, result, started=started, workers=workers)


# ---------------------------------------------------------------------------
# psg


def truncation_from_config(cfg: dict, alphabet: Alphabet | None = None):
    mode = cfg.get("mode", "FS")
    if mode == "table":
        return TableTruncation(cfg["labels"], cfg["table"])
    gens = cfg["generators"]
    if "horizon" in cfg:
        gens = gens[: cfg["horizon"]]
    if gens and isinstance(gens[0], str):
        if alphabet is None:
            raise ValueError("word generators need 'letters'")
        gens = [alphabet.parse(g) for g in gens]
    return FsTruncation(gens, mode)


def _truncation_echo(cfg: dict) -> dict:
    keys = ("mode", "generators", "horizon", "letters", "labels", "table")
    return {k: cfg[k] for k in keys if k in cfg}


def _config_alphabet(cfg: dict) -> Alphabet | None:
    return Alphabet(cfg["letters"], 20) if "letters" in cfg else None


def run_psg_adequacy(cfg: dict, subset_bound: int, within: int | None = None) -> dict:
    started = _clock()
    t = truncation_from_config(cfg, _config_alphabet(cfg))
    report = is_adequate_truncated(t, subset_bound, within)
    status, result = cert.adequacy_result(report)
    if t.mode == "table" and report.failing is not None:
        result["failing"] = list(report.failing)
    inputs = {"truncation": _truncation_echo(cfg), "subset_bound": subset_bound, "within": within}
    return _finish("psg.adequacy", inputs, status, result, started=started)


def run_psg_sigma(cfg: dict, H: list) -> dict:
    started = _clock()
    t = truncation_from_config(cfg, _config_alphabet(cfg))
    if isinstance(t, FsTruncation):
        elems = [t.element(h) for h in H]
        out = sorted(sigma(elems, t), key=t.key)
        result = {"sigma": [list(e.indices) for e in out]}
    else:
        out = sorted(sigma(H, t), key=t.key)
        result = {"sigma": out}
    inputs = {"truncation": _truncation_echo(cfg), "H": [list(h) if isinstance(h, (list, tuple)) else h for h in H]}
    return _finish("psg.sigma", inputs, "found", result, started=started)


# ---------------------------------------------------------------------------
# jset


def run_jset_check(
    pred_text: str,
    seqs_text: str,
    bounds: Bounds,
    alphabet: Alphabet | None = None,
    semigroup: str = "words",
    pool: list | None = None,
    truncation: dict | None = None,
    L: list | None = None,
) -> dict:
    started = _clock()
    t = None
    if truncation is not None:
        t = truncation_from_config(truncation, _config_alphabet(truncation))
        alphabet = alphabet or _config_alphabet(truncation)
    A = parse_predicate(pred_text, alphabet)
    F = parse_sequences(seqs_text, alphabet, t)
    inputs = {
        "predicate": pred_text.strip(),
        "sequences": _seq_lines(seqs_text),
        "bounds": _bounds_echo(bounds),
        "semigroup": semigroup if t is None else "truncation",
    }
    if alphabet is not None:
        inputs["letters"] = "".join(alphabet.letters)
    if t is not None:
        pick = t.element if isinstance(t, FsTruncation) else (lambda h: h)
        echo = (lambda h: sorted(h)) if isinstance(t, FsTruncation) else (lambda h: h)
        Lel = [pick(h) for h in (L or [])]
        pool_el = None if pool is None else [pick(h) for h in pool]
        found = find_witness_adequate(A, F, Lel, t, bounds, pool_el)
        op = t.op
        inputs["truncation"] = _truncation_echo(truncation)
        inputs["L"] = [echo(h) for h in (L or [])]
        if pool is None:
            inputs["pool"] = None
        else:
            back = {pick(h): echo(h) for h in pool}
            inputs["pool"] = [back[e] for e in canonical_pool(pool_el)]
    else:
        sg = {"words": WORDS, "addition": ADDITION}[semigroup]
        if pool is not None and sg is WORDS:
            pool = [alphabet.parse(p) if isinstance(p, str) else p for p in pool]
        found = find_witness(A, F, bounds, pool, sg, alphabet)
        op = sg.op
        if pool is not None:
            inputs["pool"] = sorted(cert.element_text(x, alphabet) for x in set(pool)) if sg is WORDS else sorted(set(pool))
        else:
            inputs["pool"] = None
    products = []
    if not isinstance(found, Exhausted):
        for f in F:
            p = found.a[0]
            for j in range(found.m):
                p = op(op(p, f(found.t[j])), found.a[j + 1])
            products.append((p, A(p)))
    status, result = cert.witness_result(found, F, products, alphabet)
    return _finish("jset.check", inputs, status, result, started=started, workers=bounds.workers)


# ---------------------------------------------------------------------------
# lift


def _homs(texts, alphabet, n):
    if not texts:
        return substitutions(alphabet, n), [h.describe(alphabet) for h in substitutions(alphabet, n)]
    homs = [parse_hom(t, alphabet) for t in texts]
    return homs, [h.describe(alphabet) for h in homs]


def run_lemma1(pred_text, seqs_text, hom_texts, alphabet: Alphabet, n: int, bounds: Bounds) -> dict:
    started = _clock()
    D = parse_predicate(pred_text, alphabet)
    E = parse_sequences(seqs_text, alphabet)
    F, hom_echo = _homs(hom_texts, alphabet, n)
    r = lemma1_lift(E, F, D, alphabet, bounds, n=n)
    inputs = {
        "letters": "".join(alphabet.letters),
        "n": n,
        "predicate": pred_text.strip(),
        "sequences": _seq_lines(seqs_text),
        "homs": hom_echo,
        "bounds": _bounds_echo(bounds),
    }
    if isinstance(r, Exhausted):
        result = {"candidates": r.candidates, "reason": r.reason}
        return _finish("lift.lemma1", inputs, "exhausted", result, started=started, workers=bounds.workers)
    fmt = alphabet.format
    result = {"m": r.witness.m, "t": list(r.witness.t), "a": [fmt(x) for x in r.witness.a],
              "inner": {"m": r.inner.m, "t": list(r.inner.t), "a": [fmt(x) for x in r.inner.a]}}
    table = [
        {"f": row["f"], "nu": row["nu"], "product": fmt(row["product"]), "image": fmt(row["image"]),
         "inner_product": fmt(row["inner_product"]), "in_D": row["in_D"]}
        for row in r.table
    ]
    return _finish("lift.lemma1", inputs, "found", result, table, started, bounds.workers)


def _instance_table(instances, alphabet: Alphabet):
    return [{"x": alphabet.format(x), "instance": alphabet.format(w), "in_D": ok} for x, w, ok in instances]


def run_thm3(pred_text, n, alphabet: Alphabet, bounds: Bounds, word_length=12, strategy="lift") -> dict:
    started = _clock()
    D = parse_predicate(pred_text, alphabet)
    r = theorem3_find(D, n, alphabet, bounds, word_length, strategy)
    inputs = {"letters": "".join(alphabet.letters), "n": n, "predicate": pred_text.strip(),
              "bounds": _bounds_echo(bounds), "word_length": word_length, "strategy": strategy}
    if isinstance(r, Exhausted):
        return _finish("lift.thm3", inputs, "exhausted", {"reason": r.reason}, started=started)
    result = {"word": alphabet.format(r.word), "path": r.path,
              "lifted_word": None if r.lifted_word is None else alphabet.format(r.lifted_word)}
    if r.lift is not None:
        w = r.lift.witness
        result["lift_witness"] = {"m": w.m, "t": list(w.t), "a": [alphabet.format(x) for x in w.a]}
    return _finish("lift.thm3", inputs, "found", result, _instance_table(r.instances, alphabet), started)


def run_fs1(pred_text, x, alphabet: Alphabet, word_length=12) -> dict:
    started = _clock()
    D = parse_predicate(pred_text, alphabet)
    r = fs_constrained_find(D, x, alphabet, word_length)
    inputs = {"letters": "".join(alphabet.letters), "predicate": pred_text.strip(), "x": list(x),
              "word_length": word_length}
    if isinstance(r, Exhausted):
        return _finish("lift.fs1", inputs, "exhausted", {"reason": r.reason}, started=started)
    result = {"word": alphabet.format(r.word), "tau": r.tau, "indices": list(r.indices),
              "padded": list(r.padded), "padded_indices": list(r.padded_indices)}
    return _finish("lift.fs1", inputs, "found", result, _instance_table(r.instances, alphabet), started)


def run_thm16(pred_text, n, k, pattern_texts, alphabet: Alphabet, word_length=12) -> dict:
    started = _clock()
    D = parse_predicate(pred_text, alphabet) if pred_text is not None else TRUE
    y = [alphabet.parse(p) for p in pattern_texts]
    r = theorem16_find(D, n, k, y, alphabet, word_length)
    inputs = {"letters": "".join(alphabet.letters), "n": n, "k": k,
              "predicate": (pred_text or "true").strip(), "patterns": list(pattern_texts),
              "word_length": word_length}
    if isinstance(r, Exhausted):
        return _finish("lift.thm16", inputs, "exhausted", {"reason": r.reason}, started=started)
    result = {"word": alphabet.format(r.word), "extract": alphabet.format(r.extract), "indices": list(r.indices)}
    return _finish("lift.thm16", inputs, "found", result, _instance_table(r.instances, alphabet), started)


def run_thm17(pred_text, hom_texts, M, B, n, alphabet: Alphabet, word_length=12) -> dict:
    started = _clock()
    D = parse_predicate(pred_text, alphabet) if pred_text is not None else TRUE
    F, hom_echo = _homs(hom_texts, alphabet, n)
    M = np.asarray(M)
    r = theorem17_find(D, F, M, B, n, alphabet, word_length=word_length)
    inputs = {"letters": "".join(alphabet.letters), "n": n, "predicate": (pred_text or "true").strip(),
              "homs": hom_echo, "matrix": M.tolist(), "fs_prefixes": [list(b) for b in B],
              "taus": [f"count:{i}" for i in range(1, n + 1)], "word_length": word_length}
    if isinstance(r, Exhausted):
        return _finish("lift.thm17", inputs, "exhausted", {"reason": r.reason}, started=started)
    result = {"word": alphabet.format(r.word), "psi": list(r.psi), "image": list(r.image),
              "index_sets": [list(s) for s in r.index_sets]}
    table = [{"nu": i, "image": alphabet.format(img), "in_D": ok} for i, (_, img, ok) in enumerate(r.nu_images)]
    return _finish("lift.thm17", inputs, "found", result, table, started)


def structure_from_config(cfg: dict, alphabet: Alphabet) -> CSetStructure:
    levels = tuple(parse_predicate(p, alphabet) for p in cfg["levels"])
    shift = cfg.get("shift", "same")
    if shift == "same":
        smap = SameLevel()
    elif isinstance(shift, str) and shift.startswith("fixed:"):
        smap = FixedLevel(int(shift.split(":", 1)[1]))
    else:
        raise ValueError(f"unknown shift map {shift!r}")
    return CSetStructure(levels, smap)


def run_cset(cfg: dict, L: int, alphabet: Alphabet, n: int = 1, hom_texts=None, word_length=12) -> dict:
    started = _clock()
    cs = structure_from_config(cfg, alphabet)
    F, hom_echo = _homs(hom_texts or cfg.get("homs"), alphabet, n)
    r = cset_sequence(cs, F, L, alphabet, n, word_length)
    inputs = {"letters": "".join(alphabet.letters), "n": n, "levels": list(cfg["levels"]),
              "shift": cfg.get("shift", "same"), "homs": hom_echo, "length": L, "word_length": word_length}
    result = {"sequence": [alphabet.format(w) for w in r.sequence], "levels_used": r.levels_used}
    if not r.complete:
        result.update(failed_at=r.failed_at, reason=r.reason)
        return _finish("lift.cset", inputs, "exhausted", result, started=started)
    table = [{"H": list(H), "phi": list(phi), "product": alphabet.format(p), "in_D1": ok} for H, phi, p, ok in r.table]
    return _finish("lift.cset", inputs, "found", result, table, started)


STATUS_CODES = {"found": 0, "none": 1, "exhausted": 1, "unresolved": 1}
