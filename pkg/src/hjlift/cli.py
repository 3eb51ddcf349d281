"""``hjlift`` command-line driver.

Exit status: 0 found or verified, 1 exhausted / unresolved / none,
2 input error or failed verification. A certificate is written (to
``--out`` or stdout) whenever the status is 0 or 1.

Default bounds can come from a JSON file named by ``HJLIFT_BOUNDS``, e.g.
``{"m_max": 2, "horizon": 8, "pool_len": 2, "word_length": 12, "threads": 1}``;
command-line flags override it.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import certificates as cert
from . import runs, verifier
from .hj import Coloring
from .jset import Bounds
from .predicates import PredicateSyntaxError
from .psg import PsgError
from .sequences import SequenceSyntaxError
from .words import Alphabet, WordError

log = logging.getLogger("hjlift")

BOUNDS_ENV = "HJLIFT_BOUNDS"
FALLBACK = {"m_max": 2, "horizon": 8, "pool_len": 2, "word_length": 12, "threads": 1, "letters": "ab"}


class InputError(Exception):
    pass


def load_defaults() -> dict:
    out = dict(FALLBACK)
    path = os.environ.get(BOUNDS_ENV)
    if path:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{BOUNDS_ENV}={path}: {exc}") from None
        unknown = set(data) - set(FALLBACK)
        if unknown:
            raise InputError(f"{BOUNDS_ENV}: unknown keys {sorted(unknown)}")
        out.update(data)
    return out


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _json(path: str):
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from None


def _int_rows(path: str) -> list[list[int]]:
    rows = []
    for lineno, raw in enumerate(_read(path).splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(x) for x in line.replace(",", " ").split()])
        except ValueError:
            raise InputError(f"{path}: line {lineno}: expected integers, got {raw.strip()!r}") from None
    return rows


def read_coloring(path: str, k: int, alphabet: Alphabet) -> Coloring:
    mapping = {}
    for lineno, raw in enumerate(_read(path).splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise InputError(f"{path}: line {lineno}: expected word<TAB>color")
        try:
            w = alphabet.parse(parts[0])
            mapping[w] = int(parts[1])
        except (ValueError, WordError) as exc:
            raise InputError(f"{path}: line {lineno}: {exc}") from None
    if not mapping:
        raise InputError(f"{path}: empty coloring")
    try:
        return Coloring.from_mapping(k, mapping)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def read_patterns(path: str) -> list[str]:
    return [ln.split(";", 1)[0].strip() for ln in _read(path).splitlines() if ln.split(";", 1)[0].strip()]


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="certificate path (default: stdout)")
    common.add_argument("--threads", type=int, help="worker threads (results do not depend on it)")
    common.add_argument("--letters", help="alphabet letters, e.g. 'ab'")
    common.add_argument("--word-length", type=int, help="cap on candidate word length")
    common.add_argument("--log", help="append a JSON run record to this file")

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--m-max", type=int)
    bounds.add_argument("--horizon", type=int)
    bounds.add_argument("--pool-len", type=int)

    p = argparse.ArgumentParser(prog="hjlift", description="Certificate-producing combinatorial searches.")
    sub = p.add_subparsers(dest="group", required=True)

    hj = sub.add_parser("hj", help="Hales-Jewett searches").add_subparsers(dest="cmd", required=True)
    s = hj.add_parser("find-line", parents=[common])
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--colors", required=True, help="file of word<TAB>color lines")
    s.add_argument("--n", type=int, default=1)
    s = hj.add_parser("line-free", parents=[common])
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--mode", choices=["auto", "exhaustive", "backtrack"], default="auto")
    s = hj.add_parser("number", parents=[common])
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--max", type=int, required=True, dest="N_max")

    js = sub.add_parser("jset", help="bounded J-set witness search").add_subparsers(dest="cmd", required=True)
    s = js.add_parser("check", parents=[common, bounds])
    s.add_argument("--pred", required=True)
    s.add_argument("--seqs", required=True)
    s.add_argument("--semigroup", choices=["words", "addition"], default="words")
    s.add_argument("--pool", help="comma-separated pool elements; index sets as 1+2")
    s.add_argument("--truncation", help="JSON truncation config")
    s.add_argument("--L", action="append", default=[], help="element of L (indices '1,2' or a label)")

    ps = sub.add_parser("psg", help="partial semigroup checks").add_subparsers(dest="cmd", required=True)
    s = ps.add_parser("adequacy", parents=[common])
    s.add_argument("--config", required=True)
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--within", type=int)
    s = ps.add_parser("sigma", parents=[common])
    s.add_argument("--config", required=True)
    s.add_argument("--H", action="append", required=True, help="element (indices '1,3' or a label)")

    lf = sub.add_parser("lift", help="witness lifting and n-variable word theorems").add_subparsers(
        dest="cmd", required=True
    )
    s = lf.add_parser("lemma1", parents=[common, bounds])
    s.add_argument("--pred", required=True)
    s.add_argument("--seqs", required=True)
    s.add_argument("--hom", action="append", default=[])
    s.add_argument("--n", type=int, default=1)
    s = lf.add_parser("thm3", parents=[common, bounds])
    s.add_argument("--pred", required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--strategy", choices=["lift", "direct"], default="lift")
    s = lf.add_parser("fs1", parents=[common])
    s.add_argument("--pred", required=True)
    s.add_argument("--x", required=True, help="comma-separated positive integers")
    s = lf.add_parser("thm16", parents=[common])
    s.add_argument("--pred")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--pattern-seq", required=True, help="one pattern word per line")
    s = lf.add_parser("thm17", parents=[common])
    s.add_argument("--pred")
    s.add_argument("--hom", action="append", default=[])
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--matrix", required=True)
    s.add_argument("--fs-prefixes", required=True)
    s = lf.add_parser("cset", parents=[common])
    s.add_argument("--structure", required=True, help="JSON: levels, shift, homs")
    s.add_argument("--len", type=int, required=True, dest="length")
    s.add_argument("--n", type=int, default=1)

    s = sub.add_parser("verify", parents=[common], help="re-check a certificate independently")
    s.add_argument("--cert", required=True)
    s.add_argument("--limit", type=int, default=verifier.DEFAULT_LIMIT, help="brute-force replay budget")
    return p


# ---------------------------------------------------------------------------
# dispatch


def _opt(args, name, defaults):
    v = getattr(args, name, None)
    return defaults[name] if v is None else v


def _bounds(args, d) -> Bounds:
    try:
        return Bounds(_opt(args, "m_max", d), _opt(args, "horizon", d), _opt(args, "pool_len", d), _opt(args, "threads", d))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _hj_alphabet(k: int, letters: str | None) -> Alphabet:
    letters = letters or cert.hj_letters(k)
    if letters is None or len(letters) != k:
        raise InputError(f"--letters must name exactly k={k} letters")
    return Alphabet(letters)


def _element(text: str, trunc_cfg: dict):
    if trunc_cfg.get("mode") == "table":
        for lab in trunc_cfg["labels"]:
            if str(lab) == text:
                return lab
        raise InputError(f"{text!r} is not a label of the table")
    return _csv_ints(text)


def dispatch(args, d) -> dict:
    g, c = args.group, args.cmd
    workers = _opt(args, "threads", d)
    wl = _opt(args, "word_length", d)
    if g == "hj":
        alphabet = _hj_alphabet(args.k, args.letters)
        if c == "find-line":
            return runs.run_find_line(read_coloring(args.colors, args.k, alphabet), args.n, alphabet, workers)
        if c == "line-free":
            return runs.run_line_free(args.k, args.c, args.N, alphabet, args.mode, workers)
        return runs.run_hj_number(args.k, args.c, args.N_max, alphabet, workers)
    alphabet = Alphabet(_opt(args, "letters", d), max_length=max(16, wl))
    if g == "jset":
        trunc = _json(args.truncation) if args.truncation else None
        L = [_element(x, trunc) for x in args.L] if trunc else None
        if args.L and trunc is None:
            raise InputError("--L needs --truncation")
        pool = None
        if args.pool:
            items = [x.strip() for x in args.pool.split(",") if x.strip()]
            if trunc is not None:
                pool = [_element(x.replace("+", ","), trunc) for x in items]
            elif args.semigroup == "addition":
                pool = _csv_ints(args.pool)
            else:
                pool = items
        letters = None if (args.semigroup == "addition" and not args.letters) else alphabet
        if trunc is not None and not args.letters:
            letters = None
        return runs.run_jset_check(
            _read(args.pred), _read(args.seqs), _bounds(args, d), letters, args.semigroup, pool, trunc, L
        )
    if g == "psg":
        cfg = _json(args.config)
        if c == "adequacy":
            return runs.run_psg_adequacy(cfg, args.bound, args.within)
        return runs.run_psg_sigma(cfg, [_element(h, cfg) for h in args.H])
    if g == "lift":
        if c == "lemma1":
            return runs.run_lemma1(_read(args.pred), _read(args.seqs), args.hom, alphabet, args.n, _bounds(args, d))
        if c == "thm3":
            b = _bounds(args, d)
            return runs.run_thm3(_read(args.pred), args.n, alphabet, b, wl, args.strategy)
        if c == "fs1":
            return runs.run_fs1(_read(args.pred), _csv_ints(args.x), alphabet, wl)
        pred = _read(args.pred) if getattr(args, "pred", None) else None
        if c == "thm16":
            return runs.run_thm16(pred, args.n, args.k, read_patterns(args.pattern_seq), alphabet, wl)
        if c == "thm17":
            M = _int_rows(args.matrix)
            B = _int_rows(args.fs_prefixes)
            n = args.n or (len(M[0]) if M else 0)
            return runs.run_thm17(pred, args.hom, M, B, n, alphabet, wl)
        structure = _json(args.structure)
        return runs.run_cset(structure, args.length, alphabet, args.n, structure.get("homs"), wl)
    raise InputError(f"unknown command {g} {c}")


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _setup_log(path: str | None) -> None:
    log.handlers.clear()
    log.propagate = False
    if path:
        handler = logging.FileHandler(path, encoding="utf-8")
        handler.setFormatter(logging.Formatter("%(asctime)s %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.INFO)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    _setup_log(args.log)
    try:
        d = load_defaults()
        if args.group == "verify":
            try:
                report = verifier.verify_file(args.cert, args.limit)
            except (OSError, json.JSONDecodeError) as exc:
                print(f"hjlift: cannot read certificate: {exc}", file=sys.stderr)
                return 2
            _emit(args, "\n".join(report.lines()) + f"\n{'VERIFIED' if report.ok else 'REJECTED'}\n")
            log.info(json.dumps({"argv": argv, "verified": report.ok}))
            return 0 if report.ok else 2
        for key in ("m_max", "horizon", "pool_len", "threads", "word_length"):
            v = getattr(args, key, None)
            if v is not None and v < 1:
                raise InputError(f"--{key.replace('_', '-')} must be positive")
        doc = dispatch(args, d)
    except (
        InputError,
        PredicateSyntaxError,
        SequenceSyntaxError,
        WordError,
        PsgError,
        ValueError,
        IndexError,
    ) as exc:
        print(f"hjlift: {exc}", file=sys.stderr)
        log.info(json.dumps({"argv": argv, "error": str(exc)}))
        return 2
    _emit(args, cert.dumps(doc))
    status = runs.STATUS_CODES[doc["status"]]
    log.info(
        json.dumps(
            {
                "argv": argv,
                "kind": doc["kind"],
                "status": doc["status"],
                "exit": status,
                "result_sha256": doc["attestation"]["result_sha256"],
                "run": doc["run"],
            }
        )
    )
    return status


if __name__ == "__main__":
    raise SystemExit(main())
