"""Independent certificate checker.

This module deliberately shares no code with the searches: it has its own
word tokenizer, substitution, predicate evaluator, sequence and
homomorphism evaluators and index-set arithmetic. It recomputes every
claim in a certificate from the echoed inputs. Negative claims ("none",
"exhausted") are replayed by brute force when the replay fits in
``limit`` evaluations and are otherwise listed as unchecked.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import re
from dataclasses import dataclass, field

SCHEMA = "hjlift-cert/1"
_HASHED = ("schema", "kind", "input", "status", "result", "table")
DEFAULT_LIMIT = 200_000


class Reject(Exception):
    """A claim in the certificate is false."""


class TooBig(Exception):
    """A replay would exceed the evaluation limit."""


@dataclass
class Report:
    kind: str
    checks: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    unchecked: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"PASS {c}" for c in self.checks]
        out += [f"FAIL {c}" for c in self.failures]
        out += [f"UNCHECKED {c}" for c in self.unchecked]
        return out


# ---------------------------------------------------------------------------
# words: tuples of tokens, a letter is a 1-char str, a variable is an int


class Letters:
    def __init__(self, letters: str):
        self.letters = letters
        self.pos = {ch: i for i, ch in enumerate(letters)}

    def word(self, text: str) -> tuple:
        out = []
        for num, ch in re.findall(r"#(\d+)|(.)", text, flags=re.S):
            if num:
                out.append(int(num))
            elif ch in self.pos:
                out.append(ch)
            else:
                raise Reject(f"symbol {ch!r} not in letters {self.letters!r}")
        return tuple(out)

    @staticmethod
    def text(w: tuple) -> str:
        return "".join(s if isinstance(s, str) else f"#{s}" for s in w)

    def key(self, w: tuple):
        return (len(w), tuple((0, self.pos[s]) if isinstance(s, str) else (1, s) for s in w))

    def words(self, n_vars: int, max_len: int, min_len: int = 1):
        syms = list(self.letters) + list(range(1, n_vars + 1))
        for L in range(min_len, max_len + 1):
            yield from itertools.product(syms, repeat=L)


def varset(w) -> set:
    return {s for s in w if isinstance(s, int)}


def letter_word(w) -> bool:
    return len(w) > 0 and not varset(w)


def n_var_word(w, n: int) -> bool:
    return varset(w) == set(range(1, n + 1)) if n else letter_word(w)


def plug(w, x) -> tuple:
    """Replace variable ``i`` by ``x[i-1]``; every variable ``1..len(x)`` must occur."""
    if varset(w) != set(range(1, len(x) + 1)):
        raise Reject(f"{Letters.text(w)!r} is not a {len(x)}-variable word")
    return tuple(x[s - 1] if isinstance(s, int) else s for s in w)


# ---------------------------------------------------------------------------
# index-set elements of FS/FP truncations


@dataclass(frozen=True)
class El:
    idx: tuple
    value: object

    @property
    def mask(self) -> int:
        return sum(1 << (i - 1) for i in self.idx)


class Trunc:
    def __init__(self, cfg: dict):
        self.mode = cfg.get("mode", "FS")
        self.lt = Letters(cfg.get("letters", ""))
        if self.mode == "table":
            self.labels = list(cfg["labels"])
            self.rows = {
                (a, b): (None if e in (None, ".") else e)
                for a, row in zip(self.labels, cfg["table"])
                for b, e in zip(self.labels, row)
            }
            self.elements = list(self.labels)
            return
        gens = list(cfg["generators"])
        if "horizon" in cfg:
            gens = gens[: cfg["horizon"]]
        self.gens = [self.lt.word(g) if isinstance(g, str) else g for g in gens]
        self.T = len(self.gens)
        self.elements = [self.el(self._idx(m)) for m in range(1, 1 << self.T)]

    @staticmethod
    def _idx(mask: int) -> tuple:
        return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)

    def el(self, idx) -> El:
        idx = tuple(sorted(idx))
        if not idx or len(set(idx)) != len(idx) or idx[0] < 1 or idx[-1] > self.T:
            raise Reject(f"index set {list(idx)} invalid for horizon {self.T}")
        vals = [self.gens[i - 1] for i in idx]
        v = vals[0]
        for g in vals[1:]:
            v = v + g if isinstance(v, tuple) or self.mode == "FS" else v * g
        return El(idx, v)

    def op(self, x, y):
        if self.mode == "table":
            return self.rows[(x, y)]
        if set(x.idx) & set(y.idx):
            return None
        return self.el(x.idx + y.idx)

    def text(self, x) -> str | int:
        if self.mode == "table":
            return x
        v = x.value
        vt = self.lt.text(v) if isinstance(v, tuple) else str(v)
        return f"H=[{','.join(map(str, x.idx))}]; value={vt}"

    def parse(self, text):
        if self.mode == "table":
            if text not in self.labels:
                raise Reject(f"{text!r} is not a label")
            return text
        m = re.fullmatch(r"H=\[([\d,]*)\]; value=(.*)", str(text))
        if not m:
            raise Reject(f"bad element text {text!r}")
        e = self.el([int(i) for i in m.group(1).split(",") if i])
        if self.text(e) != text:
            raise Reject(f"element {text!r} has the wrong value")
        return e

    def sigma_ok(self, L: list, x) -> bool:
        return all(self.op(l, x) is not None for l in L)


# ---------------------------------------------------------------------------
# predicates


def _value(x):
    return x.value if isinstance(x, El) else x


def _sexpr(text: str):
    toks = []
    for ln, line in enumerate(text.splitlines() or [""], 1):
        line = line.split(";", 1)[0]
        for m in re.finditer(r'\(|\)|"[^"]*"|[^\s()"]+', line):
            toks.append((m.group(), ln))
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(toks):
            raise Reject("predicate ended early")
        tok, _ = toks[pos]
        pos += 1
        if tok == "(":
            items = []
            while pos < len(toks) and toks[pos][0] != ")":
                items.append(read())
            if pos >= len(toks):
                raise Reject("unclosed '(' in predicate")
            pos += 1
            return items
        if tok == ")":
            raise Reject("unexpected ')' in predicate")
        return tok

    tree = read()
    if pos != len(toks):
        raise Reject("trailing tokens in predicate")
    return tree


def predicate(text: str, lt: Letters | None):
    tree = _sexpr(text)

    def lit(tok):
        if tok.startswith('"'):
            if lt is None:
                raise Reject("word literal without letters")
            return lt.word(tok[1:-1])
        return int(tok)

    def build(node):
        if isinstance(node, str):
            if node in ("true", "false"):
                return lambda x, v=(node == "true"): v
            if node == "in-s0":
                return lambda x: isinstance(x, tuple) and letter_word(x)
            raise Reject(f"unknown atom {node!r}")
        head, *args = node
        if head == "and":
            subs = [build(a) for a in args]
            return lambda x: all(p(x) for p in subs)
        if head == "or":
            subs = [build(a) for a in args]
            return lambda x: any(p(x) for p in subs)
        if head == "not":
            sub = build(args[0])
            return lambda x: not sub(x)
        if head == "in-s0":
            return lambda x: isinstance(x, tuple) and letter_word(x)
        if head == "length-mod":
            q, r = int(args[0]), int(args[1])
            return lambda x: isinstance(x, tuple) and (len(x) - r) % q == 0
        if head == "value-mod":
            q, r = int(args[0]), int(args[1])
            return lambda x: isinstance(_value(x), int) and (_value(x) - r) % q == 0
        if head == "letter-count-mod":
            (ch,), q, r = lit(args[0]), int(args[1]), int(args[2])
            return lambda x: isinstance(x, tuple) and (x.count(ch) - r) % q == 0
        if head == "starts-with":
            u = lit(args[0])
            return lambda x: isinstance(x, tuple) and x[: len(u)] == u
        if head == "ends-with":
            u = lit(args[0])
            return lambda x: isinstance(x, tuple) and len(x) >= len(u) and x[len(x) - len(u) :] == u
        if head == "contains":
            u = lit(args[0])
            return lambda x: isinstance(x, tuple) and any(
                x[i : i + len(u)] == u for i in range(len(x) - len(u) + 1)
            )
        if head == "member-of":
            items = {lit(a) for a in args}
            return lambda x: _value(x) in items
        if head == "in-fs":
            g = [int(a) for a in args]
            sums = {sum(c) for r in range(1, len(g) + 1) for c in itertools.combinations(g, r)}
            return lambda x: _value(x) in sums
        raise Reject(f"unknown predicate {head!r}")

    return build(tree)


# ---------------------------------------------------------------------------
# homomorphisms and sequences


def hom(text: str, lt: Letters):
    kind, _, arg = text.partition(":")
    if kind == "identity":
        return lambda w: w
    if kind == "subst":
        x = lt.word(arg)
        return lambda w: w if letter_word(w) else plug(w, x)
    if kind == "count":
        i = int(arg)
        return lambda w: w.count(i)
    if kind == "extract":
        k = int(arg.split("/")[0])
        return lambda w: tuple(s for s in w if isinstance(s, int) and s <= k)
    if kind == "table":
        images = {}
        for item in filter(None, arg.split(",")):
            key, _, img = item.partition("=")
            (sym,) = lt.word(key)
            images[sym] = int(img) if img.lstrip("-").isdigit() else lt.word(img)
        if images and all(isinstance(v, int) for v in images.values()):
            return lambda w: sum(images.get(s, 0) for s in w)
        return lambda w: tuple(itertools.chain.from_iterable(images.get(s, (s,)) for s in w))
    raise Reject(f"unknown homomorphism {text!r}")


def sequence(line: str, lt: Letters | None, trunc: Trunc | None):
    """Returns ``(f, horizon)``; ``horizon`` is None for unbounded sequences."""
    kind, *args = line.split()
    if kind == "list":
        if all(a.lstrip("-").isdigit() for a in args):
            terms = [int(a) for a in args]
        else:
            terms = [lt.word(a) for a in args]
        return (lambda t: terms[t - 1]), len(terms)
    if kind == "power":
        base = lt.word(args[0])
        return (lambda t: base * t), None
    if kind == "mult":
        c = int(args[0])
        return (lambda t: c * t), None
    if kind == "block":
        w = int(args[0]) if args else 1
        return (lambda t: trunc.el(range((t - 1) * w + 1, t * w + 1))), trunc.T // w
    raise Reject(f"unknown sequence kind {kind!r}")


def alternating(a, t, f, op):
    """``a_1 f(t_1) a_2 ... f(t_m) a_{m+1}`` under a partial ``op``."""
    terms = [a[0]]
    for j, tj in enumerate(t):
        terms += [f(tj), a[j + 1]]
    p = terms[0]
    for x in terms[1:]:
        p = op(p, x)
        if p is None:
            return None
    return p


# ---------------------------------------------------------------------------
# driver


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def attestation(cert: dict) -> str:
    body = {k: cert.get(k) for k in _HASHED}
    return hashlib.sha256(canonical(body).encode("utf-8")).hexdigest()


class _Ctx:
    def __init__(self, report: Report, limit: int):
        self.report, self.limit = report, limit

    def claim(self, name: str, ok: bool, detail: str = ""):
        if not ok:
            raise Reject(f"{name}: {detail}" if detail else name)
        self.report.checks.append(name)

    def replay(self, name: str, fn):
        """Run a brute-force replay; an oversized replay is recorded as unchecked."""
        try:
            fn()
        except TooBig as exc:
            self.report.unchecked.append(f"{name} ({exc})")
            return
        self.report.checks.append(name)

    def budget(self, n: int, what: str):
        if n > self.limit:
            raise TooBig(f"{what} needs {n} evaluations, limit {self.limit}")


def verify(cert: dict, limit: int = DEFAULT_LIMIT) -> Report:
    kind = cert.get("kind", "?") if isinstance(cert, dict) else "?"
    report = Report(str(kind))
    ctx = _Ctx(report, limit)
    try:
        for key in ("schema", "kind", "input", "status", "result", "table", "attestation"):
            ctx.claim(f"has {key}", key in cert)
        ctx.claim("schema", cert["schema"] == SCHEMA, repr(cert["schema"]))
        ctx.claim(
            "attestation hash",
            cert["attestation"].get("result_sha256") == attestation(cert),
            "content does not match result_sha256",
        )
        check = _KINDS.get(kind)
        if check is None:
            raise Reject(f"unknown kind {kind!r}")
        check(cert, ctx)
    except Reject as exc:
        report.failures.append(str(exc))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        report.failures.append(f"malformed certificate: {type(exc).__name__}: {exc}")
    return report


def verify_file(path: str, limit: int = DEFAULT_LIMIT) -> Report:
    with open(path, encoding="utf-8") as fh:
        return verify(json.load(fh), limit)


# ---------------------------------------------------------------------------
# hj


def _hj_coloring(rows, lt: Letters):
    col = {}
    for text, c in rows:
        w = lt.word(text)
        if varset(w) or w in col:
            raise Reject(f"bad coloring row {text!r}")
        col[w] = c
    return col


def _mono(root, col, k_letters, n):
    pts = [plug(root, x) for x in itertools.product(k_letters, repeat=n)]
    cs = {col.get(p) for p in pts}
    return pts, (cs.pop() if len(cs) == 1 and None not in cs else None)


def _roots(lt: Letters, N: int, n: int):
    for w in lt.words(n, N, N):
        if varset(w) == set(range(1, n + 1)):
            yield w


def _n_roots(k, N, n):
    return sum((-1) ** j * math.comb(n, j) * (k + n - j) ** N for j in range(n + 1))


def _first_mono(col, lt, lengths, n):
    for N in lengths:
        for root in _roots(lt, N, n):
            _, c = _mono(root, col, lt.letters, n)
            if c is not None:
                return root
    return None


def _line_free(col, lt, N) -> bool:
    return _first_mono(col, lt, [N], 1) is None


def _check_total(col, lt, N, c, ctx, label):
    want = set(itertools.product(lt.letters, repeat=N))
    ctx.claim(f"{label}: coloring covers all {len(want)} cells", set(col) == want)
    ctx.claim(f"{label}: colors in 1..c", all(1 <= v <= c for v in col.values()))


def _lex_least_line_free(lt, c, N, ctx):
    """Lex-least line-free coloring by brute force (None if there is none)."""
    cells = sorted(itertools.product(lt.letters, repeat=N), key=lt.key)
    ctx.budget(c ** len(cells), "coloring enumeration")
    for colors in itertools.product(range(1, c + 1), repeat=len(cells)):
        col = dict(zip(cells, colors))
        if _line_free(col, lt, N):
            return col
    return None


def _v_find_line(cert, ctx):
    inp, res = cert["input"], cert["result"]
    lt, n = Letters(inp["letters"]), inp["n"]
    ctx.claim("k matches letters", inp["k"] == len(lt.letters))
    col = _hj_coloring(inp["coloring"], lt)
    lengths = sorted({len(w) for w in col})
    for N in lengths:
        ctx.claim(f"coloring total at length {N}", sum(1 for w in col if len(w) == N) == len(lt.letters) ** N)
    if cert["status"] == "found":
        root = lt.word(res["root"])
        ctx.claim("root is an n-variable word", len(root) in lengths and varset(root) == set(range(1, n + 1)))
        pts, c = _mono(root, col, lt.letters, n)
        ctx.claim("points recomputed", [lt.text(p) for p in pts] == res["points"])
        ctx.claim("line is monochromatic", c is not None and c == res["color"])

        def least():
            ctx.budget(sum(_n_roots(len(lt.letters), N, n) for N in lengths if N >= n), "root scan")
            first = _first_mono(col, lt, [N for N in lengths if N >= n], n)
            ctx.claim("canonical-least root", first == root, f"found {lt.text(first)}")

        ctx.replay("canonical-least root replay", least)
    else:
        ctx.claim("status", cert["status"] == "none")
        total = sum(_n_roots(len(lt.letters), N, n) for N in lengths if N >= n)
        ctx.claim("checked_roots count", res["checked_roots"] == total)

        def none():
            ctx.budget(total, "root scan")
            ctx.claim("no monochromatic line", _first_mono(col, lt, [N for N in lengths if N >= n], n) is None)

        ctx.replay("no-line replay", none)


def _v_line_free(cert, ctx):
    inp, res = cert["input"], cert["result"]
    lt, c, N = Letters(inp["letters"]), inp["c"], inp["N"]
    k = len(lt.letters)
    ctx.claim("k matches letters", inp["k"] == k)
    if cert["status"] == "found":
        col = _hj_coloring(res["coloring"], lt)
        _check_total(col, lt, N, c, ctx, f"N={N}")
        ctx.claim("checked_lines count", res["checked_lines"] == _n_roots(k, N, 1))
        ctx.claim("coloring is line-free", _line_free(col, lt, N))

        def least():
            ctx.claim("lex-least line-free coloring", _lex_least_line_free(lt, c, N, ctx) == col)

        ctx.replay("canonical-least coloring replay", least)
    else:
        ctx.claim("status", cert["status"] == "none")
        ctx.claim("colorings_space", res["colorings_space"] == c ** (k**N))
        ctx.replay(
            "no line-free coloring replay",
            lambda: ctx.claim("no line-free coloring", _lex_least_line_free(lt, c, N, ctx) is None),
        )


def _v_hj_number(cert, ctx):
    inp, res = cert["input"], cert["result"]
    lt, c, N_max = Letters(inp["letters"]), inp["c"], inp["N_max"]
    ctx.claim("k matches letters", inp["k"] == len(lt.letters))
    value = res["value"]
    top = value - 1 if value is not None else N_max
    ctx.claim("status", cert["status"] == ("found" if value is not None else "unresolved"))
    ctx.claim("line-free witnesses below the value", sorted(map(int, res["line_free"])) == list(range(1, top + 1)))
    for N in range(1, top + 1):
        col = _hj_coloring(res["line_free"][str(N)], lt)
        _check_total(col, lt, N, c, ctx, f"N={N}")
        ctx.claim(f"N={N} coloring is line-free", _line_free(col, lt, N))
        if N >= 2:
            # fixing the last letter of a line-free coloring leaves one of length N-1
            cyl = {w: col[w + (lt.letters[0],)] for w in itertools.product(lt.letters, repeat=N - 1)}
            ctx.claim(f"N={N} cylinder recorded line-free", res["cylinder_checks"].get(str(N)) is True)
            ctx.claim(f"N={N} cylinder is line-free", _line_free(cyl, lt, N - 1))
    if value is not None:
        ctx.claim("value within N_max", 1 <= value <= N_max)
        ctx.replay(
            f"no line-free coloring at N={value}",
            lambda: ctx.claim(
                f"every coloring at N={value} has a line", _lex_least_line_free(lt, c, value, ctx) is None
            ),
        )


# ---------------------------------------------------------------------------
# psg


def _colex(n, bound):
    subsets = (s for r in range(1, bound + 1) for s in itertools.combinations(range(n), r))
    return sorted(subsets, key=lambda s: tuple(reversed(s)))


def _v_adequacy(cert, ctx):
    inp, res = cert["input"], cert["result"]
    tr = Trunc(inp["truncation"])
    bound, within = inp["subset_bound"], inp.get("within")
    elems = tr.elements
    if within is not None:
        elems = [e for e in elems if all(i <= within for i in e.idx)]
    count = sum(math.comb(len(elems), r) for r in range(1, bound + 1))

    def replay():
        ctx.budget(count * max(1, len(elems)), "subset scan")
        failing, checked = None, 0
        for s in _colex(len(elems), bound):
            checked += 1
            H = [elems[i] for i in s]
            if not any(tr.sigma_ok(H, x) for x in tr.elements):
                failing = H
                break
        ctx.claim("passed", res["passed"] == (failing is None))
        ctx.claim("checked count", res["checked"] == (checked if failing else count))
        if failing is not None:
            got = [list(e.idx) for e in failing] if tr.mode != "table" else failing
            ctx.claim("first failing H", res["failing"] == got, f"expected {got}")
            ctx.claim("horizon flag", res["horizon_exhaustion"] == (tr.mode != "table"))
        else:
            ctx.claim("no failing H", res["failing"] is None and not res["horizon_exhaustion"])

    ctx.claim("status", cert["status"] == ("found" if res["passed"] else "exhausted"))
    ctx.replay("adequacy replay", replay)


def _v_sigma(cert, ctx):
    inp, res = cert["input"], cert["result"]
    tr = Trunc(inp["truncation"])
    H = [tr.el(h) if tr.mode != "table" else tr.parse(h) for h in inp["H"]]
    got = [x for x in tr.elements if tr.sigma_ok(H, x)]
    want = [list(x.idx) for x in got] if tr.mode != "table" else [x for x in tr.labels if x in got]
    ctx.claim("sigma recomputed", res["sigma"] == want)


# ---------------------------------------------------------------------------
# jset


def _jset_setup(inp):
    tr = Trunc(inp["truncation"]) if "truncation" in inp else None
    lt = Letters(inp["letters"]) if "letters" in inp else (tr.lt if tr is not None else None)
    A = predicate(inp["predicate"], lt)
    seqs = [sequence(s, lt, tr) for s in inp["sequences"]]
    b = inp["bounds"]
    if tr is not None:
        op = tr.op
        L = [tr.el(h) if tr.mode != "table" else tr.parse(h) for h in inp["L"]]
        if inp.get("pool") is None:
            pool = list(tr.elements)
        else:
            pool = [tr.el(h) if tr.mode != "table" else tr.parse(h) for h in inp["pool"]]
        pool = sorted(set(pool), key=(lambda e: e.mask) if tr.mode != "table" else (lambda e: e))
        accept = lambda p: A(p) and tr.sigma_ok(L, p)
        text = tr.text
        parse = tr.parse
    else:
        op = lambda x, y: x + y
        words = inp["semigroup"] == "words"
        if inp.get("pool") is not None:
            pool = [lt.word(p) for p in inp["pool"]] if words else list(inp["pool"])
        elif words:
            pool = list(lt.words(0, b["pool_len"]))
        else:
            pool = list(range(1, b["horizon"] + 1))
        pool = sorted(set(pool), key=lt.key if words else None)
        accept = A
        text = (lambda x: lt.text(x)) if words else (lambda x: x)
        parse = (lambda x: lt.word(x)) if words else (lambda x: x)
    return dict(tr=tr, lt=lt, A=A, seqs=seqs, b=b, op=op, pool=pool, accept=accept, text=text, parse=parse)


def _passes(S, a, t, seqs=None) -> bool:
    for f, _ in seqs or S["seqs"]:
        p = alternating(a, t, f, S["op"])
        if p is None or not S["accept"](p):
            return False
    return True


def _candidates(S, m_max, horizon):
    for m in range(1, m_max + 1):
        for t in itertools.combinations(range(1, horizon + 1), m):
            for a in itertools.product(S["pool"], repeat=m + 1):
                yield m, t, a


def _v_jset(cert, ctx):
    inp, res = cert["input"], cert["result"]
    S = _jset_setup(inp)
    b = S["b"]
    for f, h in S["seqs"]:
        ctx.claim("sequence horizon covers search horizon", h is None or h >= b["horizon"])
    total = sum(math.comb(b["horizon"], m) * len(S["pool"]) ** (m + 1) for m in range(1, b["m_max"] + 1))
    if cert["status"] == "found":
        m, t = res["m"], tuple(res["t"])
        a = tuple(S["parse"](x) for x in res["a"])
        ctx.claim("witness shape", 1 <= m <= b["m_max"] and len(t) == m and len(a) == m + 1)
        ctx.claim("t increasing within horizon", all(1 <= x for x in t) and list(t) == sorted(set(t)) and t[-1] <= b["horizon"])
        ctx.claim("a drawn from the pool", all(x in S["pool"] for x in a))
        rows = []
        for i, (f, _) in enumerate(S["seqs"]):
            p = alternating(a, t, f, S["op"])
            ctx.claim(f"product {i} defined", p is not None)
            ctx.claim(f"product {i} in target", S["accept"](p))
            rows.append({"sequence": i, "product": S["text"](p), "verdict": True})
        ctx.claim("product table", res["products"] == rows)

        def least():
            seen = 0
            for cand in _candidates(S, b["m_max"], b["horizon"]):
                if cand == (m, t, a):
                    return
                seen += 1
                ctx.budget(seen, "earlier candidates")
                if _passes(S, cand[2], cand[1]):
                    raise Reject(f"not canonical-least: earlier candidate m={cand[0]} t={cand[1]} passes")
            raise Reject("witness not among candidates")

        ctx.replay("canonical-least witness", least)
    else:
        ctx.claim("status", cert["status"] == "exhausted")
        if res["reason"].startswith("sigma(L) is empty"):
            tr = S["tr"]
            L = [tr.el(h) if tr.mode != "table" else tr.parse(h) for h in inp["L"]]
            ctx.claim("sigma(L) empty", not any(tr.sigma_ok(L, x) for x in tr.elements))
            return
        ctx.claim("candidate count", res["candidates"] == total)

        def none():
            ctx.budget(total, "candidate scan")
            for m, t, a in _candidates(S, b["m_max"], b["horizon"]):
                if _passes(S, a, t):
                    raise Reject(f"candidate m={m} t={t} passes")

        ctx.replay("exhaustion replay", none)


# ---------------------------------------------------------------------------
# lift


def _homs(inp, lt):
    return [hom(h, lt) for h in inp["homs"]]


def _check_homs(inp, lt, ctx, n):
    """Homomorphism and S0-identity checks on words of length <= 2."""
    small = list(lt.words(n, 2))
    for text, h in zip(inp["homs"], _homs(inp, lt)):
        dom = [w for w in small if letter_word(w) or n_var_word(w, n)]
        ctx.claim(f"{text} fixes S0", all(h(w) == w for w in dom if letter_word(w)))
        pairs = [(u, v) for u in dom for v in dom if letter_word(u + v) or n_var_word(u + v, n)]
        ctx.claim(f"{text} is a homomorphism", all(h(u + v) == h(u) + h(v) for u, v in pairs))


def _instances_ok(w, lt, n, D):
    return all(D(plug(w, x)) for x in itertools.product(lt.letters, repeat=n))


def _instance_rows(w, lt, n, D):
    return [
        {"x": "".join(x), "instance": lt.text(plug(w, x)), "in_D": D(plug(w, x))}
        for x in itertools.product(lt.letters, repeat=n)
    ]


def _least_word(lt, n, max_len, ok, ctx, stop=None):
    """First ``n``-variable word (canonical order) satisfying ``ok``, up to ``stop``."""
    ctx.budget((len(lt.letters) + n) ** max_len * max(1, len(lt.letters) ** n), "word scan")
    for w in lt.words(n, max_len, max(1, n)):
        if varset(w) != set(range(1, n + 1)):
            continue
        if w == stop:
            return w
        if ok(w):
            return w
    return None


def _word_claims(cert, ctx, n, ok, extra):
    """Shared checks for the single-word lift results."""
    inp, res = cert["input"], cert["result"]
    lt = Letters(inp["letters"])
    if cert["status"] == "found":
        w = lt.word(res["word"])
        ctx.claim("word is an n-variable word", n_var_word(w, n) and len(w) <= inp["word_length"])
        ctx.claim("word meets every constraint", ok(w))
        extra(w)

        def least():
            first = _least_word(lt, n, len(w), ok, ctx, stop=w)
            ctx.claim("canonical-least word", first == w, f"found {lt.text(first)}")

        ctx.replay("canonical-least word replay", least)
    else:
        ctx.claim("status", cert["status"] == "exhausted")

        def none():
            ctx.claim("no word within word_length", _least_word(lt, n, inp["word_length"], ok, ctx) is None)

        ctx.replay("exhaustion replay", none)


def _v_lemma1(cert, ctx):
    inp, res = cert["input"], cert["result"]
    lt, n = Letters(inp["letters"]), inp["n"]
    D = predicate(inp["predicate"], lt)
    E = [sequence(s, lt, None) for s in inp["sequences"]]
    H = _homs(inp, lt)
    _check_homs(inp, lt, ctx, n)
    b = inp["bounds"]
    G = [(lambda t, f=f, h=h: h(f(t)), hz) for f, hz in E for h in H]
    S = dict(op=lambda x, y: x + y, accept=D, seqs=G, pool=sorted(lt.words(0, b["pool_len"]), key=lt.key))
    total = sum(math.comb(b["horizon"], m) * len(S["pool"]) ** (m + 1) for m in range(1, b["m_max"] + 1))
    if cert["status"] != "found":
        ctx.claim("status", cert["status"] == "exhausted")
        ctx.claim("candidate count", res["candidates"] == total)

        def none():
            ctx.budget(total, "candidate scan")
            for m, t, a in _candidates(S, b["m_max"], b["horizon"]):
                if _passes(S, a, t):
                    raise Reject(f"candidate m={m} t={t} passes")

        ctx.replay("exhaustion replay", none)
        return
    m, t, a = res["m"], tuple(res["t"]), tuple(lt.word(x) for x in res["a"])
    ctx.claim("lifted witness equals inner witness", res["inner"] == {"m": m, "t": list(t), "a": res["a"]})
    ctx.claim("a are letter words", all(letter_word(x) for x in a))
    rows = []
    for fi, (f, _) in enumerate(E):
        product = alternating(a, t, f, S["op"])
        for ni, h in enumerate(H):
            image = h(product)
            inner = alternating(a, t, lambda s: h(f(s)), S["op"])
            ctx.claim(f"f{fi} nu{ni}: image equals inner product", image == inner)
            ctx.claim(f"f{fi} nu{ni}: image in D", D(image))
            rows.append({"f": fi, "nu": ni, "product": lt.text(product), "image": lt.text(image),
                         "inner_product": lt.text(inner), "in_D": True})
    ctx.claim("product table", cert["table"] == rows)

    def least():
        seen = 0
        for cand in _candidates(S, b["m_max"], b["horizon"]):
            if cand == (m, t, a):
                return
            seen += 1
            ctx.budget(seen, "earlier candidates")
            if _passes(S, cand[2], cand[1]):
                raise Reject(f"not canonical-least: earlier candidate m={cand[0]} t={cand[1]} passes")
        raise Reject("witness not among candidates")

    ctx.replay("canonical-least inner witness", least)


def _v_thm3(cert, ctx):
    inp, res = cert["input"], cert["result"]
    lt, n = Letters(inp["letters"]), inp["n"]
    D = predicate(inp["predicate"], lt)
    ok = lambda w: _instances_ok(w, lt, n, D)

    def extra(w):
        ctx.claim("instance table", cert["table"] == _instance_rows(w, lt, n, D))
        if res.get("lifted_word") is not None:
            lw = res["lift_witness"]
            base = tuple(range(1, n + 1))
            lifted = alternating([lt.word(x) for x in lw["a"]], lw["t"], lambda s: base * s, lambda x, y: x + y)
            ctx.claim("lifted word recomputed", lt.text(lifted) == res["lifted_word"])
            ctx.claim("lifted word lies in Sn", n_var_word(lifted, n))
            ctx.claim("lifted word has all instances in D", ok(lifted))
            ctx.claim("answer no longer than the lifted word", len(w) <= len(lifted))

    _word_claims(cert, ctx, n, ok, extra)


def _fs_index(x, v):
    """Least index set (bitmask order) of ``x`` summing to ``v``."""
    for mask in range(1, 1 << len(x)):
        if sum(x[i] for i in range(len(x)) if mask >> i & 1) == v:
            return tuple(i + 1 for i in range(len(x)) if mask >> i & 1)
    return None


def _v_fs1(cert, ctx):
    inp, res = cert["input"], cert["result"]
    lt, x = Letters(inp["letters"]), list(inp["x"])
    D = predicate(inp["predicate"], lt)
    padded = [0] + x
    ok = lambda w: _fs_index(padded, w.count(1)) is not None and _instances_ok(w, lt, 1, D)

    def extra(w):
        v = w.count(1)
        ctx.claim("tau is the variable count", res["tau"] == v)
        ctx.claim("padded sequence", res["padded"] == padded)
        idx = _fs_index(padded, v)
        ctx.claim("padded index set least", tuple(res["padded_indices"]) == idx)
        shifted = [i - 1 for i in idx if i >= 2]
        ctx.claim("index set in x", res["indices"] == shifted and bool(shifted))
        ctx.claim("count is a finite sum of x", sum(x[i - 1] for i in shifted) == v)
        ctx.claim("instance table", cert["table"] == _instance_rows(w, lt, 1, D))

    _word_claims(cert, ctx, 1, ok, extra)


def _fp_index(y, v):
    for mask in range(1, 1 << len(y)):
        idx = [i for i in range(len(y)) if mask >> i & 1]
        if tuple(itertools.chain.from_iterable(y[i] for i in idx)) == v:
            return tuple(i + 1 for i in idx)
    return None


def _v_thm16(cert, ctx):
    inp, res = cert["input"], cert["result"]
    lt, n, k = Letters(inp["letters"]), inp["n"], inp["k"]
    D = predicate(inp["predicate"], lt)
    y = [lt.word(p) for p in inp["patterns"]]
    ctx.claim("1 <= k < n", 1 <= k < n)
    ctx.claim("patterns are k-variable pattern words", all(varset(p) == set(range(1, k + 1)) and not any(isinstance(s, str) for s in p) for p in y))
    extract = lambda w: tuple(s for s in w if isinstance(s, int) and s <= k)
    ok = lambda w: _fp_index(y, extract(w)) is not None and _instances_ok(w, lt, n, D)

    def extra(w):
        ctx.claim("extract recomputed", res["extract"] == lt.text(extract(w)))
        idx = _fp_index(y, extract(w))
        ctx.claim("least index set", tuple(res["indices"]) == idx)
        ctx.claim("ordered product matches", tuple(itertools.chain.from_iterable(y[i - 1] for i in res["indices"])) == extract(w))
        ctx.claim("instance table", cert["table"] == _instance_rows(w, lt, n, D))

    _word_claims(cert, ctx, n, ok, extra)


def _v_thm17(cert, ctx):
    inp, res = cert["input"], cert["result"]
    lt, n = Letters(inp["letters"]), inp["n"]
    D = predicate(inp["predicate"], lt)
    H = _homs(inp, lt)
    M, B = inp["matrix"], inp["fs_prefixes"]
    ctx.claim("tau maps are the variable counts", inp["taus"] == [f"count:{i}" for i in range(1, n + 1)])
    ctx.claim("matrix shape", len(M) == len(B) and all(len(r) == n for r in M))

    def image(w):
        psi = [w.count(i) for i in range(1, n + 1)]
        return psi, [sum(a * b for a, b in zip(row, psi)) for row in M]

    def ok(w):
        _, img = image(w)
        return all(_fs_index(b, v) is not None for b, v in zip(B, img)) and all(D(h(w)) for h in H)

    def extra(w):
        psi, img = image(w)
        ctx.claim("psi recomputed", res["psi"] == psi)
        ctx.claim("M psi recomputed", res["image"] == img)
        sets = [list(_fs_index(b, v)) for b, v in zip(B, img)]
        ctx.claim("index sets least", res["index_sets"] == sets)
        for i, (b, s) in enumerate(zip(B, res["index_sets"])):
            ctx.claim(f"row {i + 1} is a finite sum of B_{i + 1}", s and sum(b[j - 1] for j in s) == img[i])
        rows = [{"nu": i, "image": lt.text(h(w)), "in_D": True} for i, h in enumerate(H)]
        ctx.claim("hom images in D", cert["table"] == rows)

    zero = [i for i, row in enumerate(M) if not any(row) and _fs_index(B[i], 0) is None]
    if cert["status"] == "exhausted" and zero:
        ctx.claim("zero row makes the system infeasible", True)
        return
    _word_claims(cert, ctx, n, ok, extra)


def _v_cset(cert, ctx):
    inp, res = cert["input"], cert["result"]
    lt, n = Letters(inp["letters"]), inp["n"]
    levels = [predicate(p, lt) for p in inp["levels"]]
    H = _homs(inp, lt)
    shift = inp["shift"]
    fixed = int(shift.split(":")[1]) if shift.startswith("fixed:") else None
    seq = [lt.word(w) for w in res["sequence"]]
    ctx.claim("terms are n-variable words", all(n_var_word(w, n) for w in seq))

    def products(s):
        for size in range(1, len(s) + 1):
            for idx in itertools.combinations(range(1, len(s) + 1), size):
                for phi in itertools.product(range(len(H)), repeat=size):
                    yield idx, phi, tuple(itertools.chain.from_iterable(H[c](s[i - 1]) for i, c in zip(idx, phi)))

    for j, w in enumerate(seq):
        depth = fixed if (fixed is not None and j > 0) else 1
        ctx.claim(f"step {j + 1} level", res["levels_used"][j] == depth)
        target = levels[depth - 1]
        ctx.claim(f"step {j + 1} images in D_{depth}", all(target(h(w)) for h in H))
        ctx.replay(
            f"step {j + 1} canonical-least",
            lambda w=w, target=target: ctx.claim(
                f"step {j + 1} least word",
                _least_word(lt, n, len(w), lambda u: all(target(h(u)) for h in H), ctx, stop=w) == w,
            ),
        )
    if cert["status"] == "found":
        ctx.claim("sequence length", len(seq) == inp["length"])
        rows = []
        for idx, phi, p in products(seq):
            ctx.claim(f"product {list(idx)}/{list(phi)} in D_1", levels[0](p))
            rows.append({"H": list(idx), "phi": list(phi), "product": lt.text(p), "in_D1": True})
        ctx.claim("product count", len(rows) == (1 + len(H)) ** len(seq) - 1)
        ctx.claim("product table", cert["table"] == rows)
    else:
        ctx.claim("status", cert["status"] == "exhausted")
        step = res["failed_at"]
        ctx.claim("failed step follows the built prefix", step == len(seq) + 1)
        depth = fixed if (fixed is not None and step > 1) else 1
        target = levels[depth - 1]
        ctx.replay(
            "exhaustion replay",
            lambda: ctx.claim(
                f"no word maps into D_{depth}",
                _least_word(lt, n, inp["word_length"], lambda u: all(target(h(u)) for h in H), ctx) is None,
            ),
        )


_KINDS = {
    "hj.find-line": _v_find_line,
    "hj.line-free": _v_line_free,
    "hj.number": _v_hj_number,
    "psg.adequacy": _v_adequacy,
    "psg.sigma": _v_sigma,
    "jset.check": _v_jset,
    "lift.lemma1": _v_lemma1,
    "lift.thm3": _v_thm3,
    "lift.fs1": _v_fs1,
    "lift.thm16": _v_thm16,
    "lift.thm17": _v_thm17,
    "lift.cset": _v_cset,
}
