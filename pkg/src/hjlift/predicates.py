"""Decidable membership predicates (desk-scale targets for J-set searches).

Predicates are immutable expression trees. Word atoms test tuples of
symbol codes; value atoms test integers or the ``value`` of an
:class:`~hjlift.psg.FsElement`.

Textual form is an s-expression, for example::

    ; even length, not starting with "ab"
    (and (length-mod 2 0) (not (starts-with "ab")))

Word literals are quoted textual words (``"a#1"``).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from .psg import FsElement
from .words import Alphabet, Word, is_s0


class PredicateSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _value(x):
    return x.value if isinstance(x, FsElement) else x


def _is_word(x) -> bool:
    return isinstance(x, tuple)


class Predicate:
    def __call__(self, x) -> bool:
        raise NotImplementedError

    def __and__(self, other: "Predicate") -> "Predicate":
        return And((self, other))

    def __or__(self, other: "Predicate") -> "Predicate":
        return Or((self, other))

    def __invert__(self) -> "Predicate":
        return Not(self)


@dataclass(frozen=True)
class Const(Predicate):
    value: bool

    def __call__(self, x) -> bool:
        return self.value


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class And(Predicate):
    items: tuple[Predicate, ...]

    def __call__(self, x) -> bool:
        return all(p(x) for p in self.items)


@dataclass(frozen=True)
class Or(Predicate):
    items: tuple[Predicate, ...]

    def __call__(self, x) -> bool:
        return any(p(x) for p in self.items)


@dataclass(frozen=True)
class Not(Predicate):
    item: Predicate

    def __call__(self, x) -> bool:
        return not self.item(x)


@dataclass(frozen=True)
class LengthMod(Predicate):
    q: int
    r: int

    def __call__(self, x) -> bool:
        return _is_word(x) and len(x) % self.q == self.r % self.q


@dataclass(frozen=True)
class LetterCountMod(Predicate):
    letter: int
    q: int
    r: int

    def __call__(self, x) -> bool:
        return _is_word(x) and x.count(self.letter) % self.q == self.r % self.q


@dataclass(frozen=True)
class StartsWith(Predicate):
    prefix: Word

    def __call__(self, x) -> bool:
        return _is_word(x) and x[: len(self.prefix)] == self.prefix


@dataclass(frozen=True)
class EndsWith(Predicate):
    suffix: Word

    def __call__(self, x) -> bool:
        n = len(self.suffix)
        return _is_word(x) and len(x) >= n and x[len(x) - n :] == self.suffix


@dataclass(frozen=True)
class Contains(Predicate):
    factor: Word

    def __call__(self, x) -> bool:
        if not _is_word(x):
            return False
        n = len(self.factor)
        return any(x[i : i + n] == self.factor for i in range(len(x) - n + 1))


@dataclass(frozen=True)
class MemberOf(Predicate):
    items: frozenset

    def __call__(self, x) -> bool:
        return _value(x) in self.items


@dataclass(frozen=True)
class ValueMod(Predicate):
    q: int
    r: int

    def __call__(self, x) -> bool:
        v = _value(x)
        return isinstance(v, int) and v % self.q == self.r % self.q


@dataclass(frozen=True)
class InFsPrefix(Predicate):
    generators: tuple[int, ...]

    @cached_property
    def sums(self) -> frozenset[int]:
        g = self.generators
        return frozenset(
            sum(c) for r in range(1, len(g) + 1) for c in itertools.combinations(g, r)
        )

    def __call__(self, x) -> bool:
        return _value(x) in self.sums


@dataclass(frozen=True)
class InS0(Predicate):
    def __call__(self, x) -> bool:
        return _is_word(x) and is_s0(x)


# ---------------------------------------------------------------------------
# s-expression text form

_TOKENS = re.compile(r'\s*(?:(;[^\n]*)|(\()|(\))|("[^"]*")|([^\s()";]+))')


def _tokenize(text: str) -> list[tuple[str, Any, int]]:
    out = []
    pos = 0
    line = 1
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise PredicateSyntaxError(f"unexpected character {text[pos]!r}", line)
        tok_line = line + text.count("\n", pos, m.start(m.lastindex))
        comment, lp, rp, string, atom = m.groups()
        if lp:
            out.append(("(", None, tok_line))
        elif rp:
            out.append((")", None, tok_line))
        elif string is not None:
            out.append(("str", string[1:-1], tok_line))
        elif atom is not None:
            try:
                out.append(("int", int(atom), tok_line))
            except ValueError:
                out.append(("sym", atom, tok_line))
        line += text.count("\n", pos, m.end())
        pos = m.end()
    return out


def _read(tokens, i):
    kind, val, line = tokens[i]
    if kind == ")":
        raise PredicateSyntaxError("unexpected ')'", line)
    if kind != "(":
        return (kind, val, line), i + 1
    items = []
    i += 1
    while True:
        if i >= len(tokens):
            raise PredicateSyntaxError("unclosed '('", line)
        if tokens[i][0] == ")":
            return ("list", items, line), i + 1
        node, i = _read(tokens, i)
        items.append(node)


def _int(node, what: str) -> int:
    kind, val, line = node
    if kind != "int":
        raise PredicateSyntaxError(f"{what} must be an integer", line)
    return val


def _word(node, alphabet: Alphabet | None) -> Word:
    kind, val, line = node
    if kind != "str":
        raise PredicateSyntaxError("expected a quoted word", line)
    if alphabet is None:
        raise PredicateSyntaxError("word literal needs an alphabet", line)
    try:
        return alphabet.parse(val)
    except ValueError as exc:
        raise PredicateSyntaxError(str(exc), line) from None


_ARITY = {
    "length-mod": 2,
    "letter-count-mod": 3,
    "starts-with": 1,
    "ends-with": 1,
    "contains": 1,
    "value-mod": 2,
    "in-s0": 0,
    "not": 1,
}


def _build(node, alphabet: Alphabet | None) -> Predicate:
    kind, val, line = node
    if kind == "sym":
        if val == "true":
            return TRUE
        if val == "false":
            return FALSE
        if val == "in-s0":
            return InS0()
        raise PredicateSyntaxError(f"unknown atom {val!r}", line)
    if kind != "list" or not val or val[0][0] != "sym":
        raise PredicateSyntaxError("expected (name args...)", line)
    name, args = val[0][1], val[1:]
    if name in _ARITY and len(args) != _ARITY[name]:
        raise PredicateSyntaxError(f"{name} takes {_ARITY[name]} argument(s), got {len(args)}", line)
    if name == "and":
        return And(tuple(_build(a, alphabet) for a in args))
    if name == "or":
        return Or(tuple(_build(a, alphabet) for a in args))
    if name == "not":
        return Not(_build(args[0], alphabet))
    if name in ("length-mod", "value-mod"):
        q, r = _int(args[0], "modulus"), _int(args[1], "residue")
        if q < 1:
            raise PredicateSyntaxError("modulus must be >= 1", line)
        return LengthMod(q, r) if name == "length-mod" else ValueMod(q, r)
    if name == "letter-count-mod":
        letter = _word(args[0], alphabet)
        if len(letter) != 1:
            raise PredicateSyntaxError("letter-count-mod needs a single letter", line)
        q, r = _int(args[1], "modulus"), _int(args[2], "residue")
        if q < 1:
            raise PredicateSyntaxError("modulus must be >= 1", line)
        return LetterCountMod(letter[0], q, r)
    if name == "starts-with":
        return StartsWith(_word(args[0], alphabet))
    if name == "ends-with":
        return EndsWith(_word(args[0], alphabet))
    if name == "contains":
        return Contains(_word(args[0], alphabet))
    if name == "member-of":
        items = [_int(a, "member") if a[0] == "int" else _word(a, alphabet) for a in args]
        return MemberOf(frozenset(items))
    if name == "in-fs":
        return InFsPrefix(tuple(_int(a, "generator") for a in args))
    if name == "in-s0":
        return InS0()
    raise PredicateSyntaxError(f"unknown predicate {name!r}", line)


def parse_predicate(text: str, alphabet: Alphabet | None = None) -> Predicate:
    tokens = [t for t in _tokenize(text) if t[0] != "comment"]
    if not tokens:
        raise PredicateSyntaxError("empty predicate", 1)
    node, i = _read(tokens, 0)
    if i != len(tokens):
        raise PredicateSyntaxError("trailing input after predicate", tokens[i][2])
    return _build(node, alphabet)


def _lit(x, alphabet: Alphabet | None) -> str:
    if isinstance(x, int):
        return str(x)
    return '"' + alphabet.format(x) + '"'


def to_sexpr(p: Predicate, alphabet: Alphabet | None = None) -> str:
    if isinstance(p, Const):
        return "true" if p.value else "false"
    if isinstance(p, And):
        return "(and " + " ".join(to_sexpr(q, alphabet) for q in p.items) + ")"
    if isinstance(p, Or):
        return "(or " + " ".join(to_sexpr(q, alphabet) for q in p.items) + ")"
    if isinstance(p, Not):
        return f"(not {to_sexpr(p.item, alphabet)})"
    if isinstance(p, LengthMod):
        return f"(length-mod {p.q} {p.r})"
    if isinstance(p, ValueMod):
        return f"(value-mod {p.q} {p.r})"
    if isinstance(p, LetterCountMod):
        return f"(letter-count-mod {_lit((p.letter,), alphabet)} {p.q} {p.r})"
    if isinstance(p, StartsWith):
        return f"(starts-with {_lit(p.prefix, alphabet)})"
    if isinstance(p, EndsWith):
        return f"(ends-with {_lit(p.suffix, alphabet)})"
    if isinstance(p, Contains):
        return f"(contains {_lit(p.factor, alphabet)})"
    if isinstance(p, MemberOf):
        items = sorted(p.items, key=lambda x: (isinstance(x, tuple), x if isinstance(x, int) else (len(x), x)))
        return "(member-of " + " ".join(_lit(x, alphabet) for x in items) + ")"
    if isinstance(p, InFsPrefix):
        return "(in-fs " + " ".join(map(str, p.generators)) + ")"
    if isinstance(p, InS0):
        return "(in-s0)"
    raise TypeError(f"cannot serialize {p!r}")
