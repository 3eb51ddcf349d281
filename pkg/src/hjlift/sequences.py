"""Sequences ``f: N -> S`` given by a finite prefix or a closed form.

Text form, one sequence per line (``;`` starts a comment)::

    list a aa ab       explicit words f(1), f(2), ...
    list 1 2 3         explicit integers
    power a#1          f(t) = (a#1)^t
    mult 2             f(t) = 2t
    block 2            f(t) = FsElement with H = {2t-1, 2t}  (needs a truncation)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .psg import FsElement, FsTruncation
from .words import Alphabet, HomSpec, Word


class HorizonError(IndexError):
    pass


class SequenceSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _check(t: int, horizon: int | None) -> None:
    if t < 1:
        raise HorizonError(f"sequence index {t} < 1")
    if horizon is not None and t > horizon:
        raise HorizonError(f"index {t} beyond sequence horizon {horizon}")


@dataclass(frozen=True)
class Explicit:
    terms: tuple

    @property
    def horizon(self) -> int:
        return len(self.terms)

    def __call__(self, t: int):
        _check(t, self.horizon)
        return self.terms[t - 1]

    def describe(self, alphabet: Alphabet | None = None) -> str:
        return "list " + " ".join(
            str(x) if isinstance(x, int) else alphabet.format(x) for x in self.terms
        )


@dataclass(frozen=True)
class Power:
    base: Word
    horizon = None

    def __call__(self, t: int) -> Word:
        _check(t, None)
        return self.base * t

    def describe(self, alphabet: Alphabet | None = None) -> str:
        return "power " + alphabet.format(self.base)


@dataclass(frozen=True)
class Multiple:
    c: int
    horizon = None

    def __call__(self, t: int) -> int:
        _check(t, None)
        return self.c * t

    def describe(self, alphabet: Alphabet | None = None) -> str:
        return f"mult {self.c}"


@dataclass(frozen=True)
class Block:
    """``f(t)`` is the element with index set ``{(t-1)w+1, ..., tw}``."""

    truncation: FsTruncation
    width: int = 1

    @property
    def horizon(self) -> int:
        return self.truncation.horizon // self.width

    def __call__(self, t: int) -> FsElement:
        _check(t, self.horizon)
        w = self.width
        return self.truncation.element(range((t - 1) * w + 1, t * w + 1))

    def describe(self, alphabet: Alphabet | None = None) -> str:
        return f"block {self.width}"


@dataclass(frozen=True)
class Mapped:
    """``nu o f``."""

    hom: HomSpec
    seq: Any

    @property
    def horizon(self) -> int | None:
        return self.seq.horizon

    def __call__(self, t: int):
        return self.hom(self.seq(t))

    def describe(self, alphabet: Alphabet | None = None) -> str:
        return f"map {self.hom.describe(alphabet)} ({self.seq.describe(alphabet)})"


def parse_sequence(line: str, alphabet: Alphabet | None = None, truncation=None, lineno: int = 1):
    kind, *args = line.split()
    try:
        if kind == "list":
            if not args:
                raise ValueError("empty list")
            if all(a.lstrip("-").isdigit() for a in args):
                return Explicit(tuple(int(a) for a in args))
            if alphabet is None:
                raise ValueError("word list needs an alphabet")
            return Explicit(tuple(alphabet.parse(a) for a in args))
        if kind == "power":
            if len(args) != 1 or alphabet is None:
                raise ValueError("power takes one word")
            return Power(alphabet.parse(args[0]))
        if kind == "mult":
            if len(args) != 1:
                raise ValueError("mult takes one integer")
            return Multiple(int(args[0]))
        if kind == "block":
            if truncation is None:
                raise ValueError("block sequences need a truncation")
            return Block(truncation, int(args[0]) if args else 1)
    except ValueError as exc:
        raise SequenceSyntaxError(str(exc), lineno) from None
    raise SequenceSyntaxError(f"unknown sequence kind {kind!r}", lineno)


def parse_sequences(text: str, alphabet: Alphabet | None = None, truncation=None) -> list:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if line:
            out.append(parse_sequence(line, alphabet, truncation, lineno))
    return out
