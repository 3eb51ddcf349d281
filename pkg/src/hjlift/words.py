"""Word algebra over a finite alphabet extended by variables v1, v2, ...

A word is a plain tuple of small integer symbol codes. Letters of an
alphabet of size k are the codes ``0 .. k-1``; variable ``v_i`` is the code
``VAR_BASE + i``, a reserved band above every admissible alphabet, so
variables always sort after letters. Canonical word order is length first,
then lexicographic on codes (see :func:`word_key`).

The empty tuple is the empty word. It is a legal value but belongs to
neither S0 nor Sn.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence, Union

Word = tuple[int, ...]

VAR_BASE = 256
MAX_LETTERS = 255
DEFAULT_MAX_LENGTH = 16
EMPTY: Word = ()

_TOKEN = re.compile(r"#(\d+)|(.)", re.S)


class WordError(ValueError):
    """A word is malformed or lies outside the domain of an operation."""


def var(i: int) -> int:
    """Symbol code of the variable ``v_i`` (``i >= 1``)."""
    if i < 1:
        raise WordError(f"variable index must be >= 1, got {i}")
    return VAR_BASE + i


def is_var(sym: int) -> bool:
    return sym > VAR_BASE


def var_index(sym: int) -> int:
    return sym - VAR_BASE


def word_key(w: Word) -> tuple[int, Word]:
    """Sort key for the canonical length-then-lexicographic order."""
    return (len(w), w)


@dataclass(frozen=True)
class Alphabet:
    """Printable letters plus the number of admissible variables.

    Letters must be single characters other than ``#``, digits and
    whitespace so that the textual form ``a#1b#1`` is unambiguous.
    ``max_length`` bounds every word built through :meth:`parse` and every
    enumeration.
    """

    letters: tuple[str, ...]
    nvars: int = 0
    max_length: int = DEFAULT_MAX_LENGTH
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise WordError("alphabet must have at least one letter")
        if len(letters) > MAX_LETTERS:
            raise WordError(f"at most {MAX_LETTERS} letters are supported")
        if len(set(letters)) != len(letters):
            raise WordError(f"duplicate letters in {letters!r}")
        for ch in letters:
            if len(ch) != 1 or ch == "#" or ch.isdigit() or ch.isspace():
                raise WordError(f"invalid letter {ch!r}")
        if self.nvars < 0:
            raise WordError("nvars must be >= 0")
        if self.max_length < 1:
            raise WordError("max_length must be >= 1")
        object.__setattr__(self, "_index", {ch: i for i, ch in enumerate(letters)})

    @property
    def k(self) -> int:
        return len(self.letters)

    @property
    def letter_codes(self) -> tuple[int, ...]:
        return tuple(range(self.k))

    def code(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise WordError(f"{letter!r} is not a letter of {''.join(self.letters)!r}") from None

    def symbols(self, n: int = 0) -> tuple[int, ...]:
        """Letters followed by ``v_1 .. v_n``, in canonical order."""
        return self.letter_codes + tuple(var(i) for i in range(1, n + 1))

    def is_letter(self, sym: int) -> bool:
        return 0 <= sym < self.k

    def parse(self, text: str) -> Word:
        """Parse the textual form, e.g. ``"a#1b#1"``; ``""`` is the empty word."""
        out = []
        for num, ch in _TOKEN.findall(text):
            if num:
                out.append(var(int(num)))
            else:
                out.append(self.code(ch))
        if len(out) > self.max_length:
            raise WordError(f"word {text!r} exceeds max length {self.max_length}")
        return tuple(out)

    def format(self, w: Word) -> str:
        parts = []
        for sym in w:
            if is_var(sym):
                parts.append(f"#{var_index(sym)}")
            elif self.is_letter(sym):
                parts.append(self.letters[sym])
            else:
                raise WordError(f"symbol code {sym} is not in this alphabet")
        return "".join(parts)

    def words(self, length: int, n: int = 0) -> Iterator[Word]:
        """All words of exactly ``length`` over letters and ``v_1..v_n``, lexicographically."""
        self._check_length(length)
        return itertools.product(self.symbols(n), repeat=length)

    def words_upto(self, max_len: int, n: int = 0, min_len: int = 1) -> Iterator[Word]:
        """All words with ``min_len <= |w| <= max_len`` in canonical order."""
        self._check_length(max_len)
        for length in range(min_len, max_len + 1):
            yield from itertools.product(self.symbols(n), repeat=length)

    def s0_words(self, max_len: int) -> Iterator[Word]:
        return self.words_upto(max_len)

    def sn_words(self, n: int, max_len: int, min_len: int = 1) -> Iterator[Word]:
        """Words of ``Sn`` (every ``v_1..v_n`` occurs) in canonical order."""
        for w in self.words_upto(max_len, n, max(min_len, n)):
            if is_sn(w, n):
                yield w

    def _check_length(self, length: int) -> None:
        if length > self.max_length:
            raise WordError(f"length {length} exceeds max length {self.max_length}")


def concat(w1: Word, w2: Word) -> Word:
    return w1 + w2


def variables_in(w: Word) -> set[int]:
    return {var_index(s) for s in w if is_var(s)}


def is_s0(w: Word) -> bool:
    return len(w) >= 1 and not any(is_var(s) for s in w)


def is_sn(w: Word, n: int) -> bool:
    """True iff ``w`` uses only letters and ``v_1..v_n`` and each ``v_i`` occurs."""
    if n < 1:
        return is_s0(w)
    return variables_in(w) == set(range(1, n + 1))


def var_count(w: Word, i: int) -> int:
    """Number of occurrences of ``v_i`` in ``w``."""
    return w.count(var(i))


def letter_count(w: Word, letter: int) -> int:
    return w.count(letter)


def substitute(w: Word, x: Sequence[int], alphabet: Alphabet | None = None) -> Word:
    """Replace each ``v_i`` of an ``n``-variable word by the letter ``x[i-1]``."""
    n = len(x)
    if n < 1:
        raise WordError("substitution needs at least one letter")
    for a in x:
        if is_var(a) or a < 0 or (alphabet is not None and not alphabet.is_letter(a)):
            raise WordError(f"substitution entry {a!r} is not a letter")
    if not is_sn(w, n):
        raise WordError(f"word {w!r} is not an {n}-variable word")
    return tuple(x[s - VAR_BASE - 1] if s > VAR_BASE else s for s in w)


def substitute_by_word(w: Word, u: Word, alphabet: Alphabet | None = None) -> Word:
    """``w(u)`` for a letter word ``u`` whose length is the variable count."""
    if not is_s0(u):
        raise WordError("substituted word must be a nonempty letter word")
    n = max(variables_in(w), default=0)
    if len(u) != n:
        raise WordError(f"word of length {len(u)} cannot fill {n} variables")
    return substitute(w, u, alphabet)


def pattern_extract(w: Word, k: int, n: int | None = None) -> Word:
    """Delete every letter and every ``v_i`` with ``i > k``.

    ``n`` defaults to the highest variable present in ``w``.
    """
    if n is None:
        n = max(variables_in(w), default=0)
    if not 1 <= k < n:
        raise WordError(f"need 1 <= k < n, got k={k}, n={n}")
    if not is_sn(w, n):
        raise WordError(f"word {w!r} is not an {n}-variable word")
    return tuple(s for s in w if VAR_BASE < s <= VAR_BASE + k)


# ---------------------------------------------------------------------------
# homomorphisms

Value = Union[Word, int]


@dataclass(frozen=True)
class Substitution:
    """``h_x``: ``w -> w(x)`` on Sn and the identity on S0."""

    x: tuple[int, ...]

    @classmethod
    def by_word(cls, u: Word) -> "Substitution":
        if not is_s0(u):
            raise WordError("substitution word must be a nonempty letter word")
        return cls(tuple(u))

    @property
    def nvars(self) -> int:
        return len(self.x)

    codomain = "word"

    def defined_on(self, w: Word) -> bool:
        return is_s0(w) or is_sn(w, len(self.x))

    def __call__(self, w: Word) -> Word:
        if is_s0(w):
            return w
        return substitute(w, self.x)

    def describe(self, alphabet: Alphabet) -> str:
        return "subst:" + alphabet.format(self.x)


@dataclass(frozen=True)
class VariableCount:
    """``w -> |w|_{v_i}``, a homomorphism into ``(omega, +)``."""

    i: int
    n: int = 0

    codomain = "int"

    @property
    def nvars(self) -> int:
        return max(self.i, self.n)

    def defined_on(self, w: Word) -> bool:
        return True

    def __call__(self, w: Word) -> int:
        return var_count(w, self.i)

    def describe(self, alphabet: Alphabet) -> str:
        return f"count:{self.i}"


@dataclass(frozen=True)
class PatternExtract:
    """Keep only ``v_1..v_k``; S0 words map to the empty word."""

    k: int
    n: int

    codomain = "word"

    @property
    def nvars(self) -> int:
        return self.n

    def defined_on(self, w: Word) -> bool:
        return is_s0(w) or is_sn(w, self.n)

    def __call__(self, w: Word) -> Word:
        if is_s0(w):
            return EMPTY
        return pattern_extract(w, self.k, self.n)

    def describe(self, alphabet: Alphabet) -> str:
        return f"extract:{self.k}/{self.n}"


@dataclass(frozen=True)
class UserTable:
    """Per-symbol images extended multiplicatively.

    Images are all words (concatenated) or all integers (summed). Symbols
    missing from the table map to themselves, or to 0 for integer tables.
    """

    images: tuple[tuple[int, Value], ...]
    nvars: int = 0

    def __post_init__(self):
        images = self.images
        if isinstance(images, dict):
            images = tuple(sorted(images.items()))
        object.__setattr__(self, "images", tuple(images))
        kinds = {isinstance(v, int) for _, v in self.images}
        if len(kinds) > 1:
            raise WordError("table images must be all words or all integers")

    @cached_property
    def _table(self) -> dict:
        return dict(self.images)

    @property
    def codomain(self) -> str:
        if self.images and isinstance(self.images[0][1], int):
            return "int"
        return "word"

    def defined_on(self, w: Word) -> bool:
        return True

    def __call__(self, w: Word) -> Value:
        table = self._table
        if self.codomain == "int":
            return sum(table.get(s, 0) for s in w)
        out: tuple = ()
        for s in w:
            out += table.get(s, (s,))
        return out

    def describe(self, alphabet: Alphabet) -> str:
        parts = []
        for s, img in self.images:
            key = alphabet.format((s,))
            parts.append(f"{key}={img if isinstance(img, int) else alphabet.format(img)}")
        return "table:" + ",".join(parts)


@dataclass(frozen=True)
class Identity:
    codomain = "word"
    nvars: int = 0

    def defined_on(self, w: Word) -> bool:
        return True

    def __call__(self, w: Word) -> Word:
        return w

    def describe(self, alphabet: Alphabet) -> str:
        return "identity"


HomSpec = Union[Substitution, VariableCount, PatternExtract, UserTable, Identity]


def apply_hom(h: HomSpec, w: Word) -> Value:
    if not h.defined_on(w):
        raise WordError(f"{w!r} is outside the domain of {h!r}")
    return h(w)


def parse_hom(text: str, alphabet: Alphabet) -> HomSpec:
    """Inverse of ``describe``: ``subst:ab``, ``count:1``, ``extract:1/3``,
    ``table:a=ab,b=b`` or ``identity``."""
    kind, _, arg = text.strip().partition(":")
    try:
        if kind == "subst":
            return Substitution.by_word(alphabet.parse(arg))
        if kind == "count":
            return VariableCount(int(arg))
        if kind == "extract":
            k, _, n = arg.partition("/")
            return PatternExtract(int(k), int(n))
        if kind == "identity":
            return Identity()
        if kind == "table":
            images = {}
            for item in filter(None, arg.split(",")):
                key, _, img = item.partition("=")
                sym = alphabet.parse(key)
                if len(sym) != 1:
                    raise WordError(f"table key {key!r} must be one symbol")
                images[sym[0]] = int(img) if img.lstrip("-").isdigit() else alphabet.parse(img)
            return UserTable(images)
    except ValueError as exc:
        raise WordError(f"bad homomorphism {text!r}: {exc}") from None
    raise WordError(f"unknown homomorphism kind {kind!r}")


@dataclass
class HomReport:
    """Outcome of :func:`check_hom_properties`.

    ``None`` means the property does not apply (S0-preservation of an
    integer-valued map). Counterexamples are ``(u, w)`` word pairs.
    """

    is_homomorphism: bool
    is_s0_preserving: bool | None
    is_s0_independent: bool | None
    counterexamples: dict[str, tuple[Word, Word]] = field(default_factory=dict)
    domain_size: int = 0


def _combine(a: Value, b: Value) -> Value:
    return a + b


def check_hom_properties(
    h: HomSpec, alphabet: Alphabet, sample_bound: int, n: int | None = None
) -> HomReport:
    """Check the homomorphism, S0-preserving and S0-independent identities
    over every pair of domain words of length at most ``sample_bound``."""
    if sample_bound < 2:
        raise ValueError("sample_bound must be >= 2")
    if n is None:
        n = max(getattr(h, "nvars", 0), alphabet.nvars)
    domain = [w for w in alphabet.words_upto(sample_bound, n) if h.defined_on(w)]
    s0 = list(alphabet.s0_words(sample_bound))
    image = {w: h(w) for w in domain}
    report = HomReport(True, None, None, domain_size=len(domain))

    for u in domain:
        for w in domain:
            uw = u + w
            if h.defined_on(uw) and h(uw) != _combine(image[u], image[w]):
                report.is_homomorphism = False
                report.counterexamples["homomorphism"] = (u, w)
                break
        if not report.is_homomorphism:
            break

    if h.codomain == "word":
        report.is_s0_preserving = True
        for u in s0:
            for w in domain:
                if h(u + w) != u + image[w] or h(w + u) != image[w] + u:
                    report.is_s0_preserving = False
                    report.counterexamples["s0_preserving"] = (u, w)
                    break
            if not report.is_s0_preserving:
                break

    report.is_s0_independent = True
    for u in s0:
        for w in domain:
            if not h(u + w) == image[w] == h(w + u):
                report.is_s0_independent = False
                report.counterexamples["s0_independent"] = (u, w)
                break
        if not report.is_s0_independent:
            break
    return report


def is_identity_on_s0(h: HomSpec, alphabet: Alphabet, bound: int) -> bool:
    return all(h(s) == s for s in alphabet.s0_words(bound))
