"""Finite Hales-Jewett engines on ``A^N``.

Letters are the codes ``0 .. k-1``; a cell of ``A^N`` is identified with
its rank, the base-``k`` number spelled by the word, which is also its
lexicographic position. Colors are ``1 .. c``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .parallel import first_hit
from .words import VAR_BASE, Word, is_sn, substitute, var

EXHAUSTIVE_MAX_CELLS = 32
BACKTRACK_MAX_CELLS = 100


class SearchBoundError(ValueError):
    pass


def rank(w: Word, k: int) -> int:
    r = 0
    for s in w:
        r = r * k + s
    return r


def unrank(r: int, k: int, N: int) -> Word:
    out = []
    for _ in range(N):
        r, s = divmod(r, k)
        out.append(s)
    return tuple(reversed(out))


@dataclass(frozen=True)
class Coloring:
    """A coloring of all words of length ``N`` over ``k`` letters, or of all
    words of length ``1..N`` when ``cumulative``.

    ``colors`` lists the colors of the domain in canonical (length, lex)
    order.
    """

    k: int
    N: int
    colors: tuple[int, ...]
    cumulative: bool = False

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.k < 1 or self.N < 1:
            raise ValueError("need k >= 1 and N >= 1")
        if len(self.colors) != self.size:
            raise ValueError(f"expected {self.size} colors, got {len(self.colors)}")
        if any(c < 1 for c in self.colors):
            raise ValueError("colors are numbered from 1")

    @property
    def size(self) -> int:
        if self.cumulative:
            return sum(self.k**n for n in range(1, self.N + 1))
        return self.k**self.N

    @property
    def lengths(self) -> range:
        return range(1 if self.cumulative else self.N, self.N + 1)

    def _offset(self, length: int) -> int:
        if not self.cumulative:
            return 0
        return sum(self.k**n for n in range(1, length))

    def slice(self, length: int) -> tuple[int, ...]:
        start = self._offset(length)
        return self.colors[start : start + self.k**length]

    def color(self, w: Word) -> int:
        if len(w) not in self.lengths:
            raise KeyError(f"{w!r} is outside the coloring domain")
        if any(not 0 <= s < self.k for s in w):
            raise KeyError(f"{w!r} is not a letter word")
        return self.colors[self._offset(len(w)) + rank(w, self.k)]

    def domain(self) -> Iterator[Word]:
        for n in self.lengths:
            yield from itertools.product(range(self.k), repeat=n)

    def items(self) -> Iterator[tuple[Word, int]]:
        return zip(self.domain(), self.colors)

    @property
    def ncolors(self) -> int:
        return max(self.colors)

    @classmethod
    def from_function(cls, k: int, N: int, fn: Callable[[Word], int], cumulative: bool = False):
        lengths = range(1, N + 1) if cumulative else (N,)
        colors = [fn(w) for n in lengths for w in itertools.product(range(k), repeat=n)]
        return cls(k, N, tuple(colors), cumulative)

    @classmethod
    def from_mapping(cls, k: int, mapping: dict[Word, int]):
        lengths = {len(w) for w in mapping}
        N = max(lengths)
        cumulative = lengths != {N}
        lengths_needed = range(1, N + 1) if cumulative else (N,)
        try:
            colors = [mapping[w] for n in lengths_needed for w in itertools.product(range(k), repeat=n)]
        except KeyError as exc:
            raise ValueError(f"coloring is not total: missing {exc.args[0]!r}") from None
        if len(mapping) != len(colors):
            raise ValueError("coloring has words outside its domain")
        return cls(k, N, tuple(colors), cumulative)


@dataclass(frozen=True)
class Line:
    root: Word
    points: tuple[Word, ...]
    color: int


def count_roots(k: int, N: int, n: int = 1) -> int:
    """Number of length-``N`` words using each of ``v_1..v_n``."""
    return sum((-1) ** j * math.comb(n, j) * (k + n - j) ** N for j in range(n + 1))


def variable_words(k: int, N: int, n: int = 1, first: int | None = None) -> Iterator[Word]:
    """Length-``N`` ``n``-variable words in lexicographic order (variables
    after letters); ``first`` pins the leading symbol."""
    symbols = tuple(range(k)) + tuple(var(i) for i in range(1, n + 1))
    heads = symbols if first is None else (first,)
    for head in heads:
        for tail in itertools.product(symbols, repeat=N - 1):
            w = (head,) + tail
            if is_sn(w, n):
                yield w


def line_points(root: Word, k: int, n: int) -> tuple[Word, ...]:
    return tuple(substitute(root, x) for x in itertools.product(range(k), repeat=n))


@lru_cache(maxsize=64)
def line_cells(k: int, N: int) -> tuple[tuple[int, ...], ...]:
    """Every one-variable line of ``A^N`` as a tuple of cell ranks."""
    return tuple(
        tuple(rank(p, k) for p in line_points(root, k, 1)) for root in variable_words(k, N, 1)
    )


def find_mono_line(c: Coloring, n: int = 1, workers: int = 1) -> Line | None:
    """Canonically least root whose ``k^n`` points are monochromatic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = c.k
    symbols = tuple(range(k)) + tuple(var(i) for i in range(1, n + 1))

    def scan(task):
        length, head = task
        colors = c.slice(length)
        for root in variable_words(k, length, n, first=head):
            pts = line_points(root, k, n)
            col = colors[rank(pts[0], k)]
            if all(colors[rank(p, k)] == col for p in pts[1:]):
                return Line(root, pts, col)
        return None

    tasks = [(length, head) for length in c.lengths if length >= n for head in symbols]
    return first_hit(scan, tasks, workers)


def has_mono_line(c: Coloring, n: int = 1) -> bool:
    return find_mono_line(c, n) is not None


class _Backtracker:
    """Cell-by-cell coloring with forward checking on lines.

    Cells are taken in lex order and colors ascending, with the usual value
    symmetry break (a cell may open at most one new color), so the first
    completion is the lex-least line-free coloring.
    """

    def __init__(self, k: int, c: int, N: int):
        self.k, self.c, self.N = k, c, N
        self.K = k**N
        self.lines = line_cells(k, N)
        self.through = [[] for _ in range(self.K)]
        for li, cells in enumerate(self.lines):
            for x in cells:
                self.through[x].append(li)
        self.col = [0] * self.K
        self.cnt = [[0] * (c + 1) for _ in self.lines]
        self.free = [k] * len(self.lines)
        self.banned = [[0] * (c + 1) for _ in range(self.K)]
        self.nodes = 0

    def _assign(self, x: int, q: int):
        k = self.k
        self.col[x] = q
        ok = True
        bans = []
        for li in self.through[x]:
            self.cnt[li][q] += 1
            self.free[li] -= 1
            if self.cnt[li][q] == k:
                ok = False
            elif self.free[li] == 1 and self.cnt[li][q] == k - 1:
                y = next(z for z in self.lines[li] if self.col[z] == 0)
                self.banned[y][q] += 1
                bans.append((y, q))
                if all(self.banned[y][r] for r in range(1, self.c + 1)):
                    ok = False
        return ok, bans

    def _unassign(self, x: int, q: int, bans) -> None:
        for y, r in bans:
            self.banned[y][r] -= 1
        for li in self.through[x]:
            self.cnt[li][q] -= 1
            self.free[li] += 1
        self.col[x] = 0

    def _choices(self, x: int, top: int):
        for q in range(1, min(self.c, top + 1) + 1):
            if not self.banned[x][q]:
                yield q

    def solve(self, prefix: Sequence[int] = ()) -> list[int] | None:
        top = 0
        for x, q in enumerate(prefix):
            if q > top + 1 or self.banned[x][q]:
                return None
            ok, _ = self._assign(x, q)
            if not ok:
                return None
            top = max(top, q)
        return self._dfs(len(prefix), top)

    def _dfs(self, x: int, top: int) -> list[int] | None:
        if x == self.K:
            return list(self.col)
        self.nodes += 1
        for q in self._choices(x, top):
            ok, bans = self._assign(x, q)
            if ok:
                found = self._dfs(x + 1, max(top, q))
                if found is not None:
                    return found
            self._unassign(x, q, bans)
        return None


def _canonical_prefixes(c: int, depth: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(depth):
        out = [p + (q,) for p in out for q in range(1, min(c, max(p, default=0) + 1) + 1)]
    return out


def _exhaustive(k: int, c: int, N: int) -> list[int] | None:
    lines = line_cells(k, N)
    for colors in itertools.product(range(1, c + 1), repeat=k**N):
        if not any(all(colors[x] == colors[cells[0]] for x in cells) for cells in lines):
            return list(colors)
    return None


def search_line_free(
    k: int, c: int, N: int, mode: str = "auto", workers: int = 1
) -> Coloring | None:
    """Lex-least coloring of ``A^N`` with no monochromatic one-variable
    line, or ``None`` when every coloring has one.

    ``exhaustive`` enumerates all ``c**(k**N)`` colorings (``k**N <= 32``);
    ``backtrack`` prunes on forced lines (``k**N <= 100``). Both modes return
    the same coloring.
    """
    if k < 1 or c < 1 or N < 1:
        raise ValueError("need k, c, N >= 1")
    K = k**N
    if mode == "auto":
        mode = "exhaustive" if K * math.log2(max(c, 2)) <= 16 else "backtrack"
    if mode == "exhaustive":
        if K > EXHAUSTIVE_MAX_CELLS:
            raise SearchBoundError(f"exhaustive mode needs k^N <= {EXHAUSTIVE_MAX_CELLS}, got {K}")
        found = _exhaustive(k, c, N)
    elif mode == "backtrack":
        if K > BACKTRACK_MAX_CELLS:
            raise SearchBoundError(f"backtracking needs k^N <= {BACKTRACK_MAX_CELLS}, got {K}")
        depth = min(K, 3) if workers > 1 else 0
        found = first_hit(
            lambda p: _Backtracker(k, c, N).solve(p), _canonical_prefixes(c, depth), workers
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return None if found is None else Coloring(k, N, tuple(found))


def cylinder(c: Coloring, letter: int = 0) -> Coloring:
    """Coloring of ``A^(N-1)`` given by ``w -> c(w + letter)``."""
    if c.cumulative or c.N < 2:
        raise ValueError("cylinder needs a fixed-length coloring with N >= 2")
    return Coloring.from_function(c.k, c.N - 1, lambda w: c.color(w + (letter,)))


@dataclass
class HJNumber:
    """Least ``N`` with no line-free coloring, or ``None`` if unresolved."""

    k: int
    c: int
    N_max: int
    value: int | None
    line_free: dict[int, Coloring] = field(default_factory=dict)
    cylinder_checks: dict[int, bool] = field(default_factory=dict)

    @property
    def resolved(self) -> bool:
        return self.value is not None

    def __str__(self):
        if self.value is None:
            return f"unresolved at {self.N_max}"
        return str(self.value)


def hj_number(k: int, c: int, N_max: int, workers: int = 1) -> HJNumber:
    out = HJNumber(k, c, N_max, None)
    for N in range(1, N_max + 1):
        coloring = search_line_free(k, c, N, workers=workers)
        if coloring is None:
            out.value = N
            return out
        out.line_free[N] = coloring
        if N >= 2:
            ok = find_mono_line(cylinder(coloring)) is None
            out.cylinder_checks[N] = ok
            if not ok:
                raise AssertionError(f"cylinder of the line-free coloring at N={N} has a line")
    return out
