"""Finite truncations of partial semigroups.

An FS/FP truncation holds every nonempty index set ``H`` of the first ``T``
generators. Elements are keyed by ``H``, never by value, and two elements
combine exactly when their index sets are disjoint. Values are always
evaluated in increasing index order, so FP over words is well defined.

Index sets are stored as bitmasks internally (bit ``i-1`` for index ``i``);
the canonical element order is the bitmask order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

MAX_GENERATORS = 20
UNDEFINED = "."


class PsgError(ValueError):
    pass


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise PsgError(f"generator indices start at 1, got {i}")
        mask |= 1 << (i - 1)
    return mask


@dataclass(frozen=True)
class FsElement:
    mask: int
    value: object

    @property
    def indices(self) -> tuple[int, ...]:
        return indices_of(self.mask)

    def format(self, fmt: Callable[[object], str] = str) -> str:
        return f"H=[{','.join(map(str, self.indices))}]; value={fmt(self.value)}"

    def __repr__(self):
        return f"FsElement({self.format(repr)})"


def _combine(mode: str, a, b):
    if isinstance(a, tuple) or mode == "FS":
        return a + b
    return a * b


class FsTruncation:
    """``FS`` or ``FP`` of a generator prefix ``x_1 .. x_T``.

    Generators are integers or words (tuples); words are concatenated in
    either mode.
    """

    def __init__(self, generators: Sequence, mode: str = "FS"):
        if mode not in ("FS", "FP"):
            raise PsgError(f"mode must be FS or FP, got {mode!r}")
        generators = tuple(generators)
        if not generators:
            raise PsgError("need at least one generator")
        if len(generators) > MAX_GENERATORS:
            raise PsgError(f"at most {MAX_GENERATORS} generators ({len(generators)} given)")
        self.generators = generators
        self.mode = mode

    @property
    def horizon(self) -> int:
        return len(self.generators)

    @property
    def full_mask(self) -> int:
        return (1 << self.horizon) - 1

    @cached_property
    def _values(self) -> list:
        values = [None] * (1 << self.horizon)
        for mask in range(1, 1 << self.horizon):
            high = mask.bit_length() - 1
            rest = mask ^ (1 << high)
            gen = self.generators[high]
            values[mask] = gen if rest == 0 else _combine(self.mode, values[rest], gen)
        return values

    @cached_property
    def elements(self) -> tuple[FsElement, ...]:
        values = self._values
        return tuple(FsElement(m, values[m]) for m in range(1, 1 << self.horizon))

    @cached_property
    def _by_value(self) -> dict:
        out = {}
        for e in self.elements:
            out.setdefault(e.value, e)
        return out

    def __len__(self):
        return self.full_mask

    def __contains__(self, x) -> bool:
        return (
            isinstance(x, FsElement)
            and 0 < x.mask <= self.full_mask
            and self._values[x.mask] == x.value
        )

    def __repr__(self):
        return f"FsTruncation({self.generators!r}, mode={self.mode!r})"

    def element(self, indices: Iterable[int]) -> FsElement:
        mask = mask_of(indices)
        if not 0 < mask <= self.full_mask:
            raise PsgError(f"index set {sorted(indices)} outside horizon {self.horizon}")
        return FsElement(mask, self._values[mask])

    def find_value(self, value) -> FsElement | None:
        """Least element (bitmask order) whose value equals ``value``."""
        return self._by_value.get(value)

    def op(self, x: FsElement, y: FsElement) -> FsElement | None:
        if x.mask & y.mask:
            return None
        mask = x.mask | y.mask
        return FsElement(mask, self._values[mask])

    def key(self, x: FsElement) -> int:
        return x.mask


class TableTruncation:
    """A partial semigroup given by an explicit partial Cayley table.

    ``table[i][j]`` is the label of ``labels[i] * labels[j]`` or ``None``.
    """

    mode = "table"
    horizon = None

    def __init__(self, labels: Sequence[Hashable], table: Sequence[Sequence]):
        self.labels = tuple(labels)
        self._pos = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._pos) != len(self.labels):
            raise PsgError("duplicate labels")
        if len(table) != len(self.labels) or any(len(r) != len(self.labels) for r in table):
            raise PsgError("table must be square over the labels")
        rows = []
        for row in table:
            out = []
            for entry in row:
                if entry is None or entry == UNDEFINED:
                    out.append(None)
                elif entry in self._pos:
                    out.append(entry)
                else:
                    raise PsgError(f"table entry {entry!r} is not a label")
            rows.append(tuple(out))
        self.table = tuple(rows)

    @property
    def elements(self) -> tuple:
        return self.labels

    def __len__(self):
        return len(self.labels)

    def __contains__(self, x) -> bool:
        return x in self._pos

    def op(self, x, y):
        return self.table[self._pos[x]][self._pos[y]]

    def key(self, x) -> int:
        return self._pos[x]


PsgTruncation = FsTruncation | TableTruncation


def fs_prefix(generators: Sequence, mode: str = "FS") -> FsTruncation:
    return FsTruncation(generators, mode)


def _require(g, t) -> None:
    if g not in t:
        raise PsgError(f"{g!r} is not an element of the truncation")


def phi(g, t) -> frozenset:
    """Elements ``h`` for which ``g * h`` is defined."""
    _require(g, t)
    if isinstance(t, FsTruncation):
        return frozenset(e for e in t.elements if not e.mask & g.mask)
    return frozenset(h for h in t.elements if t.op(g, h) is not None)


def sigma(hset: Iterable, t) -> frozenset:
    """Intersection of ``phi`` over a nonempty finite set of elements."""
    hset = list(hset)
    if not hset:
        raise PsgError("sigma needs a nonempty set")
    for g in hset:
        _require(g, t)
    if isinstance(t, FsTruncation):
        used = 0
        for g in hset:
            used |= g.mask
        return frozenset(e for e in t.elements if not e.mask & used)
    out = phi(hset[0], t)
    for g in hset[1:]:
        out &= phi(g, t)
    return out


def left_quotient(g, A: Iterable, t) -> frozenset:
    """``g^{-1} A``: those ``h`` in ``phi(g)`` with ``g * h`` in ``A``."""
    A = set(A)
    return frozenset(h for h in phi(g, t) if t.op(g, h) in A)


def check_partial_associativity(t) -> list[tuple]:
    """All triples where one grouping is defined and the other differs."""
    elems = t.elements
    bad = []
    for x, y, z in itertools.product(elems, repeat=3):
        xy, yz = t.op(x, y), t.op(y, z)
        left = t.op(xy, z) if xy is not None else None
        right = t.op(x, yz) if yz is not None else None
        if left != right:
            bad.append((x, y, z))
    return bad


def is_commutative_where_defined(t) -> bool:
    return all(t.op(x, y) == t.op(y, x) for x, y in itertools.combinations(t.elements, 2))


def _colex_subsets(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Nonempty subsets of ``range(n)`` with at most ``bound`` members,
    ordered by largest member first (colex)."""

    def below(j: int, b: int) -> Iterator[tuple[int, ...]]:
        yield ()
        if b == 0:
            return
        for i in range(j):
            for rest in below(i, b - 1):
                yield rest + (i,)

    for j in range(n):
        for rest in below(j, bound - 1):
            yield rest + (j,)


@dataclass
class AdequacyReport:
    passed: bool
    failing: tuple | None
    horizon_exhaustion: bool
    checked: int


def is_adequate_truncated(t, subset_bound: int, within: int | None = None) -> AdequacyReport:
    """Check ``sigma(H)`` is nonempty for every ``H`` with ``|H| <= subset_bound``.

    ``within`` restricts FS/FP candidates to index sets inside the first
    ``within`` generators. For FS/FP truncations every failure is flagged
    as horizon exhaustion: generator ``T+1`` would be disjoint from all of
    ``H``. A finite truncation cannot decide adequacy itself.
    """
    if subset_bound < 1:
        raise ValueError("subset_bound must be >= 1")
    elems = t.elements
    fs = isinstance(t, FsTruncation)
    if within is not None:
        if not fs:
            raise PsgError("'within' only applies to FS/FP truncations")
        limit = (1 << within) - 1
        elems = tuple(e for e in elems if e.mask & ~limit == 0)
    checked = 0
    for combo in _colex_subsets(len(elems), subset_bound):
        checked += 1
        H = tuple(elems[i] for i in combo)
        if fs:
            used = 0
            for g in H:
                used |= g.mask
            empty = used == t.full_mask
        else:
            empty = not sigma(H, t)
        if empty:
            return AdequacyReport(False, H, fs, checked)
    return AdequacyReport(True, None, False, checked)


@dataclass
class SequenceAdequacyReport:
    products_defined: bool
    failing_H: tuple[int, ...] | None
    least_m: int | None


def ordered_product(items: Sequence, op):
    """Left-to-right product under a partial ``op``; ``None`` if undefined."""
    it = iter(items)
    acc = next(it)
    for x in it:
        acc = op(acc, x)
        if acc is None:
            return None
    return acc


def is_adequate_sequence_truncated(f: Sequence, t, F: Iterable) -> SequenceAdequacyReport:
    """Bounded check that ``f(1..P)`` is an adequate sequence.

    Condition (1): every ordered product over a nonempty ``H`` is defined.
    Condition (2): the least ``m <= P`` with every product from
    ``f(m..P)`` in ``sigma(F)``; ``None`` if there is no such ``m``.
    """
    f = list(f)
    if len(f) < 2:
        raise ValueError("sequence prefix must have length >= 2")
    if len(f) > MAX_GENERATORS:
        raise PsgError(f"prefix longer than {MAX_GENERATORS}")
    for x in f:
        _require(x, t)
    P = len(f)
    products = {}
    for mask in range(1, 1 << P):
        H = indices_of(mask)
        p = ordered_product([f[i - 1] for i in H], t.op)
        if p is None:
            return SequenceAdequacyReport(False, H, None)
        products[mask] = p
    target = sigma(F, t)
    for m in range(1, P + 1):
        tail = ((1 << P) - 1) & ~((1 << (m - 1)) - 1)
        if all(p in target for mask, p in products.items() if mask & ~tail == 0):
            return SequenceAdequacyReport(True, None, m)
    return SequenceAdequacyReport(True, None, None)
