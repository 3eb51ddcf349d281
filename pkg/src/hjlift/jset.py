"""Bounded J-set witness search.

A witness for a target ``A`` and a finite family ``F`` of sequences is
``(m, a, t)`` with ``t_1 < ... < t_m`` such that every alternating product
``a_1 f(t_1) a_2 ... a_m f(t_m) a_{m+1}`` lies in ``A``. Searches return the
canonically least witness, ordered by ``m``, then ``t``, then ``a`` (pool
elements in canonical order), or an :class:`Exhausted` marker. Exhaustion
is a bounded negative only; it never shows that ``A`` is not a J-set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .parallel import first_hit
from .predicates import InS0, Predicate
from .psg import FsElement, is_adequate_sequence_truncated
from .sequences import Explicit, HorizonError
from .words import Alphabet, Word, is_s0, is_sn, var, word_key


@dataclass(frozen=True)
class Witness:
    m: int
    a: tuple
    t: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "t", tuple(self.t))
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if len(self.a) != self.m + 1 or len(self.t) != self.m:
            raise ValueError(f"need m+1 a-entries and m t-entries for m={self.m}")
        if self.t[0] < 1 or any(x >= y for x, y in zip(self.t, self.t[1:])):
            raise ValueError(f"t must be strictly increasing positive indices, got {self.t}")


@dataclass(frozen=True)
class Bounds:
    m_max: int = 2
    t_horizon: int = 8
    pool_len: int = 2
    workers: int = 1

    def __post_init__(self):
        if min(self.m_max, self.t_horizon, self.pool_len, self.workers) < 1:
            raise ValueError(f"bounds must be positive: {self}")


@dataclass
class Exhausted:
    """No witness within ``bounds``; a bounded negative, not a proof."""

    bounds: Bounds
    candidates: int
    reason: str = "no candidate within bounds passes"
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Semigroup:
    name: str
    op: Callable

    def __repr__(self):
        return f"Semigroup({self.name})"


WORDS = Semigroup("words", lambda x, y: x + y)
ADDITION = Semigroup("addition", lambda x, y: x + y)
MULTIPLICATION = Semigroup("multiplication", lambda x, y: x * y)


def element_key(x):
    if isinstance(x, FsElement):
        return (0, x.mask)
    if isinstance(x, tuple):
        return (1,) + word_key(x)
    return (2, x)


def canonical_pool(pool: Iterable) -> tuple:
    """Deduplicated pool in canonical order, independent of input order."""
    return tuple(sorted(set(pool), key=element_key))


def candidate_count(m_max: int, horizon: int, pool_size: int) -> int:
    return sum(math.comb(horizon, m) * pool_size ** (m + 1) for m in range(1, m_max + 1))


def verify_witness(A: Predicate, F: Sequence, w: Witness, semigroup: Semigroup = WORDS) -> bool:
    """True iff every alternating product of ``w`` over ``F`` satisfies ``A``."""
    op = semigroup.op
    for f in F:
        horizon = getattr(f, "horizon", None)
        if horizon is not None and w.t[-1] > horizon:
            raise HorizonError(f"t_m = {w.t[-1]} exceeds horizon {horizon}")
        terms = []
        for j in range(w.m):
            terms += [w.a[j], f(w.t[j])]
        terms.append(w.a[w.m])
        product = terms[0]
        for x in terms[1:]:
            product = op(product, x)
            if product is None:
                return False
        if not A(product):
            return False
    return True


def _check_horizons(F: Sequence, horizon: int) -> None:
    for f in F:
        h = getattr(f, "horizon", None)
        if h is not None and h < horizon:
            raise HorizonError(f"search horizon {horizon} exceeds sequence horizon {h}")


def _search(accept: Callable, F: Sequence, pool: tuple, bounds: Bounds, op: Callable):
    nf = len(F)

    def scan(task):
        m, t = task
        vals = [[f(tj) for f in F] for tj in t]

        def rec(j, partial, chosen):
            if j == m:
                for a in pool:
                    for i in range(nf):
                        p = op(partial[i], a)
                        if p is None or not accept(p):
                            break
                    else:
                        return chosen + (a,)
                return None
            for a in pool:
                nxt = []
                for i in range(nf):
                    p = a if partial[i] is None else op(partial[i], a)
                    if p is None:
                        break
                    p = op(p, vals[j][i])
                    if p is None:
                        break
                    nxt.append(p)
                else:
                    found = rec(j + 1, nxt, chosen + (a,))
                    if found is not None:
                        return found
            return None

        a = rec(0, [None] * nf, ())
        return None if a is None else Witness(m, a, t)

    tasks = (
        (m, t)
        for m in range(1, bounds.m_max + 1)
        for t in itertools.combinations(range(1, bounds.t_horizon + 1), m)
    )
    return first_hit(scan, tasks, bounds.workers)


def default_pool(bounds: Bounds, semigroup: Semigroup, alphabet: Alphabet | None = None) -> tuple:
    if semigroup is WORDS:
        if alphabet is None:
            raise ValueError("word searches need an alphabet or an explicit pool")
        return tuple(alphabet.s0_words(bounds.pool_len))
    return tuple(range(1, bounds.t_horizon + 1))


def find_witness(
    A: Predicate,
    F: Sequence,
    bounds: Bounds = Bounds(),
    pool: Iterable | None = None,
    semigroup: Semigroup = WORDS,
    alphabet: Alphabet | None = None,
) -> Witness | Exhausted:
    """Canonically least witness for ``A`` over the family ``F``.

    ``pool`` defaults to the letter words of length ``<= bounds.pool_len``
    (word semigroups) or ``1 .. t_horizon`` (numeric semigroups).
    """
    F = list(F)
    _check_horizons(F, bounds.t_horizon)
    pool = canonical_pool(default_pool(bounds, semigroup, alphabet) if pool is None else pool)
    found = _search(A, F, pool, bounds, semigroup.op)
    if found is None:
        return Exhausted(bounds, candidate_count(bounds.m_max, bounds.t_horizon, len(pool)))
    return found


def find_witness_adequate(
    A: Predicate,
    F: Sequence,
    L: Iterable,
    t,
    bounds: Bounds = Bounds(),
    pool: Iterable | None = None,
) -> Witness | Exhausted:
    """Witness whose products lie in ``A`` and in ``sigma(L)`` of the truncation.

    Candidates with an undefined partial product are skipped. An empty
    ``L`` imposes no ``sigma`` constraint.
    """
    F = list(F)
    L = list(L)
    _check_horizons(F, bounds.t_horizon)
    for f in F:
        prefix = [f(i) for i in range(1, bounds.t_horizon + 1)]
        if len(prefix) >= 2:
            report = is_adequate_sequence_truncated(prefix, t, L or prefix[:1])
            if not report.products_defined:
                raise ValueError(f"sequence {f!r} is not adequate: product over {report.failing_H} undefined")
    pool = canonical_pool(t.elements if pool is None else pool)
    if L and not any(all(t.op(l, x) is not None for l in L) for x in t.elements):
        return Exhausted(bounds, 0, "sigma(L) is empty in the truncation")

    def accept(x) -> bool:
        return A(x) and all(t.op(l, x) is not None for l in L)

    found = _search(accept, F, pool, bounds, t.op)
    if found is None:
        return Exhausted(bounds, candidate_count(bounds.m_max, bounds.t_horizon, len(pool)))
    return found


@dataclass
class Refutation:
    """Bounded evidence that S0 is not a J-set in ``Sn u S0``."""

    n: int
    sequence: Explicit
    bounds: Bounds
    pool_size: int
    candidates: int
    passing: int
    argument: str = "variable-occurrence is concatenation-monotone"


def t_words(alphabet: Alphabet, n: int, max_len: int) -> tuple[Word, ...]:
    """Words of ``Sn u S0`` up to ``max_len``, canonical order."""
    return tuple(w for w in alphabet.words_upto(max_len, n) if is_s0(w) or is_sn(w, n))


def refute_s0_jset(
    n: int, alphabet: Alphabet, bounds: Bounds = Bounds(3, 3, 2), pool: Iterable | None = None
) -> Refutation:
    """Check every candidate for the single sequence ``f(t) = v_1^t v_2 ... v_n``.

    Every alternating product contains a variable, so none lies in S0.
    """
    tail = tuple(var(i) for i in range(2, n + 1))
    seq = Explicit(tuple((var(1),) * t + tail for t in range(1, bounds.t_horizon + 1)))
    pool = canonical_pool(t_words(alphabet, n, bounds.pool_len) if pool is None else pool)
    result = find_witness(InS0(), [seq], bounds, pool=pool)
    total = candidate_count(bounds.m_max, bounds.t_horizon, len(pool))
    return Refutation(n, seq, bounds, len(pool), total, 0 if not result else 1)
