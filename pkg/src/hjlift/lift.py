"""Witness-producing versions of the lifting theorems.

Each search returns the canonically least word (length, then lex) meeting
its constraints within a word-length budget, together with the data needed
to re-check the claim: substitution instances, index-set witnesses for
FS/FP membership, and full product tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .jset import Bounds, Exhausted, Witness, find_witness
from .predicates import Const, Predicate
from .psg import FsElement, fs_prefix
from .sequences import Mapped, Power
from .words import (
    Alphabet,
    HomSpec,
    Substitution,
    VariableCount,
    Word,
    check_hom_properties,
    is_identity_on_s0,
    is_sn,
    pattern_extract,
    substitute,
    var,
    var_count,
)

DEFAULT_WORD_LENGTH = 12


class ShiftMapError(ValueError):
    """The C-set shift map fails pointwise: ``y * x`` left ``D_n``."""

    def __init__(self, n: int, x: Word, detail: str = ""):
        super().__init__(f"shift map gap at (n={n}, x={x!r}) {detail}".rstrip())
        self.n = n
        self.x = x


class NestingError(ValueError):
    pass


def alternating_product(w: Witness, f) -> Word:
    out = ()
    for j in range(w.m):
        out += w.a[j] + f(w.t[j])
    return out + w.a[w.m]


def substitutions(alphabet: Alphabet, n: int) -> list[Substitution]:
    return [Substitution(x) for x in itertools.product(alphabet.letter_codes, repeat=n)]


def _instances(w: Word, alphabet: Alphabet, n: int, D: Predicate) -> list[tuple[tuple, Word, bool]]:
    out = []
    for x in itertools.product(alphabet.letter_codes, repeat=n):
        inst = substitute(w, x)
        out.append((x, inst, D(inst)))
    return out


def _all_instances_in(w: Word, alphabet: Alphabet, n: int, D: Predicate) -> bool:
    return all(D(substitute(w, x)) for x in itertools.product(alphabet.letter_codes, repeat=n))


# ---------------------------------------------------------------------------
# lemma 1


@dataclass
class Lemma1Result:
    witness: Witness
    inner: Witness
    G: list
    table: list[dict]

    @property
    def verified(self) -> bool:
        return all(row["in_D"] and row["image"] == row["inner_product"] for row in self.table)


def lemma1_lift(
    E: Sequence,
    F: Sequence[HomSpec],
    D: Predicate,
    alphabet: Alphabet,
    bounds: Bounds = Bounds(2, 4, 1),
    check_bound: int = 3,
    n: int | None = None,
) -> Lemma1Result | Exhausted:
    """Lift a J-set witness from S0 to the domain of the homomorphisms.

    Each ``nu`` in ``F`` must be a homomorphism fixing S0 pointwise (checked
    at ``check_bound``). The witness found for ``G = {nu o f}`` inside S0 is
    returned unchanged as the witness for ``E``.
    """
    if not F:
        raise ValueError("F must be nonempty")
    for nu in F:
        report = check_hom_properties(nu, alphabet, check_bound, n)
        if not report.is_homomorphism:
            raise ValueError(f"{nu!r} is not a homomorphism: {report.counterexamples['homomorphism']}")
        if not is_identity_on_s0(nu, alphabet, check_bound):
            raise ValueError(f"{nu!r} is not the identity on S0")
    G = [Mapped(nu, f) for f in E for nu in F]
    inner = find_witness(D, G, bounds, alphabet=alphabet)
    if not inner:
        inner.detail["G"] = G
        return inner
    witness = Witness(inner.m, inner.a, inner.t)
    table = []
    for fi, f in enumerate(E):
        product = alternating_product(witness, f)
        for ni, nu in enumerate(F):
            image = nu(product)
            table.append(
                {
                    "f": fi,
                    "nu": ni,
                    "product": product,
                    "image": image,
                    "inner_product": alternating_product(inner, Mapped(nu, f)),
                    "in_D": D(image),
                }
            )
    return Lemma1Result(witness, inner, G, table)


# ---------------------------------------------------------------------------
# theorem 3


@dataclass
class Theorem3Result:
    word: Word
    n: int
    instances: list
    path: str
    lift: Lemma1Result | None = None

    @property
    def lifted_word(self) -> Word | None:
        if self.lift is None:
            return None
        return self.lift.table[0]["product"]


def _first_sn(alphabet: Alphabet, n: int, max_len: int, ok: Callable[[Word], bool]) -> Word | None:
    for w in alphabet.sn_words(n, max_len):
        if ok(w):
            return w
    return None


def theorem3_find(
    D: Predicate,
    n: int,
    alphabet: Alphabet,
    bounds: Bounds = Bounds(2, 4, 1),
    word_length: int = DEFAULT_WORD_LENGTH,
    strategy: str = "lift",
) -> Theorem3Result | Exhausted:
    """Least ``w`` in ``Sn`` all of whose ``k^n`` instances satisfy ``D``.

    ``lift`` first lifts a witness for ``f(t) = (v_1..v_n)^t`` through the
    substitutions ``h_x``. The lifted product lies in ``Sn`` (it contains
    an ``f`` term) and bounds the length of the canonical answer, which is
    then found by enumeration. If the lift is exhausted the search falls
    back to direct enumeration up to ``word_length``.
    """
    ok = lambda w: _all_instances_in(w, alphabet, n, D)
    if strategy not in ("lift", "direct"):
        raise ValueError(f"unknown strategy {strategy!r}")
    lift = None
    limit = word_length
    path = "direct"
    if strategy == "lift":
        E = [Power(tuple(var(i) for i in range(1, n + 1)))]
        lifted = lemma1_lift(E, substitutions(alphabet, n), D, alphabet, bounds, n=n)
        if lifted:
            lift = lifted
            w_star = lifted.table[0]["product"]
            if not is_sn(w_star, n):
                raise AssertionError("lifted product fell into S0")
            limit = min(len(w_star), word_length)
            path = "lift"
        else:
            path = "direct-fallback"
    w = _first_sn(alphabet, n, limit, ok)
    if w is None:
        if lift is not None and len(lift.table[0]["product"]) > word_length:
            return Exhausted(bounds, 0, f"canonical word longer than word_length={word_length}")
        return Exhausted(bounds, 0, f"no {n}-variable word of length <= {limit} has all instances in D")
    return Theorem3Result(w, n, _instances(w, alphabet, n, D), path, lift)


# ---------------------------------------------------------------------------
# FS-constrained one-variable theorem


@dataclass
class FsConstrainedResult:
    word: Word
    tau: int
    padded: tuple[int, ...]
    padded_indices: tuple[int, ...]
    indices: tuple[int, ...]
    instances: list


def fs_constrained_find(
    D: Predicate,
    x: Sequence[int],
    alphabet: Alphabet,
    word_length: int = DEFAULT_WORD_LENGTH,
) -> FsConstrainedResult | Exhausted:
    """Least ``w`` in ``S1`` with every ``w(a)`` in ``D`` and ``|w|_v`` a finite sum of ``x``.

    Works in ``tau^{-1}[FS(y)]`` with ``y = (0, x_1, x_2, ...)``; S0 is the
    fibre over 0 and is excluded, so the index set found for ``tau(w)`` in
    ``y`` never reduces to the padding index.
    """
    x = tuple(x)
    if not x or any(v < 1 for v in x):
        raise ValueError("x must be a nonempty sequence of positive integers")
    padded = (0,) + x
    A = fs_prefix(padded)

    def ok(w):
        e = A.find_value(var_count(w, 1))
        return e is not None and _all_instances_in(w, alphabet, 1, D)

    w = _first_sn(alphabet, 1, word_length, ok)
    if w is None:
        return Exhausted(Bounds(), 0, f"no word of length <= {word_length} meets D and the FS constraint")
    e = A.find_value(var_count(w, 1))
    shifted = tuple(i - 1 for i in e.indices if i >= 2)
    return FsConstrainedResult(w, e.value, padded, e.indices, shifted, _instances(w, alphabet, 1, D))


# ---------------------------------------------------------------------------
# theorem 16


@dataclass
class Theorem16Result:
    word: Word
    n: int
    k: int
    extract: Word
    indices: tuple[int, ...]
    instances: list


def theorem16_find(
    D: Predicate,
    n: int,
    k: int,
    y: Sequence[Word],
    alphabet: Alphabet,
    word_length: int = DEFAULT_WORD_LENGTH,
) -> Theorem16Result | Exhausted:
    """Least ``w`` in ``Sn`` with all instances in ``D`` whose ``v_1..v_k``
    pattern is an ordered product of distinct ``y_t``."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    y = [tuple(t) for t in y]
    for t in y:
        if not is_sn(t, k) or any(s < var(1) for s in t):
            raise ValueError(f"pattern {t!r} must be a word over v_1..v_k using each")
    FP = fs_prefix(y, "FP")

    def ok(w):
        return FP.find_value(pattern_extract(w, k, n)) is not None and _all_instances_in(
            w, alphabet, n, D
        )

    w = _first_sn(alphabet, n, word_length, ok)
    if w is None:
        return Exhausted(Bounds(), 0, f"no {n}-variable word of length <= {word_length} found")
    e = FP.find_value(pattern_extract(w, k, n))
    return Theorem16Result(w, n, k, e.value, e.indices, _instances(w, alphabet, n, D))


# ---------------------------------------------------------------------------
# theorem 17


@dataclass
class Theorem17Result:
    word: Word
    psi: tuple[int, ...]
    image: tuple[int, ...]
    index_sets: tuple[tuple[int, ...], ...]
    nu_images: list


def _matrix(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or not np.issubdtype(M.dtype, np.integer):
        raise ValueError("M must be a 2-d integer matrix")
    if (M < 0).any():
        raise ValueError("entries of M must lie in omega")
    return M.astype(np.int64)


def theorem17_find(
    D: Predicate,
    F: Sequence[HomSpec],
    M,
    B: Sequence[Sequence[int]],
    n: int,
    alphabet: Alphabet,
    taus: Sequence[HomSpec] | None = None,
    word_length: int = DEFAULT_WORD_LENGTH,
    check_bound: int = 3,
) -> Theorem17Result | Exhausted:
    """Least ``w`` in ``Sn`` with ``nu(w)`` in ``D`` for all ``nu`` in ``F``
    and ``(M psi(w))_i`` in ``FS(B_i)`` for every row ``i``.

    ``psi(w) = (tau_1(w), ..., tau_m(w))``; the ``tau`` default to the
    variable counts ``|w|_{v_i}``, for which a word meeting any IP-set
    constraint exists whenever each row of ``M`` has a positive entry.
    """
    M = _matrix(M)
    rows, cols = M.shape
    if taus is None:
        taus = [VariableCount(i, n) for i in range(1, n + 1)]
    if len(taus) != cols:
        raise ValueError(f"M has {cols} columns but {len(taus)} tau maps were given")
    if len(B) != rows:
        raise ValueError(f"M has {rows} rows but {len(B)} FS prefixes were given")
    for tau in taus:
        report = check_hom_properties(tau, alphabet, check_bound, n)
        if tau.codomain != "int" or not report.is_homomorphism or not report.is_s0_independent:
            raise ValueError(f"{tau!r} is not an S0-independent homomorphism into (omega, +)")
    targets = [fs_prefix(tuple(b)) for b in B]
    for i in range(rows):
        if not M[i].any() and targets[i].find_value(0) is None:
            return Exhausted(Bounds(), 0, f"row {i + 1} of M is zero and 0 is not in B_{i + 1}")

    def evaluate(w):
        psi = np.array([tau(w) for tau in taus], dtype=np.int64)
        return psi, M @ psi

    def ok(w):
        _, image = evaluate(w)
        if any(t.find_value(int(v)) is None for t, v in zip(targets, image)):
            return False
        return all(D(nu(w)) for nu in F)

    w = _first_sn(alphabet, n, word_length, ok)
    if w is None:
        return Exhausted(Bounds(), 0, f"no {n}-variable word of length <= {word_length} found")
    psi, image = evaluate(w)
    by_rows = [sum(int(M[i, j]) * int(psi[j]) for j in range(cols)) for i in range(rows)]
    if by_rows != [int(v) for v in image]:
        raise AssertionError("matrix product and row sums disagree")
    index_sets = tuple(t.find_value(int(v)).indices for t, v in zip(targets, image))
    images = [(nu, nu(w), D(nu(w))) for nu in F]
    return Theorem17Result(w, tuple(int(v) for v in psi), tuple(by_rows), index_sets, images)


# ---------------------------------------------------------------------------
# C-set product sequences


@dataclass(frozen=True)
class SameLevel:
    """Shift map ``(n, x) -> n``: each ``D_n`` is closed under left shifts by its elements."""

    def __call__(self, n: int, x: Word) -> int:
        return n


@dataclass(frozen=True)
class FixedLevel:
    m: int

    def __call__(self, n: int, x: Word) -> int:
        return self.m


@dataclass
class CSetStructure:
    """Decreasing targets ``D_1 >= D_2 >= ...`` with a shift map ``(n, x) -> m``
    claiming ``D_m`` is contained in ``x^{-1} D_n``."""

    levels: tuple[Predicate, ...]
    shift_map: Callable[[int, Word], int] = SameLevel()

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, j: int) -> Predicate:
        if not 1 <= j <= self.depth:
            raise ShiftMapError(j, (), f"level {j} outside depth {self.depth}")
        return self.levels[j - 1]

    def check_nesting(self, x: Word) -> None:
        for j in range(1, self.depth):
            if self.levels[j](x) and not self.levels[j - 1](x):
                raise NestingError(f"{x!r} lies in D_{j + 1} but not in D_{j}")


def product_table(seq: Sequence[Word], F: Sequence[HomSpec]):
    """Every ordered product ``prod_{t in H} phi(t)(w_t)`` over ``H`` and ``phi: H -> F``."""
    L = len(seq)
    for size in range(1, L + 1):
        for H in itertools.combinations(range(1, L + 1), size):
            for choice in itertools.product(range(len(F)), repeat=size):
                out = ()
                for t, c in zip(H, choice):
                    out += F[c](seq[t - 1])
                yield H, choice, out


@dataclass
class CSetResult:
    sequence: list[Word]
    levels_used: list[int]
    table: list[tuple] = field(default_factory=list)
    failed_at: int | None = None
    reason: str = ""

    @property
    def complete(self) -> bool:
        return self.failed_at is None

    @property
    def verified(self) -> bool:
        return self.complete and all(row[3] for row in self.table)


def cset_sequence(
    cs: CSetStructure,
    F: Sequence[HomSpec],
    L: int,
    alphabet: Alphabet,
    n: int = 1,
    word_length: int = DEFAULT_WORD_LENGTH,
) -> CSetResult:
    """Build ``w_1 .. w_L`` with every product over ``(H, phi)`` in ``D_1``.

    Step ``m+1`` collects the products ``E`` of the earlier terms, takes
    the deepest level the shift map assigns to them, and picks the least
    ``w`` whose images under every ``nu`` lie in that level. Each shift
    claim is then checked on the elements it touched.
    """
    if not F:
        raise ValueError("F must be nonempty")
    D1 = cs.level(1)
    seq: list[Word] = []
    used: list[int] = []
    for step in range(1, L + 1):
        E = [p for _, _, p in product_table(seq, F)]
        for y in E:
            cs.check_nesting(y)
            if not D1(y):
                raise AssertionError(f"product {y!r} escaped D_1")
        depth = max((cs.shift_map(1, y) for y in E), default=1)
        target = cs.level(depth)
        if isinstance(target, Const) and not target.value:
            return CSetResult(seq, used, failed_at=step, reason=f"D_{depth} is empty")
        w = _first_sn(alphabet, n, word_length, lambda w: all(target(nu(w)) for nu in F))
        if w is None:
            return CSetResult(
                seq, used, failed_at=step,
                reason=f"no {n}-variable word of length <= {word_length} maps into D_{depth}",
            )
        for nu in F:
            x = nu(w)
            cs.check_nesting(x)
            for y in E:
                if not cs.level(cs.shift_map(1, y))(x) or not D1(y + x):
                    raise ShiftMapError(1, y, f"with x={x!r}")
        seq.append(w)
        used.append(depth)
    table = [(H, phi, p, D1(p)) for H, phi, p in product_table(seq, F)]
    return CSetResult(seq, used, table)
