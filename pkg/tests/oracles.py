"""Brute-force oracles for the tests.

Nothing here imports the package. Words are plain strings over lowercase
letters with the digits ``1``..``9`` standing for the variables, so
``"a1b"`` is the word written ``a#1b`` by the library.
"""

import itertools
import math


def to_lib(s: str) -> str:
    return "".join("#" + ch if ch.isdigit() else ch for ch in s)


def from_lib(s: str) -> str:
    return s.replace("#", "")


def all_words(letters: str, nvars: int, length: int):
    syms = letters + "".join(str(i) for i in range(1, nvars + 1))
    return ["".join(p) for p in itertools.product(syms, repeat=length)]


def n_var_words(letters: str, n: int, max_len: int):
    """Words using exactly the variables 1..n, by length then lex."""
    need = {str(i) for i in range(1, n + 1)}
    out = []
    for L in range(1, max_len + 1):
        out += [w for w in all_words(letters, n, L) if {c for c in w if c.isdigit()} == need]
    return out


def instances(w: str, letters: str, n: int):
    out = []
    for x in itertools.product(letters, repeat=n):
        s = w
        for i, ch in enumerate(x, 1):
            s = s.replace(str(i), ch)
        out.append(s)
    return out


# -- Hales-Jewett ------------------------------------------------------------


def lines(letters: str, N: int, n: int = 1):
    return [instances(r, letters, n) for r in n_var_words(letters, n, N) if len(r) == N]


def has_mono_line(coloring: dict, letters: str, N: int) -> bool:
    return any(len({coloring[p] for p in pts}) == 1 for pts in lines(letters, N))


def count_line_free(letters: str, c: int, N: int) -> int:
    cells = all_words(letters, 0, N)
    return sum(
        not has_mono_line(dict(zip(cells, cols)), letters, N)
        for cols in itertools.product(range(1, c + 1), repeat=len(cells))
    )


def hj_number(letters: str, c: int, N_max: int):
    for N in range(1, N_max + 1):
        if count_line_free(letters, c, N) == 0:
            return N
    return None


# -- J-set witnesses -----------------------------------------------------------


def first_witness(accept, seqs, pool, m_max, horizon, op=lambda x, y: x + y):
    """Canonically least (m, t, a): m, then t lex, then a lex in pool order."""
    for m in range(1, m_max + 1):
        for t in itertools.combinations(range(1, horizon + 1), m):
            for a in itertools.product(pool, repeat=m + 1):
                ok = True
                for f in seqs:
                    p = a[0]
                    for j in range(m):
                        p = op(op(p, f(t[j])), a[j + 1])
                    if not accept(p):
                        ok = False
                        break
                if ok:
                    return m, t, a
    return None


def candidate_total(m_max, horizon, pool_size):
    return sum(math.comb(horizon, m) * pool_size ** (m + 1) for m in range(1, m_max + 1))


def letter_pool(letters: str, max_len: int):
    return [w for L in range(1, max_len + 1) for w in all_words(letters, 0, L)]


# -- finite sums ---------------------------------------------------------------


def index_sets(T: int):
    """Nonempty subsets of 1..T as frozensets, in bitmask order."""
    return [frozenset(i + 1 for i in range(T) if m >> i & 1) for m in range(1, 1 << T)]


def fs_values(gens):
    return {H: sum(gens[i - 1] for i in H) for H in index_sets(len(gens))}


def least_sum_index(gens, v):
    for H in index_sets(len(gens)):
        if sum(gens[i - 1] for i in H) == v:
            return tuple(sorted(H))
    return None
