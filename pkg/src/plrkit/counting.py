"""Exact counting of partial Latin rectangles.

Size spectra with selectable backends, exact counts for a prescribed type
(per-row / per-column / per-symbol entry counts) with an optional regularity
restriction, structure-level aggregation that rebuilds a spectrum entry from
structure counts, closed-form polynomial counts for sizes up to six, and the
k-plex lower bound.  All arithmetic is exact (Python integers / fractions).
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial, prod
from typing import Iterable, Iterator, Mapping

from .core import Dims, conjugate, dominates
from .errors import (
    BackendUnavailable,
    MissingRho,
    NonIntegerResult,
    SizeOutOfRange,
    UnknownStrategy,
    WeightMismatch,
)
from .kernel import (
    SpectrumVec,
    decomposition_spectrum,
    iter_solution_grids,
    latin_system,
    with_regularity,
    with_type,
)

CountTuple = tuple[int, ...]
Structure = tuple[int, ...]
StructureTriple = tuple[Structure, Structure, Structure]


# ---------------------------------------------------------------------------
# direct spectrum backend: row-by-row dynamic programming
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _row_transitions(
    state: tuple[int, ...], n: int
) -> tuple[tuple[tuple[int, ...], int, int], ...]:
    """All distinct outcomes of adding one row on top of column symbol masks.

    ``state`` is a sorted tuple of per-column bitmasks (bit k-1 set = symbol k
    already used in that column).  Column order within the state is
    interchangeable: any two states with equal multisets of masks admit the
    same row fillings, so states are kept sorted.  Returns triples
    ``(new_state, placed, ways)`` where ``ways`` counts the distinct fillings
    that lead from ``state`` to ``new_state`` using ``placed`` entries.
    """
    s = len(state)
    outcomes: dict[tuple[tuple[int, ...], int], int] = {}
    masks = list(state)

    def walk(j: int, row_mask: int, placed: int) -> None:
        if j == s:
            key = (tuple(sorted(masks)), placed)
            outcomes[key] = outcomes.get(key, 0) + 1
            return
        walk(j + 1, row_mask, placed)  # leave this cell empty
        free = ~(state[j] | row_mask)
        for k in range(n):
            if free >> k & 1:
                masks[j] = state[j] | (1 << k)
                walk(j + 1, row_mask | (1 << k), placed + 1)
        masks[j] = state[j]

    walk(0, 0, 0)
    return tuple(
        (new_state, placed, ways)
        for (new_state, placed), ways in sorted(outcomes.items())
    )


def _direct_spectrum(dims: Dims) -> SpectrumVec:
    """Size spectrum via dynamic programming over column-mask multisets."""
    r, s, n = dims.as_tuple()
    length = r * s + 1
    dp: dict[tuple[int, ...], list[int]] = {(0,) * s: [1] + [0] * (length - 1)}
    for _ in range(r):
        nxt: dict[tuple[int, ...], list[int]] = {}
        for state, spec in dp.items():
            for new_state, placed, ways in _row_transitions(state, n):
                tgt = nxt.get(new_state)
                if tgt is None:
                    tgt = nxt[new_state] = [0] * length
                for size, cnt in enumerate(spec):
                    if cnt:
                        tgt[size + placed] += cnt * ways
        dp = nxt
    total = [0] * length
    for spec in dp.values():
        for size, cnt in enumerate(spec):
            total[size] += cnt
    return total


@lru_cache(maxsize=None)
def _full_row_transitions(
    state: tuple[int, ...], n: int
) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Like :func:`_row_transitions` but every cell of the row must be filled."""
    s = len(state)
    outcomes: dict[tuple[int, ...], int] = {}
    masks = list(state)

    def walk(j: int, row_mask: int) -> None:
        if j == s:
            key = tuple(sorted(masks))
            outcomes[key] = outcomes.get(key, 0) + 1
            return
        free = ~(state[j] | row_mask)
        for k in range(n):
            if free >> k & 1:
                masks[j] = state[j] | (1 << k)
                walk(j + 1, row_mask | (1 << k))
        masks[j] = state[j]

    walk(0, 0)
    return tuple(sorted(outcomes.items()))


def full_fill_count(dims: Dims) -> int:
    """Number of completely filled arrays: the size = r*s spectrum entry.

    This is the Latin-square count when r = s = n, and the Latin-rectangle
    count for r < s = n.  Uses the same column-mask dynamic programming as the
    direct backend restricted to full rows, which keeps the state space tiny
    even at order 6.
    """
    r, s, n = dims.as_tuple()
    if n < s:
        return 0
    dp: dict[tuple[int, ...], int] = {(0,) * s: 1}
    for _ in range(r):
        nxt: dict[tuple[int, ...], int] = {}
        for state, cnt in dp.items():
            for new_state, ways in _full_row_transitions(state, n):
                nxt[new_state] = nxt.get(new_state, 0) + cnt * ways
        dp = nxt
    return sum(dp.values())


def latin_square_count(n: int) -> int:
    """Number of Latin squares of order ``n`` (all cells filled)."""
    return full_fill_count(Dims(n, n, n))


# ---------------------------------------------------------------------------
# type-level counting
# ---------------------------------------------------------------------------

def feasibility_precheck(
    row_counts: Iterable[int],
    col_counts: Iterable[int],
    sym_counts: Iterable[int],
) -> bool:
    """Dominance-order necessary condition for a type to be realizable.

    True iff each count tuple is dominated by the conjugate of the previous
    one, cyclically: columns by rows*, symbols by columns*, rows by symbols*.
    Necessary but not sufficient — ((3,1,1),(3,1,1),(3,1,1)) passes yet has
    no realization.
    """
    R = tuple(int(x) for x in row_counts)
    C = tuple(int(x) for x in col_counts)
    S = tuple(int(x) for x in sym_counts)
    if not (sum(R) == sum(C) == sum(S)):
        raise WeightMismatch(
            f"count tuples have different weights: {sum(R)}, {sum(C)}, {sum(S)}"
        )
    return (
        dominates(C, conjugate(R))
        and dominates(S, conjugate(C))
        and dominates(R, conjugate(S))
    )


def _full_fill_shortcut(dims: Dims, R: CountTuple, C: CountTuple, S: CountTuple) -> bool:
    """True when the requested type pins every cell and symbols are forced."""
    r, s, n = dims.as_tuple()
    return (
        s == n
        and R == (s,) * r
        and C == (r,) * s
        and S == (r,) * n
    )


def count_type(
    row_counts: Iterable[int],
    col_counts: Iterable[int],
    sym_counts: Iterable[int],
) -> int:
    """Exact number of arrays with the given per-row/column/symbol counts.

    Tuples may contain zero components; the dimensions are the tuple lengths.
    Short-circuits to 0 when the dominance precheck fails.
    """
    R = tuple(int(x) for x in row_counts)
    C = tuple(int(x) for x in col_counts)
    S = tuple(int(x) for x in sym_counts)
    m = sum(R)
    if not (m == sum(C) == sum(S)):
        raise WeightMismatch(
            f"count tuples have different weights: {m}, {sum(C)}, {sum(S)}"
        )
    if m == 0:
        return 1
    if not feasibility_precheck(R, C, S):
        return 0
    dims = Dims(len(R), len(C), len(S))
    if m == dims.r * dims.s and _full_fill_shortcut(dims, R, C, S):
        return full_fill_count(dims)
    system = with_type(latin_system(dims), R, C, S)
    return sum(1 for _ in iter_solution_grids(system))


def count_type_regular(
    row_counts: Iterable[int],
    col_counts: Iterable[int],
    sym_counts: Iterable[int],
) -> int:
    """Exact number of regular arrays with the given counts.

    The tuples are zero-padded to a common square order (regularity is a
    square-array notion); padding does not change the solution set.
    """
    R = tuple(int(x) for x in row_counts)
    C = tuple(int(x) for x in col_counts)
    S = tuple(int(x) for x in sym_counts)
    m = sum(R)
    if not (m == sum(C) == sum(S)):
        raise WeightMismatch(
            f"count tuples have different weights: {m}, {sum(C)}, {sum(S)}"
        )
    if m == 0:
        return 1
    order = max(len(R), len(C), len(S))
    R += (0,) * (order - len(R))
    C += (0,) * (order - len(C))
    S += (0,) * (order - len(S))
    if not feasibility_precheck(R, C, S):
        return 0
    dims = Dims(order, order, order)
    system = with_regularity(latin_system(dims), R, C, S)
    return sum(1 for _ in iter_solution_grids(system))


# ---------------------------------------------------------------------------
# structure counts (rho) and aggregation back to spectrum entries
# ---------------------------------------------------------------------------

def as_structure(parts: Iterable[int]) -> Structure:
    """Normalize to a non-increasing tuple of positive parts (zeros dropped)."""
    z = tuple(sorted((int(p) for p in parts if int(p) != 0), reverse=True))
    if any(p < 0 for p in z):
        raise ValueError(f"structure parts must be non-negative: {z}")
    return z


def canonical_structure_triple(
    z1: Iterable[int], z2: Iterable[int], z3: Iterable[int]
) -> StructureTriple:
    """Order-insensitive key for a structure triple (sorted role order)."""
    a, b, c = sorted((as_structure(z1), as_structure(z2), as_structure(z3)))
    return (a, b, c)


_rho_cache: dict[tuple[StructureTriple, bool], int] = {}


def rho(
    z1: Iterable[int],
    z2: Iterable[int],
    z3: Iterable[int],
    regular: bool = False,
) -> int:
    """Count of arrays whose type is the representative of a structure triple.

    The representative type is each structure as a non-increasing tuple at
    exactly its own length; the value does not depend on which representative
    of the structure is chosen, nor on the role order of the three structures,
    so results are cached under the sorted (unordered) triple.
    """
    triple = canonical_structure_triple(z1, z2, z3)
    a, b, c = triple
    if not (sum(a) == sum(b) == sum(c)):
        raise WeightMismatch(
            f"structures have different weights: {sum(a)}, {sum(b)}, {sum(c)}"
        )
    key = (triple, regular)
    hit = _rho_cache.get(key)
    if hit is not None:
        return hit
    if sum(a) == 0:
        value = 1
    elif regular:
        value = count_type_regular(a, b, c)
    else:
        value = count_type(a, b, c)
    # insert-if-absent: concurrent fills agree because the value is pure
    return _rho_cache.setdefault(key, value)


def partitions(total: int, max_len: int, max_part: int) -> Iterator[Structure]:
    """Non-increasing positive partitions of ``total``, reverse-lexicographic."""
    if total == 0:
        yield ()
        return
    if max_len <= 0 or max_part <= 0:
        return

    def rec(remaining: int, cap: int, prefix: list[int]) -> Iterator[Structure]:
        if remaining == 0:
            yield tuple(prefix)
            return
        if len(prefix) >= max_len:
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, prefix)
            prefix.pop()

    yield from rec(total, max_part, [])


def type_arrangements(slots: int, structure: Iterable[int]) -> int:
    """Number of count tuples over ``slots`` positions realizing a structure.

    Chooses which positions carry the nonzero parts and divides out the
    reorderings of equal parts.
    """
    z = as_structure(structure)
    if len(z) > slots:
        return 0
    repeats = prod(factorial(c) for c in Counter(z).values())
    return comb(slots, len(z)) * factorial(len(z)) // repeats


def build_rho_table(
    dims: Dims, weight: int, regular: bool = False
) -> dict[StructureTriple, int]:
    """Structure counts for every precheck-passing triple of one weight.

    Covers all structures whose lengths and parts fit inside ``dims``; this is
    exactly the coverage :func:`aggregate_size` needs.
    """
    r, s, n = dims.as_tuple()
    table: dict[StructureTriple, int] = {}
    for z1 in partitions(weight, r, min(s, n)):
        for z2 in partitions(weight, s, min(r, n)):
            for z3 in partitions(weight, n, min(r, s)):
                if not feasibility_precheck(z1, z2, z3):
                    continue
                key = canonical_structure_triple(z1, z2, z3)
                if key not in table:
                    table[key] = rho(*key, regular=regular)
    return table


def aggregate_size(dims: Dims, m: int, rho_table: Mapping[StructureTriple, int]) -> int:
    """Spectrum entry at size ``m`` rebuilt from structure counts.

    Sums, over all triples of partitions of ``m`` that fit inside ``dims``,
    the structure count times the number of row/column/symbol count tuples
    realizing each structure.  Triples failing the dominance precheck are
    certifiably zero and skipped; any other triple missing from ``rho_table``
    raises :class:`MissingRho`.
    """
    r, s, n = dims.as_tuple()
    if m == 0:
        return 1
    total = 0
    for z1 in partitions(m, r, min(s, n)):
        a1 = type_arrangements(r, z1)
        for z2 in partitions(m, s, min(r, n)):
            a2 = type_arrangements(s, z2)
            for z3 in partitions(m, n, min(r, s)):
                if not feasibility_precheck(z1, z2, z3):
                    continue
                key = canonical_structure_triple(z1, z2, z3)
                value = rho_table.get(key)
                if value is None:
                    raise MissingRho(
                        f"rho table is missing the weight-{m} triple {key}"
                    )
                if value:
                    total += value * a1 * a2 * type_arrangements(n, z3)
    return total


# ---------------------------------------------------------------------------
# spectrum front end
# ---------------------------------------------------------------------------

_AGGREGATE_MAX_DIM = 4


def size_spectrum(
    dims: Dims,
    backend: str = "direct",
    *,
    strategy: str = "lex-adaptive",
    jobs: int = 1,
) -> SpectrumVec:
    """Counts of arrays by size, for sizes 0..r*s.

    Backends: ``direct`` (column-mask dynamic programming), ``decomposition``
    (first-row case split solved by conflict-graph recursion, parallelizable
    via ``jobs``), and ``aggregate`` (rebuilds each entry from structure
    counts; desk-scale only, every dimension must be <= 4).
    """
    if backend == "direct":
        return _direct_spectrum(dims)
    if backend == "decomposition":
        return decomposition_spectrum(dims, strategy=strategy, jobs=jobs)
    if backend == "aggregate":
        r, s, n = dims.as_tuple()
        if max(r, s, n) > _AGGREGATE_MAX_DIM:
            raise BackendUnavailable(
                "aggregate backend rebuilds entries from structure counts and "
                f"is limited to dimensions <= {_AGGREGATE_MAX_DIM}"
            )
        out = [0] * (r * s + 1)
        out[0] = 1
        for m in range(1, r * s + 1):
            out[m] = aggregate_size(dims, m, build_rho_table(dims, m))
        return out
    raise UnknownStrategy(f"unknown spectrum backend: {backend!r}")


# ---------------------------------------------------------------------------
# closed forms for sizes up to six
# ---------------------------------------------------------------------------

def sym_poly(exponents: Iterable[int], dims: Dims) -> int:
    """Sum of r^a s^b n^c over the distinct permutations of the exponents.

    The exponent triple is a multiset: (1,1,1) yields one term, (1,0,0) three
    terms, (2,1,1) three terms.
    """
    a, b, c = (int(x) for x in exponents)
    r, s, n = dims.as_tuple()
    return sum(r**p * s**q * n**t for p, q, t in set(permutations((a, b, c))))


# inner-polynomial term tables: size -> (coefficient per exponent triple, constant).
# m! * count = sym_poly((1,1,1)) * (constant + sum coeff * sym_poly(triple)).
_SIZE_POLY_TERMS: dict[int, tuple[dict[tuple[int, int, int], int], int]] = {
    1: ({}, 1),
    2: ({(1, 1, 1): 1, (1, 0, 0): -1}, 2),
    3: (
        {
            (2, 2, 2): 1,
            (2, 1, 1): -3,
            (1, 1, 1): 6,
            (1, 1, 0): 6,
            (2, 0, 0): 2,
            (1, 0, 0): -12,
        },
        14,
    ),
    4: (
        {
            (3, 3, 3): 1,
            (3, 2, 2): -6,
            (2, 2, 2): 12,
            (3, 1, 1): 11,
            (2, 2, 1): 30,
            (2, 1, 1): -60,
            (3, 0, 0): -6,
            (2, 1, 0): -36,
            (1, 1, 1): -28,
            (2, 0, 0): 72,
            (1, 1, 0): 198,
            (1, 0, 0): -228,
        },
        198,
    ),
    5: (
        {
            (4, 4, 4): 1,
            (4, 3, 3): -10,
            (3, 3, 3): 20,
            (4, 2, 2): 35,
            (3, 3, 2): 90,
            (3, 2, 2): -180,
            (4, 1, 1): -50,
            (3, 2, 1): -260,
            (2, 2, 2): -460,
            (3, 1, 1): 520,
            (2, 2, 1): 1350,
            (4, 0, 0): 24,
            (3, 1, 0): 240,
            (2, 2, 0): 480,
            (2, 1, 1): -320,
            (3, 0, 0): -480,
            (2, 1, 0): -2520,
            (1, 1, 1): -5090,
            (2, 0, 0): 2880,
            (1, 1, 0): 7440,
            (1, 0, 0): -6360,
        },
        4512,
    ),
    6: (
        {
            (5, 5, 5): 1,
            (5, 4, 4): -15,
            (4, 4, 4): 30,
            (5, 3, 3): 85,
            (4, 4, 3): 210,
            (4, 3, 3): -420,
            (5, 2, 2): -225,
            (4, 3, 2): -1065,
            (3, 3, 3): -2150,
            (4, 2, 2): 2130,
            (3, 3, 2): 5310,
            (5, 1, 1): 274,
            (4, 2, 1): 2310,
            (3, 3, 1): 4400,
            (3, 2, 2): 4800,
            (4, 1, 1): -4620,
            (3, 2, 1): -22170,
            (2, 2, 2): -49500,
            (5, 0, 0): -120,
            (4, 1, 0): -1800,
            (3, 2, 0): -6000,
            (3, 1, 1): 10460,
            (2, 2, 1): 34980,
            (4, 0, 0): 3600,
            (3, 1, 0): 30600,
            (2, 2, 0): 58440,
            (2, 1, 1): 88710,
            (3, 0, 0): -34800,
            (2, 1, 0): -165480,
            (1, 1, 1): -364268,
            (2, 0, 0): 140040,
            (1, 1, 0): 344520,
            (1, 0, 0): -240720,
        },
        146400,
    ),
}


def closed_form_terms(dims: Dims, m: int) -> list[tuple[str, int, int]]:
    """Evaluated (term label, coefficient, symmetric-sum value) diagnostics.

    The labels name the exponent triples; a failing cross-check against an
    enumerated count can print these rows to isolate the offending term.
    """
    if m not in _SIZE_POLY_TERMS:
        raise SizeOutOfRange(f"closed forms cover sizes 1..6, got {m}")
    coeffs, const = _SIZE_POLY_TERMS[m]
    rows = [
        ("".join(map(str, expo)), coeff, sym_poly(expo, dims))
        for expo, coeff in coeffs.items()
    ]
    rows.append(("constant", const, 1))
    return rows


def closed_form_count(dims: Dims, m: int) -> int:
    """Closed-form spectrum entry for sizes 0..6, exact division by m!."""
    if not 0 <= m <= 6:
        raise SizeOutOfRange(f"closed forms cover sizes 0..6, got {m}")
    if m == 0:
        return 1
    coeffs, const = _SIZE_POLY_TERMS[m]
    inner = const + sum(
        coeff * sym_poly(expo, dims) for expo, coeff in coeffs.items()
    )
    total = sym_poly((1, 1, 1), dims) * inner
    quotient, remainder = divmod(total, factorial(m))
    if remainder:
        raise NonIntegerResult(
            f"closed form at {dims.as_tuple()} size {m} is not divisible by {m}!"
        )
    return quotient


# diagonal (r = s = n) closed forms: size -> (exponent of (n-1), exponent of
# (n-2), inner polynomial coefficients from highest degree down).
_DIAGONAL_POLYS: dict[int, tuple[int, int, tuple[int, ...]]] = {
    1: (0, 0, (1,)),
    2: (2, 0, (1, 2)),
    3: (2, 0, (1, 2, -6, -8, 14)),
    4: (2, 0, (1, 2, -15, -20, 98, 36, -288, 198)),
    5: (2, 2, (1, 6, -7, -88, 6, 532, -84, -1386, 1128)),
    6: (2, 2, (1, 6, -22, -168, 231, 2022, -2014, -12606, 16168, 32250, -70740, 36600)),
}


def closed_form_diagonal(n: int, m: int) -> int:
    """Closed-form spectrum entry for square dims (n,n,n), sizes 0..6."""
    if not 0 <= m <= 6:
        raise SizeOutOfRange(f"closed forms cover sizes 0..6, got {m}")
    if m == 0:
        return 1
    e1, e2, coeffs = _DIAGONAL_POLYS[m]
    poly = 0
    for c in coeffs:
        poly = poly * n + c
    total = n**3 * (n - 1) ** e1 * (n - 2) ** e2 * poly
    quotient, remainder = divmod(total, factorial(m))
    if remainder:
        raise NonIntegerResult(
            f"diagonal closed form at order {n} size {m} is not divisible by {m}!"
        )
    return quotient


# ---------------------------------------------------------------------------
# k-plex lower bound
# ---------------------------------------------------------------------------

def plex_lower_bound(t: int, n: int) -> Fraction:
    """Lower bound on the count of order-n arrays of structure (t^n,t^n,n^t).

    Exact rational n!^t t!^n / t^(t n); companion tests assert it never
    exceeds rho(t^n, t^n, n^t).  Requires t, n >= 1.
    """
    if t < 1 or n < 1:
        raise ValueError(f"plex bound needs t, n >= 1, got ({t}, {n})")
    return Fraction(factorial(n) ** t * factorial(t) ** n, t ** (t * n))
