"""Constraint systems over cell-symbol indicator variables, and their
weight spectra.

A partial Latin rectangle on dims ``(r, s, n)`` is encoded by ``r*s*n``
binary variables, one per candidate entry ``(i, j, k)``.  Two variables
*conflict* when they agree in at least two of the three coordinates (same
cell, same row and symbol, or same column and symbol); solutions are exactly
the conflict-free variable subsets, optionally filtered by fixed assignments
and exact per-row/column/symbol cardinalities.  The *weight spectrum* of a
system counts its solutions by size.

The module also provides the first-row decomposition used by the divide-and-
conquer counting backend: a family of *triangular cells*, each freezing a
small prefix of one row's content, that partitions all completions of that
row.  Stacking one cell per row yields a fully forced subsystem whose
spectrum is cheap; summing over stacks with multiplicities reproduces the
full spectrum.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterable, Iterator, Sequence

from .core import Dims, PartialLatinRectangle, make_plr
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InfeasibleSystem,
    LengthMismatch,
    LimitExceeded,
    NotSquare,
    RowMismatch,
    UnknownStrategy,
    UnsupportedConstraint,
    WeightMismatch,
)

SpectrumVec = list[int]


# ---------------------------------------------------------------------------
# Variable codec
# ---------------------------------------------------------------------------


def var_index(dims: Dims, i: int, j: int, k: int) -> int:
    """Encode entry ``(i, j, k)`` (1-based) as a variable id in ``0..rsn-1``."""
    if not (1 <= i <= dims.r and 1 <= j <= dims.s and 1 <= k <= dims.n):
        raise IndexOutOfRange(f"({i},{j},{k}) outside dims {dims.as_tuple()}")
    return ((i - 1) * dims.s + (j - 1)) * dims.n + (k - 1)


def var_entry(dims: Dims, v: int) -> tuple[int, int, int]:
    """Decode a variable id back to its ``(i, j, k)`` entry."""
    if not (0 <= v < dims.r * dims.s * dims.n):
        raise IndexOutOfRange(f"variable {v} outside dims {dims.as_tuple()}")
    v, k = divmod(v, dims.n)
    i, j = divmod(v, dims.s)
    return (i + 1, j + 1, k + 1)


@lru_cache(maxsize=None)
def latin_conflicts(dims: Dims) -> frozenset[tuple[int, int]]:
    """All conflicting variable pairs (sharing two coordinates), as id pairs."""
    pairs: set[tuple[int, int]] = set()
    r, s, n = dims.as_tuple()
    for i in range(1, r + 1):
        for j in range(1, s + 1):
            for k1 in range(1, n + 1):
                a = var_index(dims, i, j, k1)
                for k2 in range(k1 + 1, n + 1):
                    pairs.add((a, var_index(dims, i, j, k2)))
    for i in range(1, r + 1):
        for k in range(1, n + 1):
            for j1 in range(1, s + 1):
                a = var_index(dims, i, j1, k)
                for j2 in range(j1 + 1, s + 1):
                    pairs.add(tuple(sorted((a, var_index(dims, i, j2, k)))))
    for j in range(1, s + 1):
        for k in range(1, n + 1):
            for i1 in range(1, r + 1):
                a = var_index(dims, i1, j, k)
                for i2 in range(i1 + 1, r + 1):
                    pairs.add(tuple(sorted((a, var_index(dims, i2, j, k)))))
    return frozenset(pairs)


def _vars_clash(dims: Dims, a: int, b: int) -> bool:
    ia, ja, ka = var_entry(dims, a)
    ib, jb, kb = var_entry(dims, b)
    return (ia == ib) + (ja == jb) + (ka == kb) >= 2


# ---------------------------------------------------------------------------
# Constraint systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstraintSystem:
    """A conflict system over entry variables with optional extra constraints.

    ``fixed_one`` variables must appear in every solution, ``fixed_zero``
    variables in none.  When the exact count tuples ``row_counts`` /
    ``col_counts`` / ``sym_counts`` are set, solutions must realize them
    exactly.  ``infeasible`` is a cheaply detected certificate that no
    solution exists (contradictory fixings); deeper infeasibility simply
    yields an all-zero spectrum.
    """

    dims: Dims
    fixed_one: frozenset[int] = frozenset()
    fixed_zero: frozenset[int] = frozenset()
    row_counts: tuple[int, ...] | None = None
    col_counts: tuple[int, ...] | None = None
    sym_counts: tuple[int, ...] | None = None
    infeasible: bool = field(init=False, default=False)

    def __post_init__(self) -> None:
        bad = False
        if self.fixed_one & self.fixed_zero:
            bad = True
        ones = sorted(self.fixed_one)
        for x, a in enumerate(ones):
            for b in ones[x + 1 :]:
                if _vars_clash(self.dims, a, b):
                    bad = True
        if not bad and self.row_counts is not None:
            r, s, n = self.dims.as_tuple()
            caps = (
                (self.row_counts, s),
                (self.col_counts, r),
                (self.sym_counts, min(r, s)),
            )
            for counts, cap in caps:
                if any(c < 0 or c > cap for c in counts):  # type: ignore[union-attr]
                    bad = True
            used_r = [0] * r
            used_c = [0] * s
            used_s = [0] * n
            for v in self.fixed_one:
                i, j, k = var_entry(self.dims, v)
                used_r[i - 1] += 1
                used_c[j - 1] += 1
                used_s[k - 1] += 1
            if (
                any(u > t for u, t in zip(used_r, self.row_counts))
                or any(u > t for u, t in zip(used_c, self.col_counts))  # type: ignore[arg-type]
                or any(u > t for u, t in zip(used_s, self.sym_counts))  # type: ignore[arg-type]
            ):
                bad = True
        object.__setattr__(self, "infeasible", bad)

    @property
    def var_count(self) -> int:
        d = self.dims
        return d.r * d.s * d.n

    @property
    def conflicts(self) -> frozenset[tuple[int, int]]:
        return latin_conflicts(self.dims)

    @property
    def max_size(self) -> int:
        return self.dims.r * self.dims.s


def latin_system(dims: Dims) -> ConstraintSystem:
    """The unconstrained system whose solutions are all PLRs at ``dims``."""
    return ConstraintSystem(dims)


def with_type(
    sys: ConstraintSystem,
    row_counts: Sequence[int],
    col_counts: Sequence[int],
    sym_counts: Sequence[int],
) -> ConstraintSystem:
    """Restrict to solutions whose per-row/col/symbol counts match exactly.

    Raises
    ------
    LengthMismatch
        If a tuple's length disagrees with the corresponding dimension.
    WeightMismatch
        If the three tuples disagree on the total size.
    """
    d = sys.dims
    if (len(row_counts), len(col_counts), len(sym_counts)) != (d.r, d.s, d.n):
        raise LengthMismatch(
            f"count tuple lengths {(len(row_counts), len(col_counts), len(sym_counts))} "
            f"do not match dims {d.as_tuple()}"
        )
    if not (sum(row_counts) == sum(col_counts) == sum(sym_counts)):
        raise WeightMismatch(
            f"count tuples disagree on total size: "
            f"{sum(row_counts)}, {sum(col_counts)}, {sum(sym_counts)}"
        )
    return replace(
        sys,
        row_counts=tuple(row_counts),
        col_counts=tuple(col_counts),
        sym_counts=tuple(sym_counts),
    )


def with_regularity(
    sys: ConstraintSystem,
    row_counts: Sequence[int],
    col_counts: Sequence[int],
    sym_counts: Sequence[int],
) -> ConstraintSystem:
    """Restrict to the regular solutions of the given exact type.

    Only square systems support regularity.  On top of the type constraint,
    every cell that would violate a regularity condition, given the fixed
    counts, is forced empty: cells whose row and column both carry a single
    entry, and cells whose lone row or lone column entry would use a symbol
    occurring only once.
    """
    if not sys.dims.is_square:
        raise NotSquare(f"regularity needs square dims, got {sys.dims.as_tuple()}")
    out = with_type(sys, row_counts, col_counts, sym_counts)
    d = sys.dims
    zeros = set(out.fixed_zero)
    for i in range(1, d.r + 1):
        for j in range(1, d.s + 1):
            for k in range(1, d.n + 1):
                lone_row = row_counts[i - 1] == 1
                lone_col = col_counts[j - 1] == 1
                lone_sym = sym_counts[k - 1] == 1
                if (
                    (lone_row and lone_col)
                    or (lone_row and lone_sym)
                    or (lone_col and lone_sym)
                ):
                    zeros.add(var_index(d, i, j, k))
    return replace(out, fixed_zero=frozenset(zeros))


# ---------------------------------------------------------------------------
# First-row decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriangularCell:
    """A partial fixing of one row: variables forced in and forced out.

    Cells produced by :func:`decompose_first_row` pin down a prefix of the
    row's content; the cells jointly partition all possible contents of the
    row, so summing subsystem spectra over cell choices loses nothing.
    """

    dims: Dims
    row: int
    ones: frozenset[int]
    zeros: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.ones)

    def entries(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(sorted(var_entry(self.dims, v) for v in self.ones))


def decompose_first_row(dims: Dims, strategy: str = "lex-adaptive") -> tuple[TriangularCell, ...]:
    """Partition the first row's possible contents into triangular cells.

    ``lex-adaptive`` branches on the position of symbol 1 (absent, or in
    column ``s`` down to column 1) and, inside the column-1 branch only,
    additionally on the position of symbol 2 — yielding ``2s`` cells for
    ``s, n >= 2`` (``s + 1`` when there is a single symbol, 2 when there is a
    single column).  ``full-assignment`` emits one fully forced cell per
    possible complete content of the row.

    Raises
    ------
    UnknownStrategy
        For any other strategy name.
    """
    r, s, n = dims.as_tuple()
    row1 = [
        (j, k, var_index(dims, 1, j, k))
        for j in range(1, s + 1)
        for k in range(1, n + 1)
    ]

    if strategy == "lex-adaptive":
        def sym_vars(k: int) -> set[int]:
            return {var_index(dims, 1, j, k) for j in range(1, s + 1)}

        def placed(j: int, k: int) -> tuple[set[int], set[int]]:
            """ones/zeros for 'symbol k sits in column j'."""
            ones = {var_index(dims, 1, j, k)}
            zeros = {var_index(dims, 1, jj, k) for jj in range(1, s + 1) if jj != j}
            zeros |= {var_index(dims, 1, j, kk) for kk in range(1, n + 1) if kk != k}
            return ones, zeros

        cells = [TriangularCell(dims, 1, frozenset(), frozenset(sym_vars(1)))]
        for j in range(s, 1, -1):
            ones, zeros = placed(j, 1)
            cells.append(TriangularCell(dims, 1, frozenset(ones), frozenset(zeros)))
        base_ones, base_zeros = placed(1, 1)
        if n == 1:
            cells.append(TriangularCell(dims, 1, frozenset(base_ones), frozenset(base_zeros)))
        else:
            cells.append(
                TriangularCell(
                    dims, 1, frozenset(base_ones), frozenset(base_zeros | sym_vars(2))
                )
            )
            for j in range(s, 1, -1):
                ones2, zeros2 = placed(j, 2)
                cells.append(
                    TriangularCell(
                        dims,
                        1,
                        frozenset(base_ones | ones2),
                        frozenset(base_zeros | zeros2),
                    )
                )
        return tuple(cells)

    if strategy == "full-assignment":
        all_vars = {v for _, _, v in row1}
        fillings: list[frozenset[int]] = []

        def rec(j: int, used_syms: int, chosen: list[int]) -> None:
            if j > s:
                fillings.append(frozenset(chosen))
                return
            rec(j + 1, used_syms, chosen)
            for k in range(1, n + 1):
                if used_syms >> k & 1:
                    continue
                chosen.append(var_index(dims, 1, j, k))
                rec(j + 1, used_syms | (1 << k), chosen)
                chosen.pop()

        rec(1, 0, [])
        cells = [
            TriangularCell(dims, 1, ones, frozenset(all_vars - ones))
            for ones in fillings
        ]
        cells.sort(key=lambda c: (c.size, c.entries()))
        return tuple(cells)

    raise UnknownStrategy(f"unknown decomposition strategy {strategy!r}")


def shift_cell(cell: TriangularCell, row: int) -> TriangularCell:
    """Relocate a cell's fixings to another row.

    Raises
    ------
    IndexOutOfRange
        If ``row`` is outside ``1..r``.
    """
    d = cell.dims
    if not (1 <= row <= d.r):
        raise IndexOutOfRange(f"row {row} outside 1..{d.r}")
    offset = (row - cell.row) * d.s * d.n
    return TriangularCell(
        d,
        row,
        frozenset(v + offset for v in cell.ones),
        frozenset(v + offset for v in cell.zeros),
    )


def assemble_K(dims: Dims, cells: Sequence[TriangularCell]) -> ConstraintSystem:
    """Stack one triangular cell per row into a fully forced subsystem.

    ``cells[i]`` provides row ``i+1``'s fixing (cells are shifted here, so
    first-row cells can be passed directly).

    Raises
    ------
    RowMismatch
        If the number of cells differs from the number of rows.
    DimensionMismatch
        If a cell was built for different dimensions.
    """
    if len(cells) != dims.r:
        raise RowMismatch(f"need {dims.r} cells, got {len(cells)}")
    ones: set[int] = set()
    zeros: set[int] = set()
    for row, cell in enumerate(cells, start=1):
        if cell.dims != dims:
            raise DimensionMismatch(
                f"cell dims {cell.dims.as_tuple()} differ from {dims.as_tuple()}"
            )
        shifted = shift_cell(cell, row)
        ones |= shifted.ones
        zeros |= shifted.zeros
    return ConstraintSystem(dims, fixed_one=frozenset(ones), fixed_zero=frozenset(zeros))


def forced_size(K: ConstraintSystem) -> int:
    """Number of entries a forced subsystem pins in; its minimum solution size.

    Raises
    ------
    InfeasibleSystem
        If the fixings contradict each other.
    """
    if K.infeasible:
        raise InfeasibleSystem("fixed assignments contradict each other")
    return len(K.fixed_one)


# ---------------------------------------------------------------------------
# Weight spectra
# ---------------------------------------------------------------------------


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for x, av in enumerate(a):
        if av:
            for y, bv in enumerate(b):
                if bv:
                    out[x + y] += av * bv
    return out


def _components(vs: frozenset[int], adj: dict[int, frozenset[int]]) -> list[frozenset[int]]:
    remaining = set(vs)
    comps = []
    while remaining:
        seed = remaining.pop()
        comp = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v] & remaining:
                    remaining.discard(w)
                    comp.add(w)
                    nxt.append(w)
            frontier = nxt
        comps.append(frozenset(comp))
    return comps


def _indep_poly(
    vs: frozenset[int],
    adj: dict[int, frozenset[int]],
    memo: dict[tuple[int, ...], list[int]],
) -> list[int]:
    """Independence polynomial of the subgraph induced on ``vs``.

    Branch rule: the size-``m`` independent sets either avoid the pivot or
    contain it, so ``I(G) = I(G - v) + x * I(G - N[v])``.  Isolated vertices
    contribute ``(1 + x)`` factors and connected components multiply.  The
    memo is keyed by the exact induced vertex set, which is sound because
    every recursive subgraph is induced from one master graph.
    """
    if not vs:
        return [1]
    key = tuple(sorted(vs))
    hit = memo.get(key)
    if hit is not None:
        return hit

    iso = [v for v in vs if not (adj[v] & vs)]
    if iso:
        p = _indep_poly(vs - frozenset(iso), adj, memo)
        for _ in iso:
            p = _poly_mul(p, [1, 1])
        memo[key] = p
        return p

    comps = _components(vs, adj)
    if len(comps) > 1:
        p = [1]
        for comp in comps:
            p = _poly_mul(p, _indep_poly(comp, adj, memo))
        memo[key] = p
        return p

    pivot = min(vs, key=lambda v: (-len(adj[v] & vs), v))
    skip = _indep_poly(vs - {pivot}, adj, memo)
    take = _indep_poly(vs - {pivot} - adj[pivot], adj, memo)
    p = skip + [0] * (len(take) + 1 - len(skip))
    for x, val in enumerate(take):
        p[x + 1] += val
    memo[key] = p
    return p


def _adjacency(dims: Dims) -> dict[int, frozenset[int]]:
    return _adjacency_cached(dims)


@lru_cache(maxsize=None)
def _adjacency_cached(dims: Dims) -> dict[int, frozenset[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(dims.r * dims.s * dims.n)}
    for a, b in latin_conflicts(dims):
        adj[a].add(b)
        adj[b].add(a)
    return {v: frozenset(ws) for v, ws in adj.items()}


def _spectrum_recursion(
    sys: ConstraintSystem, memo: dict[tuple[int, ...], list[int]] | None = None
) -> SpectrumVec:
    if sys.row_counts is not None:
        raise UnsupportedConstraint(
            "the recursion backend does not support cardinality constraints"
        )
    length = sys.max_size + 1
    if sys.infeasible:
        return [0] * length
    adj = _adjacency(sys.dims)
    blocked = set(sys.fixed_zero) | set(sys.fixed_one)
    for v in sys.fixed_one:
        blocked |= adj[v]
    free = frozenset(range(sys.var_count)) - blocked
    if memo is None:
        memo = {}
    poly = _indep_poly(free, adj, memo)
    out = [0] * length
    base = len(sys.fixed_one)
    for deg, coeff in enumerate(poly):
        out[base + deg] += coeff
    return out


def _forced_symbols(sys: ConstraintSystem) -> dict[tuple[int, int], int]:
    forced: dict[tuple[int, int], int] = {}
    for v in sys.fixed_one:
        i, j, k = var_entry(sys.dims, v)
        forced[(i, j)] = k
    return forced


def iter_solution_grids(sys: ConstraintSystem) -> Iterator[bytes]:
    """Depth-first stream of solutions as row-major byte grids (0 = empty).

    Order is the search order, not entry-lexicographic.  Honors fixed
    assignments and exact cardinalities with remaining-capacity pruning.
    """
    if sys.infeasible:
        return
    r, s, n = sys.dims.as_tuple()
    dims = sys.dims
    forced = _forced_symbols(sys)
    zero = sys.fixed_zero
    has_counts = sys.row_counts is not None
    row_rem = list(sys.row_counts) if has_counts else [s] * r
    col_rem = list(sys.col_counts) if has_counts else [r] * s
    sym_rem = list(sys.sym_counts) if has_counts else [r * s] * n
    grid = bytearray(r * s)
    row_mask = [0] * (r + 1)
    col_mask = [0] * (s + 1)

    def candidates(i: int, j: int) -> Iterable[int]:
        force = forced.get((i, j))
        if force is not None:
            return (force,)
        return range(1, n + 1)

    def rec(pos: int) -> Iterator[bytes]:
        if pos == r * s:
            if not has_counts or (
                all(x == 0 for x in row_rem)
                and all(x == 0 for x in col_rem)
                and all(x == 0 for x in sym_rem)
            ):
                yield bytes(grid)
            return
        i, j = divmod(pos, s)
        i += 1
        j += 1
        must_fill = (i, j) in forced
        # prune: remaining capacity in this row / below this column
        if has_counts:
            if row_rem[i - 1] > s - j + 1:
                return
            if col_rem[j - 1] > r - i + 1:
                return
        for k in candidates(i, j):
            bit = 1 << k
            if row_mask[i] & bit or col_mask[j] & bit:
                if must_fill:
                    return
                continue
            if var_index(dims, i, j, k) in zero:
                continue
            if has_counts and (
                row_rem[i - 1] == 0 or col_rem[j - 1] == 0 or sym_rem[k - 1] == 0
            ):
                continue
            grid[pos] = k
            row_mask[i] |= bit
            col_mask[j] |= bit
            if has_counts:
                row_rem[i - 1] -= 1
                col_rem[j - 1] -= 1
                sym_rem[k - 1] -= 1
            yield from rec(pos + 1)
            grid[pos] = 0
            row_mask[i] &= ~bit
            col_mask[j] &= ~bit
            if has_counts:
                row_rem[i - 1] += 1
                col_rem[j - 1] += 1
                sym_rem[k - 1] += 1
        if not must_fill:
            if has_counts and (row_rem[i - 1] > s - j or col_rem[j - 1] > r - i):
                return
            yield from rec(pos + 1)

    yield from rec(0)


def _spectrum_enumeration(sys: ConstraintSystem) -> SpectrumVec:
    out = [0] * (sys.max_size + 1)
    for grid in iter_solution_grids(sys):
        out[sum(1 for b in grid if b)] += 1
    return out


def weight_spectrum(sys: ConstraintSystem, backend: str = "recursion") -> SpectrumVec:
    """Count solutions by size; index ``m`` holds the number of size-``m``
    solutions (fixed entries included in the size).

    Backends: ``recursion`` (independence-polynomial algebra; rejects
    cardinality constraints with :class:`UnsupportedConstraint`) and
    ``enumeration`` (depth-first search; supports everything).
    """
    if backend == "recursion":
        return _spectrum_recursion(sys)
    if backend == "enumeration":
        return _spectrum_enumeration(sys)
    raise UnknownStrategy(f"unknown weight_spectrum backend {backend!r}")


def enumerate_solutions(
    sys: ConstraintSystem, limit: int | None = None
) -> tuple[PartialLatinRectangle, ...]:
    """All solutions as validated rectangles, sorted by entry sequence.

    Raises
    ------
    LimitExceeded
        If more than ``limit`` solutions exist.
    """
    r, s, n = sys.dims.as_tuple()
    grids: list[bytes] = []
    for grid in iter_solution_grids(sys):
        grids.append(grid)
        if limit is not None and len(grids) > limit:
            raise LimitExceeded(f"more than {limit} solutions")

    def entries_of(grid: bytes) -> list[tuple[int, int, int]]:
        return [
            (pos // s + 1, pos % s + 1, grid[pos])
            for pos in range(r * s)
            if grid[pos]
        ]

    keyed = sorted((entries_of(g) for g in grids))
    return tuple(make_plr(sys.dims, ent) for ent in keyed)


# ---------------------------------------------------------------------------
# Decomposition-based spectrum
# ---------------------------------------------------------------------------


def _multiset_spectrum(
    dims: Dims,
    multiset: tuple[TriangularCell, ...],
    memo: dict[tuple[int, ...], list[int]],
) -> SpectrumVec:
    """Spectrum contribution of one cell multiset: multiplicity times the
    spectrum of the stacked system (the multiplicity counts the distinct
    row orderings of the multiset)."""
    counts: dict[TriangularCell, int] = {}
    for cell in multiset:
        counts[cell] = counts.get(cell, 0) + 1
    mult = factorial(dims.r)
    for c in counts.values():
        mult //= factorial(c)
    K = assemble_K(dims, multiset)
    spec = _spectrum_recursion(K, memo)
    return [mult * x for x in spec]


def _sum_spectra(acc: SpectrumVec, part: SpectrumVec) -> SpectrumVec:
    return [a + b for a, b in zip(acc, part)]


def _decomposition_chunk(
    dims: Dims, multisets: list[tuple[TriangularCell, ...]]
) -> SpectrumVec:
    memo: dict[tuple[int, ...], list[int]] = {}
    acc = [0] * (dims.r * dims.s + 1)
    for multiset in multisets:
        acc = _sum_spectra(acc, _multiset_spectrum(dims, multiset, memo))
    return acc


def decomposition_spectrum(
    dims: Dims, strategy: str = "lex-adaptive", jobs: int = 1
) -> SpectrumVec:
    """Full weight spectrum via the first-row decomposition.

    Sums, over all multisets of triangular cells of size ``r``, the spectrum
    of the stacked forced subsystem times the number of row arrangements of
    the multiset.  Deterministic for any ``jobs``; work is chunked over
    processes and partial sums are reduced in submission order.
    """
    cells = decompose_first_row(dims, strategy)
    multisets = list(combinations_with_replacement(cells, dims.r))
    if jobs <= 1 or len(multisets) < 4:
        return _decomposition_chunk(dims, multisets)

    from concurrent.futures import ProcessPoolExecutor

    jobs = min(jobs, len(multisets))
    chunks = [multisets[x::jobs] for x in range(jobs)]
    acc = [0] * (dims.r * dims.s + 1)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_decomposition_chunk, dims, chunk) for chunk in chunks]
        for fut in futures:
            acc = _sum_spectra(acc, fut.result())
    return acc
