"""Data model for partial Latin rectangles.

A partial Latin rectangle (PLR) is an ``r x s`` array over symbols ``1..n``
whose cells may be empty, with no symbol repeated inside any row or any
column.  This module provides the immutable value types (dimensions, entries,
rectangles, permutation triples, coordinate permutations), the group actions
on rectangles, the row/column/symbol count tuples and their multiset
signatures ("structures"), the dominance order on count tuples, the
regularity predicates for square arrays, and the triangle-partitioned
tripartite-graph view.

Conventions
-----------
* Rows, columns, and symbols are 1-based everywhere.
* Entries are stored sorted lexicographically by ``(row, col, sym)``, which
  gives every rectangle a unique serialised form and cheap equality.
* Count tuples are plain ``tuple[int, ...]``; structures are non-increasing
  tuples of positive parts.
* Composing coordinate permutations follows ``(P^pi)^sigma = P^(sigma o pi)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidParastrophe,
    LatinViolation,
    NotSquare,
    WeightMismatch,
)

CountTuple = tuple[int, ...]
Structure = tuple[int, ...]
EntryTriple = tuple[int, int, int]


@dataclass(frozen=True, order=True)
class Dims:
    """Dimensions of a rectangle: ``r`` rows, ``s`` columns, ``n`` symbols."""

    r: int
    s: int
    n: int

    def __post_init__(self) -> None:
        if min(self.r, self.s, self.n) < 1:
            raise IndexOutOfRange(f"dims must be positive, got {self!r}")

    @property
    def is_square(self) -> bool:
        return self.r == self.s == self.n

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.n)


@dataclass(frozen=True, order=True)
class Entry:
    """One filled cell: row ``row`` and column ``col`` hold symbol ``sym``."""

    row: int
    col: int
    sym: int

    def as_tuple(self) -> EntryTriple:
        return (self.row, self.col, self.sym)


def _coerce_entry(e) -> Entry:
    if isinstance(e, Entry):
        return e
    row, col, sym = e
    return Entry(int(row), int(col), int(sym))


@dataclass(frozen=True)
class PartialLatinRectangle:
    """An immutable partial Latin rectangle.

    Use :func:`make_plr` (or :func:`from_grid` / :func:`plr_from_text`) to
    construct one; the factory validates the Latin conditions and stores the
    entries in canonical order.
    """

    dims: Dims
    entries: tuple[Entry, ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry_tuples(self) -> tuple[EntryTriple, ...]:
        return tuple(e.as_tuple() for e in self.entries)

    def grid(self) -> tuple[tuple[int, ...], ...]:
        """Return the array as rows of symbols, ``0`` marking an empty cell."""
        g = [[0] * self.dims.s for _ in range(self.dims.r)]
        for e in self.entries:
            g[e.row - 1][e.col - 1] = e.sym
        return tuple(tuple(row) for row in g)

    def __str__(self) -> str:
        return plr_to_text(self)


@dataclass(frozen=True)
class Isotopism:
    """A triple of permutations acting on rows, columns, and symbols.

    Each component is a tuple of 1-based images: ``alpha[i-1]`` is the image
    of row ``i``, and likewise for ``beta`` (columns) and ``gamma`` (symbols).
    """

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]

    def __post_init__(self) -> None:
        for name, perm in (("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)):
            if sorted(perm) != list(range(1, len(perm) + 1)):
                raise DimensionMismatch(f"{name}={perm} is not a permutation of 1..{len(perm)}")

    @staticmethod
    def identity(dims: Dims) -> "Isotopism":
        return Isotopism(
            tuple(range(1, dims.r + 1)),
            tuple(range(1, dims.s + 1)),
            tuple(range(1, dims.n + 1)),
        )


@dataclass(frozen=True, order=True)
class Parastrophe:
    """A permutation of the three coordinate roles (row, column, symbol).

    ``pi`` lists the 1-based images of positions 1, 2, 3; e.g. the swap of
    the first two coordinates is ``Parastrophe((2, 1, 3))``.
    """

    pi: tuple[int, int, int]

    def __post_init__(self) -> None:
        if sorted(self.pi) != [1, 2, 3]:
            raise InvalidParastrophe(f"{self.pi} is not a permutation of (1,2,3)")

    @property
    def is_identity(self) -> bool:
        return self.pi == (1, 2, 3)


PARASTROPHE_ID = Parastrophe((1, 2, 3))
PARASTROPHE_SWAP_ROW_COL = Parastrophe((2, 1, 3))
PARASTROPHE_SWAP_ROW_SYM = Parastrophe((3, 2, 1))
PARASTROPHE_SWAP_COL_SYM = Parastrophe((1, 3, 2))


def all_parastrophes() -> tuple[Parastrophe, ...]:
    """All six coordinate permutations, in lexicographic order of images."""
    return tuple(Parastrophe(p) for p in permutations((1, 2, 3)))


# ---------------------------------------------------------------------------
# Construction and serialisation
# ---------------------------------------------------------------------------


def make_plr(dims: Dims, entries: Iterable) -> PartialLatinRectangle:
    """Build a validated partial Latin rectangle.

    Parameters
    ----------
    dims:
        Array dimensions.
    entries:
        Iterable of ``Entry`` or ``(row, col, sym)`` triples.

    Raises
    ------
    IndexOutOfRange
        If an index exceeds the dimensions.
    LatinViolation
        If two entries clash in a cell, a row, or a column; the error carries
        the clashing pair.
    """
    coerced = sorted((_coerce_entry(e) for e in entries), key=Entry.as_tuple)
    by_cell: dict[tuple[int, int], Entry] = {}
    by_row_sym: dict[tuple[int, int], Entry] = {}
    by_col_sym: dict[tuple[int, int], Entry] = {}
    for e in coerced:
        if not (1 <= e.row <= dims.r and 1 <= e.col <= dims.s and 1 <= e.sym <= dims.n):
            raise IndexOutOfRange(f"entry {e.as_tuple()} outside dims {dims.as_tuple()}")
        for key, table, what in (
            ((e.row, e.col), by_cell, "cell"),
            ((e.row, e.sym), by_row_sym, "row"),
            ((e.col, e.sym), by_col_sym, "column"),
        ):
            other = table.get(key)
            if other is not None:
                raise LatinViolation(
                    f"entries {other.as_tuple()} and {e.as_tuple()} clash in a {what}",
                    first=other.as_tuple(),
                    second=e.as_tuple(),
                )
            table[key] = e
    return PartialLatinRectangle(dims, tuple(coerced))


def from_grid(rows: Sequence[Sequence[int]], n: int | None = None) -> PartialLatinRectangle:
    """Build a PLR from a row-major grid; ``0`` (or ``None``) marks empty cells.

    ``n`` defaults to the largest symbol present (at least 1), so square
    fixtures written as grids keep their drawn order by passing ``n``
    explicitly.
    """
    r = len(rows)
    s = len(rows[0]) if rows else 0
    entries = []
    largest = 1
    for i, row in enumerate(rows, start=1):
        if len(row) != s:
            raise IndexOutOfRange("ragged grid rows")
        for j, v in enumerate(row, start=1):
            if v:
                entries.append((i, j, int(v)))
                largest = max(largest, int(v))
    if n is None:
        n = largest
    return make_plr(Dims(r, s, n), entries)


def plr_to_text(P: PartialLatinRectangle) -> str:
    """Serialise to the canonical text form ``r s n : (i,j,k);(i,j,k);...``."""
    d = P.dims
    head = f"{d.r} {d.s} {d.n} :"
    if not P.entries:
        return head
    body = ";".join(f"({e.row},{e.col},{e.sym})" for e in P.entries)
    return f"{head} {body}"


def plr_from_text(text: str) -> PartialLatinRectangle:
    """Parse the canonical text form produced by :func:`plr_to_text`."""
    head, _, body = text.partition(":")
    try:
        r, s, n = (int(x) for x in head.split())
    except ValueError as exc:
        raise IndexOutOfRange(f"malformed dims in {text!r}") from exc
    entries = []
    body = body.strip()
    if body:
        for chunk in body.split(";"):
            chunk = chunk.strip().strip("()")
            i, j, k = (int(x) for x in chunk.split(","))
            entries.append((i, j, k))
    return make_plr(Dims(r, s, n), entries)


# ---------------------------------------------------------------------------
# Group actions
# ---------------------------------------------------------------------------


def apply_isotopism(P: PartialLatinRectangle, th: Isotopism) -> PartialLatinRectangle:
    """Apply row/column/symbol permutations to every entry.

    Raises
    ------
    DimensionMismatch
        If a component's length does not match the corresponding dimension.
    """
    d = P.dims
    if (len(th.alpha), len(th.beta), len(th.gamma)) != (d.r, d.s, d.n):
        raise DimensionMismatch(
            f"isotopism sizes {(len(th.alpha), len(th.beta), len(th.gamma))} "
            f"do not match dims {d.as_tuple()}"
        )
    mapped = (
        (th.alpha[e.row - 1], th.beta[e.col - 1], th.gamma[e.sym - 1]) for e in P.entries
    )
    return make_plr(d, mapped)


def _permute_triple(values: tuple, pi: tuple[int, int, int]) -> tuple:
    """Place ``values[u]`` at position ``pi[u]`` (1-based), for u = 0, 1, 2."""
    out = [None, None, None]
    for u in range(3):
        out[pi[u] - 1] = values[u]
    return tuple(out)


def valid_parastrophisms(dims: Dims) -> frozenset[Parastrophe]:
    """The coordinate permutations admissible at these dimensions.

    Only permutations that map the dimension triple onto itself are
    admissible: every permutation when ``r = s = n``; the single transposition
    exchanging the two equal dimensions when exactly two coincide; the
    identity alone when all three differ.
    """
    d = dims.as_tuple()
    return frozenset(
        Parastrophe(p)
        for p in permutations((1, 2, 3))
        if _permute_triple(d, p) == d
    )


def parastrophe(P: PartialLatinRectangle, pi: Parastrophe) -> PartialLatinRectangle:
    """Permute the coordinates of every entry (and the dims accordingly).

    Coordinate ``u`` of each old entry becomes coordinate ``pi[u]`` of the new
    one, so the count tuples of the result are the same three tuples moved to
    their new roles.

    Raises
    ------
    InvalidParastrophe
        If ``pi`` is not admissible for ``P.dims``.
    """
    if pi not in valid_parastrophisms(P.dims):
        raise InvalidParastrophe(f"{pi.pi} not admissible at dims {P.dims.as_tuple()}")
    new_dims = Dims(*_permute_triple(P.dims.as_tuple(), pi.pi))
    new_entries = (_permute_triple(e.as_tuple(), pi.pi) for e in P.entries)
    return make_plr(new_dims, new_entries)


# ---------------------------------------------------------------------------
# Types, structures, dominance
# ---------------------------------------------------------------------------


def type_of(P: PartialLatinRectangle) -> tuple[CountTuple, CountTuple, CountTuple]:
    """Per-row, per-column, and per-symbol entry counts ``(R, C, S)``."""
    d = P.dims
    R = [0] * d.r
    C = [0] * d.s
    S = [0] * d.n
    for e in P.entries:
        R[e.row - 1] += 1
        C[e.col - 1] += 1
        S[e.sym - 1] += 1
    return tuple(R), tuple(C), tuple(S)


def weight(T: Sequence[int]) -> int:
    """Total of a count tuple."""
    return sum(T)


def structure_of(T: Sequence[int]) -> Structure:
    """The multiset signature of a count tuple: its nonzero parts, sorted
    non-increasingly.  Zero components are dropped."""
    return tuple(sorted((t for t in T if t), reverse=True))


def structure_length(z: Structure) -> int:
    """Number of (nonzero) parts."""
    return len(z)


def structure_weight(z: Structure) -> int:
    """Sum of parts."""
    return sum(z)


def format_structure(z: Structure) -> str:
    """Render a structure as comma-joined non-increasing parts, e.g. ``2,2,1``."""
    return ",".join(str(p) for p in z)


def parse_structure(text: str) -> Structure:
    """Parse comma-joined parts; validates positivity and sorts non-increasingly."""
    text = text.strip()
    if not text:
        return ()
    parts = tuple(int(p) for p in text.split(","))
    if any(p < 1 for p in parts):
        raise WeightMismatch(f"structure parts must be positive: {text!r}")
    return tuple(sorted(parts, reverse=True))


def conjugate(T: Sequence[int]) -> CountTuple:
    """The partition-conjugate tuple ``(t*_1, ..., t*_m)`` of a weight-``m``
    count tuple: ``t*_i`` counts the components of ``T`` that are ``>= i``."""
    m = sum(T)
    return tuple(sum(1 for t in T if t >= i) for i in range(1, m + 1))


def dominates(T: Sequence[int], U: Sequence[int]) -> bool:
    """Test the dominance (majorisation) order ``T <= U``.

    Both tuples are rearranged non-increasingly and zero-padded to a common
    length; the test holds iff every prefix sum of ``T`` is at most the
    corresponding prefix sum of ``U``.

    Raises
    ------
    WeightMismatch
        If the tuples' totals differ.
    """
    if sum(T) != sum(U):
        raise WeightMismatch(f"weights differ: {sum(T)} vs {sum(U)}")
    a = sorted(T, reverse=True)
    b = sorted(U, reverse=True)
    length = max(len(a), len(b))
    a += [0] * (length - len(a))
    b += [0] * (length - len(b))
    pa = pb = 0
    for x, y in zip(a, b):
        pa += x
        pb += y
        if pa > pb:
            return False
    return True


# ---------------------------------------------------------------------------
# Regularity predicates (square arrays)
# ---------------------------------------------------------------------------


def _require_square(P: PartialLatinRectangle, op: str) -> None:
    if not P.dims.is_square:
        raise NotSquare(f"{op} is defined for square arrays only, got {P.dims.as_tuple()}")


def is_noncompressible(P: PartialLatinRectangle) -> bool:
    """True iff no row is empty, or no column is empty, or every symbol occurs.

    Defined for square arrays only.
    """
    _require_square(P, "is_noncompressible")
    R, C, S = type_of(P)
    return (0 not in R) or (0 not in C) or (0 not in S)


def is_regular(P: PartialLatinRectangle) -> bool:
    """Square-array regularity: two conditions must both hold.

    1. No cell is simultaneously the only filled cell in its row and the only
       filled cell in its column.
    2. If a row or a column has exactly one filled cell, that cell's symbol
       occurs at least twice overall.
    """
    _require_square(P, "is_regular")
    R, C, S = type_of(P)
    for e in P.entries:
        lone_row = R[e.row - 1] == 1
        lone_col = C[e.col - 1] == 1
        if lone_row and lone_col:
            return False
        if (lone_row or lone_col) and S[e.sym - 1] < 2:
            return False
    return True


# ---------------------------------------------------------------------------
# Tripartite-graph view
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TripartiteGraph:
    """Triangle-partitioned tripartite view of a rectangle.

    Vertex sets are rows ``1..r``, columns ``1..s``, and symbols ``1..n``.
    Each entry ``(i, j, k)`` contributes one triangle: a row-column edge, a
    row-symbol edge, and a column-symbol edge.  The Latin conditions make
    those triangles edge-disjoint, so the triangles partition the edge set.
    """

    dims: Dims
    row_col_edges: tuple[tuple[int, int], ...]
    row_sym_edges: tuple[tuple[int, int], ...]
    col_sym_edges: tuple[tuple[int, int], ...]
    triangles: tuple[EntryTriple, ...]

    @property
    def edge_count(self) -> int:
        return len(self.row_col_edges) + len(self.row_sym_edges) + len(self.col_sym_edges)


def to_tripartite(P: PartialLatinRectangle) -> TripartiteGraph:
    """Build the tripartite view; one triangle per entry, three edges each."""
    rc = tuple(sorted((e.row, e.col) for e in P.entries))
    rs = tuple(sorted((e.row, e.sym) for e in P.entries))
    cs = tuple(sorted((e.col, e.sym) for e in P.entries))
    return TripartiteGraph(P.dims, rc, rs, cs, P.entry_tuples())


# ---------------------------------------------------------------------------
# Exhaustive generation (small arrays, used by oracles and property tests)
# ---------------------------------------------------------------------------


def iter_all_plrs(dims: Dims, max_size: int | None = None) -> Iterator[PartialLatinRectangle]:
    """Yield every PLR at ``dims`` (optionally capped by size), by direct DFS.

    Intended for small dimensions in tests and cross-checks; the stream order
    is depth-first over cells in row-major order.
    """
    r, s, n = dims.as_tuple()
    cells = [(i, j) for i in range(1, r + 1) for j in range(1, s + 1)]
    row_used = [0] * (r + 1)
    col_used = [0] * (s + 1)
    chosen: list[EntryTriple] = []

    def rec(idx: int) -> Iterator[PartialLatinRectangle]:
        if idx == len(cells):
            yield make_plr(dims, list(chosen))
            return
        i, j = cells[idx]
        yield from rec(idx + 1)
        if max_size is not None and len(chosen) >= max_size:
            return
        for k in range(1, n + 1):
            bit = 1 << k
            if row_used[i] & bit or col_used[j] & bit:
                continue
            row_used[i] |= bit
            col_used[j] |= bit
            chosen.append((i, j, k))
            yield from rec(idx + 1)
            chosen.pop()
            row_used[i] &= ~bit
            col_used[j] &= ~bit

    return rec(0)
