"""Incidence-structure view of square partial Latin arrays.

A square array that is regular and non-compressible corresponds to a
three-class point-line incidence structure: one point per entry, one line per
nonempty row, nonempty column, and used symbol.  This module builds that
structure, decides connectivity and the configuration property, and produces
the main-class census for point rank up to eight, with the displayed grids
from the literature matched by canonical form.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .classify import (
    PARATOPISM,
    _census_block_cached,
    _grid_to_plr,
    canonical_form,
    GroupSpec,
)
from .core import (
    Dims,
    PartialLatinRectangle,
    from_grid,
    is_noncompressible,
    is_regular,
    plr_to_text,
)
from .counting import (
    StructureTriple,
    canonical_structure_triple,
    feasibility_precheck,
    partitions,
)
from .errors import NotSeminetSource, RankOutOfRange

Point = tuple[int, int, int]
Line = frozenset[Point]


@dataclass(frozen=True)
class Seminet:
    """Points and three parallel classes of lines from a square array.

    Every point lies on exactly one line of each class; lines within a class
    are disjoint; lines from distinct classes meet in at most one point.
    """

    source: PartialLatinRectangle
    points: frozenset[Point]
    row_lines: tuple[Line, ...]
    col_lines: tuple[Line, ...]
    sym_lines: tuple[Line, ...]

    @property
    def classes(self) -> tuple[tuple[Line, ...], ...]:
        return (self.row_lines, self.col_lines, self.sym_lines)

    @property
    def lines(self) -> tuple[Line, ...]:
        return self.row_lines + self.col_lines + self.sym_lines


def seminet_from_pls(plr: PartialLatinRectangle) -> Seminet:
    """Incidence structure of a square, non-compressible, regular array.

    Raises :class:`NotSeminetSource` naming the first failed precondition.
    """
    if not plr.dims.is_square:
        raise NotSeminetSource(
            f"source must be square, got dims {plr.dims.as_tuple()}"
        )
    if not is_noncompressible(plr):
        raise NotSeminetSource("source must be non-compressible")
    if not is_regular(plr):
        raise NotSeminetSource("source must be regular")
    points = frozenset(plr.entry_tuples())
    by_row: dict[int, set[Point]] = {}
    by_col: dict[int, set[Point]] = {}
    by_sym: dict[int, set[Point]] = {}
    for p in points:
        by_row.setdefault(p[0], set()).add(p)
        by_col.setdefault(p[1], set()).add(p)
        by_sym.setdefault(p[2], set()).add(p)
    net = Seminet(
        source=plr,
        points=points,
        row_lines=tuple(frozenset(by_row[i]) for i in sorted(by_row)),
        col_lines=tuple(frozenset(by_col[j]) for j in sorted(by_col)),
        sym_lines=tuple(frozenset(by_sym[k]) for k in sorted(by_sym)),
    )
    _validate_incidence(net)
    return net


def _validate_incidence(net: Seminet) -> None:
    """Assert the incidence axioms instead of assuming them."""
    for cls in net.classes:
        covered: set[Point] = set()
        for line in cls:
            if covered & line:
                raise AssertionError("lines within a class must be disjoint")
            covered |= line
        if covered != net.points:
            raise AssertionError("every point must lie on one line per class")
    for ca, cb in combinations(net.classes, 2):
        for la in ca:
            for lb in cb:
                if len(la & lb) > 1:
                    raise AssertionError(
                        "lines of distinct classes share at most one point"
                    )


def point_rank(net: Seminet) -> int:
    """Number of points (equals the source array's size)."""
    return len(net.points)


def l_order(net: Seminet) -> int:
    """Maximum number of lines in a parallel class."""
    return max(len(cls) for cls in net.classes)


def is_n_regular(net: Seminet, n: int) -> bool:
    """True iff every line carries exactly ``n`` points."""
    return all(len(line) == n for line in net.lines)


def min_line_size(net: Seminet) -> int:
    return min(len(line) for line in net.lines)


def is_connected(net: Seminet) -> bool:
    """True iff the point-line incidence graph is connected on all points."""
    pts = sorted(net.points)
    index = {p: i for i, p in enumerate(pts)}
    parent = list(range(len(pts)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for line in net.lines:
        anchor = None
        for p in sorted(line):
            if anchor is None:
                anchor = index[p]
            else:
                union(anchor, index[p])
    return len({find(i) for i in range(len(pts))}) <= 1


def is_configuration(net: Seminet) -> bool:
    """At least four points, every line with at least two, and connected."""
    return point_rank(net) >= 4 and min_line_size(net) >= 2 and is_connected(net)


# ---------------------------------------------------------------------------
# named grids displayed in the literature (0 = empty cell)
# ---------------------------------------------------------------------------

NAMED_GRIDS: dict[str, tuple[tuple[int, ...], ...]] = {
    "H": ((1, 2, 3), (2, 0, 1), (3, 1, 0)),
    "C1": ((1, 2, 3), (2, 1, 0), (3, 0, 1)),
    "C2": ((1, 2, 3), (2, 1, 0), (3, 0, 2)),
    "F1": ((1, 2, 0, 0), (3, 4, 0, 0), (0, 0, 1, 2), (0, 0, 3, 4)),
    "F2": ((1, 2, 3, 4), (3, 4, 0, 0), (0, 0, 1, 2), (0, 0, 0, 0)),
    "F3": ((1, 2, 3, 4), (2, 1, 4, 3), (0, 0, 0, 0), (0, 0, 0, 0)),
    "F4": ((1, 2, 3, 4), (0, 0, 4, 3), (2, 1, 0, 0), (0, 0, 0, 0)),
    "F5": ((1, 2, 3, 0), (2, 1, 4, 0), (3, 4, 0, 0), (0, 0, 0, 0)),
    "F6": ((1, 2, 3, 4), (2, 4, 0, 0), (0, 0, 1, 3), (0, 0, 0, 0)),
    "F7": ((1, 2, 3, 4), (0, 1, 0, 3), (4, 0, 2, 0), (0, 0, 0, 0)),
    "F8": ((0, 2, 0, 4), (4, 0, 1, 0), (0, 0, 2, 3), (1, 3, 0, 0)),
    "F9": ((0, 2, 0, 4), (4, 0, 1, 0), (0, 0, 2, 3), (3, 1, 0, 0)),
    "F10": ((0, 2, 0, 4), (1, 0, 3, 0), (0, 0, 4, 3), (2, 1, 0, 0)),
    "F11": ((0, 2, 0, 4), (3, 0, 1, 0), (0, 0, 4, 3), (2, 1, 0, 0)),
    "F12": ((3, 2, 4, 0), (1, 3, 2, 0), (4, 1, 0, 0), (0, 0, 0, 0)),
    "F13": ((4, 1, 3, 2), (2, 3, 4, 1), (0, 0, 0, 0), (0, 0, 0, 0)),
    "F14": ((3, 4, 2, 0), (1, 2, 3, 0), (4, 1, 0, 0), (0, 0, 0, 0)),
    "F15": ((1, 3, 2), (3, 2, 1), (2, 1, 0)),
    "F16": ((0, 4, 2, 3), (3, 2, 1, 0), (1, 0, 0, 4), (0, 0, 0, 0)),
    "F17": ((0, 2, 4, 3), (2, 1, 3, 0), (1, 0, 0, 4), (0, 0, 0, 0)),
    "F18": ((0, 2, 3, 4), (1, 3, 2, 0), (4, 0, 0, 1), (0, 0, 0, 0)),
    "F19": ((0, 3, 4, 2), (1, 2, 3, 0), (4, 0, 0, 1), (0, 0, 0, 0)),
    "F20": ((0, 3, 4, 2), (2, 1, 3, 0), (4, 0, 0, 1), (0, 0, 0, 0)),
    "F21": ((0, 4, 3, 2), (3, 2, 1, 0), (4, 0, 0, 1), (0, 0, 0, 0)),
    "F22": ((1, 2, 0, 0), (0, 0, 2, 1), (3, 0, 4, 0), (0, 4, 0, 3)),
    "F23": ((1, 2, 0, 0), (0, 0, 3, 4), (4, 0, 2, 0), (0, 3, 0, 1)),
    # displayed rank-8 example that is a seminet but not a configuration
    "NC8": ((1, 2, 0, 0), (2, 1, 0, 0), (0, 0, 3, 4), (0, 0, 4, 3)),
}


def named_plr(name: str) -> PartialLatinRectangle:
    """The displayed grid as a PLR at its own (square) order."""
    rows = NAMED_GRIDS[name]
    return from_grid(rows, n=len(rows))


def _named_canonical_by_dims() -> dict[Dims, dict[tuple, str]]:
    """Canonical paratopism form -> name, grouped by dims."""
    out: dict[Dims, dict[tuple, str]] = {}
    for name in NAMED_GRIDS:
        plr = named_plr(name)
        cf = canonical_form(plr, GroupSpec(PARATOPISM, plr.dims))
        out.setdefault(plr.dims, {})[cf.entry_tuples()] = name
    return out


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusRecord:
    """One main class of regular non-compressible square arrays."""

    rank: int
    triple: StructureTriple
    representative: PartialLatinRectangle
    is_configuration: bool
    is_connected: bool
    min_line_size: int
    named_match: str | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "rank": self.rank,
                "z1": ",".join(map(str, self.triple[0])),
                "z2": ",".join(map(str, self.triple[1])),
                "z3": ",".join(map(str, self.triple[2])),
                "representative": plr_to_text(self.representative),
                "is_configuration": self.is_configuration,
                "is_connected": self.is_connected,
                "min_line_size": self.min_line_size,
                "named_match": self.named_match,
            },
            sort_keys=True,
        )


MAX_CENSUS_RANK = 8


def _census_triples(rank: int) -> list[StructureTriple]:
    """Canonical structure triples that can carry a regular census class."""
    out = []
    for triple in combinations_with_replacement(partitions(rank, rank, rank), 3):
        z1, z2, z3 = canonical_structure_triple(*triple)
        if feasibility_precheck(z1, z2, z3):
            out.append((z1, z2, z3))
    return out


def _census_rank_chunk(
    rank: int, triples: list[StructureTriple]
) -> list[CensusRecord]:
    named = _named_canonical_by_dims()
    records: list[CensusRecord] = []
    for triple in triples:
        census = _census_block_cached(*triple, True)
        if census.main_classes == 0:
            continue
        spec = GroupSpec(PARATOPISM, census.dims)
        for form in census.mc_min_form:
            rep = canonical_form(_grid_to_plr(form, census.dims), spec)
            net = seminet_from_pls(rep)
            name = named.get(census.dims, {}).get(rep.entry_tuples())
            records.append(
                CensusRecord(
                    rank=rank,
                    triple=triple,
                    representative=rep,
                    is_configuration=is_configuration(net),
                    is_connected=is_connected(net),
                    min_line_size=min_line_size(net),
                    named_match=name,
                )
            )
    return records


def census(max_rank: int, jobs: int = 1) -> list[CensusRecord]:
    """Main-class census of regular non-compressible square arrays.

    One record per main class for every point rank 3..max_rank, computed at
    the order given by the maximum structure length (larger orders only add
    empty rows/columns or unused symbols and give the same classes).  Records
    are sorted by rank, triple, and representative, independent of ``jobs``.
    """
    if max_rank > MAX_CENSUS_RANK:
        raise RankOutOfRange(
            f"census covers point ranks up to {MAX_CENSUS_RANK}, got {max_rank}"
        )
    work: list[tuple[int, StructureTriple]] = []
    for rank in range(3, max_rank + 1):
        for triple in _census_triples(rank):
            work.append((rank, triple))
    records: list[CensusRecord] = []
    if jobs <= 1 or len(work) < 2:
        for rank, triple in work:
            records.extend(_census_rank_chunk(rank, [triple]))
    else:
        chunks = [work[x::jobs] for x in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_census_chunk_worker, chunk) for chunk in chunks]
            for future in futures:
                records.extend(future.result())
    records.sort(key=lambda rec: (rec.rank, rec.triple, rec.representative.entry_tuples()))
    return records


def _census_chunk_worker(
    work: list[tuple[int, StructureTriple]]
) -> list[CensusRecord]:
    out: list[CensusRecord] = []
    for rank, triple in work:
        out.extend(_census_rank_chunk(rank, [triple]))
    return out


def census_jsonl(records: list[CensusRecord]) -> str:
    """JSON-lines export, one record per line."""
    return "\n".join(rec.to_json() for rec in records) + "\n"
