"""Classification of partial Latin rectangles into equivalence classes.

Canonical forms under the row/column/symbol relabeling group (isotopism) and
its extension by admissible coordinate permutations (paratopism), plus class
censuses per structure triple: solution count, number of isotopy classes, and
number of main classes, with optional canonical representatives.

The census machinery enumerates the representative solution block of a
structure triple, quotients out symbol relabelings by a first-use canonical
form, walks row/column swap orbits over those quotient forms, and merges
orbits along block-stabilizing coordinate permutations with a union-find.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .core import (
    Dims,
    PartialLatinRectangle,
    _permute_triple,
    make_plr,
    parastrophe,
    type_of,
    valid_parastrophisms,
)
from .counting import StructureTriple, as_structure
from .errors import DimensionMismatch, LengthMismatch, UnknownStrategy, WeightMismatch
from .kernel import ConstraintSystem, iter_solution_grids, latin_system, with_regularity, with_type

ISOTOPISM = "isotopism"
PARATOPISM = "paratopism"


@dataclass(frozen=True)
class GroupSpec:
    """Acting group for canonicalization: relabelings, optionally extended
    by the admissible coordinate permutations of the dims."""

    kind: str
    dims: Dims

    def __post_init__(self) -> None:
        if self.kind not in (ISOTOPISM, PARATOPISM):
            raise UnknownStrategy(f"unknown group kind: {self.kind!r}")


@dataclass(frozen=True)
class ClassReport:
    """Census of one structure triple's solution block."""

    triple: StructureTriple
    regular: bool
    count: int
    isotopy_classes: int
    main_classes: int
    representatives: tuple[PartialLatinRectangle, ...] | None = None


# ---------------------------------------------------------------------------
# grid helpers (solutions are bytes of length r*s, 0 = empty cell)
# ---------------------------------------------------------------------------

def _grid_entries(grid: bytes, s: int) -> list[tuple[int, int, int]]:
    out = []
    for idx, b in enumerate(grid):
        if b:
            i, j = divmod(idx, s)
            out.append((i + 1, j + 1, b))
    return out


def _grid_to_plr(grid: bytes, dims: Dims) -> PartialLatinRectangle:
    return make_plr(dims, _grid_entries(grid, dims.s))


def _plr_to_grid(plr: PartialLatinRectangle) -> bytes:
    out = bytearray(plr.dims.r * plr.dims.s)
    for e in plr.entries:
        out[(e.row - 1) * plr.dims.s + (e.col - 1)] = e.sym
    return bytes(out)


def _swap_rows_perm(r: int, s: int, a: int, b: int) -> tuple[int, ...]:
    """Positional permutation swapping (1-based) rows a and b."""
    rows = list(range(r))
    rows[a - 1], rows[b - 1] = rows[b - 1], rows[a - 1]
    return tuple(row * s + j for row in rows for j in range(s))


def _swap_cols_perm(r: int, s: int, a: int, b: int) -> tuple[int, ...]:
    cols = list(range(s))
    cols[a - 1], cols[b - 1] = cols[b - 1], cols[a - 1]
    return tuple(i * s + col for i in range(r) for col in cols)


def _apply_perm(grid: bytes, perm: tuple[int, ...]) -> bytes:
    return bytes(map(grid.__getitem__, perm))


def _parastrophe_grid(grid: bytes, pi: tuple[int, int, int], s: int) -> bytes:
    """Coordinate-permuted grid; only valid when the permutation fixes dims."""
    out = bytearray(len(grid))
    for idx, b in enumerate(grid):
        if b:
            i, j = divmod(idx, s)
            t = _permute_triple((i + 1, j + 1, b), pi)
            out[(t[0] - 1) * s + (t[1] - 1)] = t[2]
    return bytes(out)


def _runs(counts: Sequence[int]) -> list[list[int]]:
    """Maximal blocks of equal values in a count tuple (1-based positions)."""
    runs: list[list[int]] = []
    for pos, value in enumerate(counts, start=1):
        if runs and counts[runs[-1][0] - 1] == value:
            runs[-1].append(pos)
        else:
            runs.append([pos])
    return runs


def _sym_canonicalizer(sym_counts: Sequence[int]):
    """First-use relabeling within blocks of equal-count symbols.

    Returns a function mapping a grid to the unique representative of its
    orbit under symbol relabelings that preserve the count tuple.
    """
    runs = [run for run in _runs(sym_counts) if len(run) > 1]
    if not runs:
        return lambda grid: grid
    identity = bytes(range(256))

    def canon(grid: bytes) -> bytes:
        first: dict[int, int] = {}
        for b in grid:
            if b and b not in first:
                first[b] = len(first)
        table = bytearray(identity)
        for run in runs:
            by_first_use = sorted(run, key=lambda k: (first.get(k, 1 << 30), k))
            for target, source in zip(run, by_first_use):
                table[source] = target
        return grid.translate(bytes(table))

    return canon


# ---------------------------------------------------------------------------
# representative solution block of a structure triple
# ---------------------------------------------------------------------------

def _representative_block(
    z1: Iterable[int], z2: Iterable[int], z3: Iterable[int], regular: bool
) -> tuple[Dims, tuple[int, ...], tuple[int, ...], tuple[int, ...], ConstraintSystem]:
    """Dims, padded count tuples, and constraint system for the block."""
    a, b, c = as_structure(z1), as_structure(z2), as_structure(z3)
    if not (sum(a) == sum(b) == sum(c)):
        raise WeightMismatch(
            f"structures have different weights: {sum(a)}, {sum(b)}, {sum(c)}"
        )
    if regular:
        order = max(len(a), len(b), len(c))
        R = a + (0,) * (order - len(a))
        C = b + (0,) * (order - len(b))
        S = c + (0,) * (order - len(c))
        dims = Dims(order, order, order)
        system = with_regularity(latin_system(dims), R, C, S)
    else:
        R, C, S = a, b, c
        dims = Dims(len(R), len(C), len(S))
        system = with_type(latin_system(dims), R, C, S)
    return dims, R, C, S, system


@dataclass
class _BlockCensus:
    dims: Dims
    row_counts: tuple[int, ...]
    col_counts: tuple[int, ...]
    sym_counts: tuple[int, ...]
    count: int
    isotopy_classes: int
    main_classes: int
    ic_min_form: list[bytes]
    mc_min_form: list[bytes]


def _census_block(
    z1: Iterable[int], z2: Iterable[int], z3: Iterable[int], regular: bool
) -> _BlockCensus:
    dims, R, C, S, system = _representative_block(z1, z2, z3, regular)
    r, s, _ = dims.as_tuple()
    canon = _sym_canonicalizer(S)

    count = 0
    forms: set[bytes] = set()
    for grid in iter_solution_grids(system):
        count += 1
        forms.add(canon(grid))

    # swap generators within equal-count blocks; swaps of empty rows/columns
    # fix every solution and are skipped
    gens: list[tuple[int, ...]] = []
    for run in _runs(R):
        if R[run[0] - 1] > 0:
            gens.extend(_swap_rows_perm(r, s, a, b) for a, b in zip(run, run[1:]))
    for run in _runs(C):
        if C[run[0] - 1] > 0:
            gens.extend(_swap_cols_perm(r, s, a, b) for a, b in zip(run, run[1:]))

    label: dict[bytes, int] = {}
    ic_min_form: list[bytes] = []
    for start in sorted(forms):
        if start in label:
            continue
        lbl = len(ic_min_form)
        ic_min_form.append(start)
        label[start] = lbl
        stack = [start]
        while stack:
            g = stack.pop()
            for perm in gens:
                h = canon(_apply_perm(g, perm))
                if h not in label:
                    label[h] = lbl
                    stack.append(h)
    ic = len(ic_min_form)

    # merge isotopy classes along coordinate permutations that keep all three
    # count tuples in place; such maps send classes onto classes, so one
    # representative per class suffices
    stabilizers = [
        p.pi
        for p in valid_parastrophisms(dims)
        if p.pi != (1, 2, 3) and _permute_triple((R, C, S), p.pi) == (R, C, S)
    ]
    parent = list(range(ic))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lbl in range(ic):
        for pi in stabilizers:
            image = canon(_parastrophe_grid(ic_min_form[lbl], pi, s))
            other = label[image]
            ra, rb = find(lbl), find(other)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    roots = sorted({find(x) for x in range(ic)})
    mc_min_form = []
    for root in roots:
        members = [ic_min_form[x] for x in range(ic) if find(x) == root]
        mc_min_form.append(min(members))
    mc_min_form.sort()

    return _BlockCensus(
        dims=dims,
        row_counts=R,
        col_counts=C,
        sym_counts=S,
        count=count,
        isotopy_classes=ic,
        main_classes=len(roots),
        ic_min_form=ic_min_form,
        mc_min_form=mc_min_form,
    )


@lru_cache(maxsize=None)
def _census_block_cached(
    z1: tuple[int, ...], z2: tuple[int, ...], z3: tuple[int, ...], regular: bool
) -> _BlockCensus:
    """Memoized block census keyed by normalized structure tuples."""
    return _census_block(z1, z2, z3, regular)


# ---------------------------------------------------------------------------
# public census API
# ---------------------------------------------------------------------------

def classify_structure_triple(
    z1: Iterable[int],
    z2: Iterable[int],
    z3: Iterable[int],
    *,
    regular: bool = False,
    dims: Dims | None = None,
) -> ClassReport:
    """Count, isotopy classes, and main classes of one structure triple.

    Computed on the representative block: each structure as a non-increasing
    tuple at its own length (padded to a common square order when
    ``regular``).  Embedding into larger ``dims`` only adds empty rows,
    columns, or unused symbols and changes none of the reported numbers; an
    explicit ``dims`` is validated for compatibility and otherwise ignored.
    """
    a, b, c = as_structure(z1), as_structure(z2), as_structure(z3)
    if dims is not None:
        need = (
            (max(len(a), len(b), len(c)),) * 3
            if regular
            else (len(a), len(b), len(c))
        )
        if any(have < want for have, want in zip(dims.as_tuple(), need)):
            raise LengthMismatch(
                f"dims {dims.as_tuple()} cannot host structure lengths {need}"
            )
    # reordering the triple maps the block through a coordinate permutation,
    # which is a bijection sending classes onto classes; the three reported
    # numbers are therefore order-invariant and one canonical block serves
    # every ordering
    census = _census_block_cached(*sorted((a, b, c)), regular)
    return ClassReport(
        triple=(a, b, c),
        regular=regular,
        count=census.count,
        isotopy_classes=census.isotopy_classes,
        main_classes=census.main_classes,
    )


def class_representatives(
    z1: Iterable[int],
    z2: Iterable[int],
    z3: Iterable[int],
    *,
    regular: bool = False,
    kind: str = PARATOPISM,
) -> tuple[PartialLatinRectangle, ...]:
    """One canonical representative per class, sorted by serialized form."""
    if kind not in (ISOTOPISM, PARATOPISM):
        raise UnknownStrategy(f"unknown group kind: {kind!r}")
    census = _census_block_cached(
        as_structure(z1), as_structure(z2), as_structure(z3), regular
    )
    forms = census.ic_min_form if kind == ISOTOPISM else census.mc_min_form
    spec = GroupSpec(kind, census.dims)
    reps = [canonical_form(_grid_to_plr(f, census.dims), spec) for f in forms]
    reps.sort(key=lambda p: p.entry_tuples())
    return tuple(reps)


def young_orbit_grids(plr: PartialLatinRectangle) -> frozenset[bytes]:
    """Full orbit of a PLR under count-preserving row/column/symbol swaps.

    Explicit orbit expansion for consistency checks on small cases; the
    orbit's size equals the class size within the PLR's exact-type block.
    """
    dims = plr.dims
    r, s, n = dims.as_tuple()
    R, C, S = type_of(plr)
    gens: list[tuple[int, ...]] = []
    for a in range(1, r + 1):
        for b_ in range(a + 1, r + 1):
            if R[a - 1] == R[b_ - 1]:
                gens.append(_swap_rows_perm(r, s, a, b_))
    for a in range(1, s + 1):
        for b_ in range(a + 1, s + 1):
            if C[a - 1] == C[b_ - 1]:
                gens.append(_swap_cols_perm(r, s, a, b_))
    sym_swaps: list[bytes] = []
    for a in range(1, n + 1):
        for b_ in range(a + 1, n + 1):
            if S[a - 1] == S[b_ - 1]:
                table = bytearray(range(256))
                table[a], table[b_] = b_, a
                sym_swaps.append(bytes(table))
    start = _plr_to_grid(plr)
    seen = {start}
    stack = [start]
    while stack:
        g = stack.pop()
        for perm in gens:
            h = _apply_perm(g, perm)
            if h not in seen:
                seen.add(h)
                stack.append(h)
        for table in sym_swaps:
            h = g.translate(table)
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return frozenset(seen)


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def _min_row_segments(
    entries: Sequence[tuple[int, int]],
    beta: dict[int, int],
    gamma: dict[int, int],
    used_cols: set[int],
    used_syms: set[int],
    s: int,
    n: int,
) -> tuple[tuple[tuple[int, int], ...], list[tuple[dict[int, int], dict[int, int]]]]:
    """Minimal serialized (column, symbol) segment for one source row.

    Returns the unique minimal segment together with every extension of the
    column/symbol maps that realizes it.  Greedy per position: the next output
    pair is forced to its minimum over the remaining source entries, branching
    only across ties.
    """
    best_ext: list[tuple[dict[int, int], dict[int, int]]] = []
    segment: list[tuple[int, int]] = []

    def free_min(used: set[int], limit: int) -> int:
        v = 1
        while v in used:
            v += 1
        return v if v <= limit else 0

    def walk(remaining: list[tuple[int, int]]) -> None:
        if not remaining:
            best_ext.append((dict(beta), dict(gamma)))
            return
        min_col = free_min(used_cols, s)
        min_sym = free_min(used_syms, n)
        options: list[tuple[tuple[int, int], int]] = []
        for idx, (j, k) in enumerate(remaining):
            col = beta.get(j, min_col)
            sym = gamma.get(k, min_sym)
            options.append(((col, sym), idx))
        target = min(pair for pair, _ in options)
        for pair, idx in options:
            if pair != target:
                continue
            j, k = remaining[idx]
            new_col = j not in beta
            new_sym = k not in gamma
            if new_col:
                beta[j] = pair[0]
                used_cols.add(pair[0])
            if new_sym:
                gamma[k] = pair[1]
                used_syms.add(pair[1])
            segment.append(pair)
            walk(remaining[:idx] + remaining[idx + 1 :])
            segment.pop()
            if new_col:
                del beta[j]
                used_cols.discard(pair[0])
            if new_sym:
                del gamma[k]
                used_syms.discard(pair[1])

    walk(list(entries))
    # every completion passes through the same forced minima, so the segment
    # value is unique; rebuild it from any extension for the caller
    if not best_ext:
        return (), []
    seg = _segment_of(entries, best_ext[0][0], best_ext[0][1])
    return seg, best_ext


def _segment_of(
    entries: Sequence[tuple[int, int]], beta: dict[int, int], gamma: dict[int, int]
) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((beta[j], gamma[k]) for j, k in entries))


def _segment_less(
    a: tuple[tuple[int, int], ...], b: tuple[tuple[int, int], ...]
) -> bool:
    """Serialized-order comparison: on a shared prefix the longer segment
    wins, because its extra entries precede the next row's entries."""
    cut = min(len(a), len(b))
    if a[:cut] != b[:cut]:
        return a[:cut] < b[:cut]
    return len(a) > len(b)


def _isotopism_canonical_entries(
    plr: PartialLatinRectangle,
) -> tuple[tuple[int, int, int], ...]:
    """Lexicographically minimal entry list over all relabelings."""
    dims = plr.dims
    r, s, n = dims.as_tuple()
    rows: list[list[tuple[int, int]]] = [[] for _ in range(r)]
    for e in plr.entries:
        rows[e.row - 1].append((e.col, e.sym))
    for row in rows:
        row.sort()

    best: list[tuple[int, int, int]] | None = None

    def search(
        used_rows: set[int],
        beta: dict[int, int],
        gamma: dict[int, int],
        used_cols: set[int],
        used_syms: set[int],
        acc: list[tuple[int, int, int]],
        depth: int,
    ) -> None:
        nonlocal best
        if best is not None:
            prefix = best[: len(acc)]
            if acc > prefix:
                return
        if depth == r:
            if best is None or acc < best:
                best = list(acc)
            return
        # candidate source rows achieving the minimal next segment
        chosen: list[tuple[int, tuple[tuple[int, int], ...], list]] = []
        best_seg: tuple[tuple[int, int], ...] | None = None
        empty_taken = False
        for i in range(1, r + 1):
            if i in used_rows:
                continue
            if not rows[i - 1]:
                if empty_taken:
                    continue  # empty source rows are interchangeable
                empty_taken = True
                seg: tuple[tuple[int, int], ...] = ()
                exts = [(dict(beta), dict(gamma))]
            else:
                seg, exts = _min_row_segments(
                    rows[i - 1], beta, gamma, used_cols, used_syms, s, n
                )
            if best_seg is None or _segment_less(seg, best_seg):
                best_seg = seg
                chosen = [(i, seg, exts)]
            elif seg == best_seg:
                chosen.append((i, seg, exts))
        if best_seg is None:
            return
        out_row = depth + 1
        added = [(out_row, c, k) for c, k in best_seg]
        for i, seg, exts in chosen:
            for nbeta, ngamma in exts:
                search(
                    used_rows | {i},
                    nbeta,
                    ngamma,
                    set(nbeta.values()),
                    set(ngamma.values()),
                    acc + added,
                    depth + 1,
                )

    search(set(), {}, {}, set(), set(), [], 0)
    assert best is not None
    return tuple(best)


def canonical_form(
    plr: PartialLatinRectangle, group: GroupSpec
) -> PartialLatinRectangle:
    """Orbit-minimum of the serialized entry sequence under the group.

    Branch-and-bound over relabelings: output rows are chosen one at a time,
    each forced to the minimal achievable serialized segment, branching across
    ties and pruning against the incumbent.  The paratopism variant takes the
    minimum across all admissible coordinate permutations.
    """
    if plr.dims != group.dims:
        raise DimensionMismatch(
            f"PLR dims {plr.dims.as_tuple()} do not match group dims "
            f"{group.dims.as_tuple()}"
        )
    if group.kind == ISOTOPISM:
        return make_plr(plr.dims, _isotopism_canonical_entries(plr))
    best: tuple[tuple[int, int, int], ...] | None = None
    for p in sorted(valid_parastrophisms(plr.dims), key=lambda q: q.pi):
        entries = _isotopism_canonical_entries(parastrophe(plr, p))
        if best is None or entries < best:
            best = entries
    assert best is not None
    return make_plr(plr.dims, best)
