"""Constraint-system kernel: conflicts, spectra, first-row decomposition."""

import pytest

from plrkit.core import Dims, iter_all_plrs, make_plr, type_of, is_regular
from plrkit.errors import (
    DimensionMismatch,
    InfeasibleSystem,
    LengthMismatch,
    LimitExceeded,
    RowMismatch,
    UnknownStrategy,
    UnsupportedConstraint,
    WeightMismatch,
)
from plrkit.kernel import (
    ConstraintSystem,
    assemble_K,
    decompose_first_row,
    decomposition_spectrum,
    enumerate_solutions,
    forced_size,
    iter_solution_grids,
    latin_conflicts,
    latin_system,
    shift_cell,
    var_entry,
    var_index,
    weight_spectrum,
    with_regularity,
    with_type,
)

D333 = Dims(3, 3, 3)

# Per-size solution counts of the unconstrained 3x3x3 system (full census row).
SPECTRUM_333 = [1, 27, 270, 1278, 3078, 3834, 2412, 756, 108, 12]

# First-row cells of the lex-adaptive decomposition at 3x3x3, in emission
# order, as (ones, zeros) entry sets.
LEX_CELLS_333 = [
    (set(), {(1, 1, 1), (1, 2, 1), (1, 3, 1)}),
    ({(1, 3, 1)}, {(1, 1, 1), (1, 2, 1), (1, 3, 2), (1, 3, 3)}),
    ({(1, 2, 1)}, {(1, 1, 1), (1, 2, 2), (1, 2, 3), (1, 3, 1)}),
    ({(1, 1, 1)},
     {(1, 1, 2), (1, 1, 3), (1, 2, 1), (1, 2, 2), (1, 3, 1), (1, 3, 2)}),
    ({(1, 1, 1), (1, 3, 2)},
     {(1, 1, 2), (1, 1, 3), (1, 2, 1), (1, 2, 2), (1, 3, 1), (1, 3, 3)}),
    ({(1, 1, 1), (1, 2, 2)},
     {(1, 1, 2), (1, 1, 3), (1, 2, 1), (1, 2, 3), (1, 3, 1), (1, 3, 2)}),
]

# Spectra of the stacked forced subsystems at 3x3x3, one column per cell
# choice (row1.row2.row3, 1-based cell indices), indexed by the number of
# entries beyond the forced ones.
STACKED_SPECTRA = {
    "1.1.1": [1, 18, 108, 264, 270, 108, 12],
    "1.1.2": [1, 16, 84, 176, 150, 48, 4],
    "1.1.3": [1, 16, 84, 176, 150, 48, 4],
    "1.1.4": [1, 14, 62, 104, 66, 12, 0],
    "1.1.5": [1, 11, 36, 42, 18, 2, 0],
    "1.1.6": [1, 11, 36, 42, 18, 2, 0],
    "1.2.3": [1, 14, 64, 116, 84, 24, 2],
    "1.2.4": [1, 12, 45, 63, 32, 5, 0],
    "1.2.5": [1, 10, 29, 29, 11, 1, 0],
    "1.2.6": [1, 9, 24, 23, 8, 1, 0],
    "1.3.4": [1, 12, 45, 63, 32, 5, 0],
    "1.3.5": [1, 9, 24, 23, 8, 1, 0],
    "1.3.6": [1, 10, 29, 29, 11, 1, 0],
    "2.3.4": [1, 10, 32, 38, 16, 2, 0],
    "2.3.5": [1, 8, 19, 16, 5, 1, 0],
    "2.3.6": [1, 8, 19, 16, 5, 1, 0],
}


def test_var_index_round_trip():
    dims = Dims(2, 3, 4)
    seen = set()
    for i in range(1, 3):
        for j in range(1, 4):
            for k in range(1, 5):
                v = var_index(dims, i, j, k)
                assert var_entry(dims, v) == (i, j, k)
                seen.add(v)
    assert seen == set(range(2 * 3 * 4))


@pytest.mark.parametrize(
    "dims,expected",
    [(Dims(1, 1, 2), 1), (Dims(2, 2, 2), 12), (Dims(3, 3, 3), 81)],
)
def test_conflict_counts(dims, expected):
    pairs = latin_conflicts(dims)
    assert len(pairs) == expected
    for a, b in pairs:
        assert a != b


def test_system_properties():
    sys = latin_system(D333)
    assert sys.var_count == 27
    assert sys.max_size == 9
    assert not sys.infeasible


def test_full_spectrum_both_backends():
    sys = latin_system(D333)
    assert weight_spectrum(sys, backend="recursion") == SPECTRUM_333
    assert weight_spectrum(sys, backend="enumeration") == SPECTRUM_333
    with pytest.raises(UnknownStrategy):
        weight_spectrum(sys, backend="nope")


def test_recursion_backend_rejects_cardinalities():
    sys = with_type(latin_system(D333), (2, 1, 0), (2, 1, 0), (2, 1, 0))
    with pytest.raises(UnsupportedConstraint):
        weight_spectrum(sys, backend="recursion")


def test_with_type_validation():
    sys = latin_system(D333)
    with pytest.raises(LengthMismatch):
        with_type(sys, (1, 1), (1, 1, 0), (1, 1, 0))
    with pytest.raises(WeightMismatch):
        with_type(sys, (1, 1, 1), (1, 1, 0), (1, 1, 0))


def test_with_type_matches_brute_filter():
    R, C, S = (2, 1, 0), (1, 1, 1), (2, 1, 0)
    sys = with_type(latin_system(D333), R, C, S)
    got = set(enumerate_solutions(sys))
    want = {p for p in iter_all_plrs(D333) if type_of(p) == (R, C, S)}
    assert got == want and got


def test_with_regularity_matches_predicate_filter():
    for R, C, S in [
        ((2, 1, 0), (2, 1, 0), (2, 1, 0)),
        ((2, 2, 0), (2, 1, 1), (2, 1, 1)),
        ((1, 1, 1), (1, 1, 1), (3, 0, 0)),
    ]:
        sys = with_regularity(latin_system(D333), R, C, S)
        got = set(enumerate_solutions(sys))
        want = {
            p
            for p in iter_all_plrs(D333)
            if type_of(p) == (R, C, S) and is_regular(p)
        }
        assert got == want


def test_lex_adaptive_cells_exact():
    cells = decompose_first_row(D333, "lex-adaptive")
    assert len(cells) == 6
    for cell, (ones, zeros) in zip(cells, LEX_CELLS_333):
        assert cell.row == 1
        assert {var_entry(D333, v) for v in cell.ones} == ones
        assert {var_entry(D333, v) for v in cell.zeros} == zeros
        assert cell.size == len(ones)


def test_cell_counts_by_strategy():
    assert len(decompose_first_row(Dims(2, 2, 2), "lex-adaptive")) == 4
    assert len(decompose_first_row(Dims(3, 3, 3), "lex-adaptive")) == 6
    full = decompose_first_row(Dims(2, 2, 2), "full-assignment")
    assert len(full) == 7
    keys = [(c.size, c.entries()) for c in full]
    assert keys == sorted(keys)
    with pytest.raises(UnknownStrategy):
        decompose_first_row(D333, "zig-zag")


def test_shift_cell():
    cells = decompose_first_row(D333)
    moved = shift_cell(cells[1], 2)
    assert moved.row == 2
    assert {var_entry(D333, v) for v in moved.ones} == {(2, 3, 1)}
    assert {var_entry(D333, v) for v in moved.zeros} == {
        (2, 1, 1), (2, 2, 1), (2, 3, 2), (2, 3, 3)}
    assert shift_cell(moved, 1) == cells[1]


def test_assemble_validation():
    cells = decompose_first_row(D333)
    with pytest.raises(RowMismatch):
        assemble_K(D333, cells[:2])
    other = decompose_first_row(Dims(2, 2, 2))
    with pytest.raises(DimensionMismatch):
        assemble_K(Dims(2, 2, 2), (other[0], cells[0]))


def test_stacked_spectra_table():
    cells = decompose_first_row(D333)
    for label, column in STACKED_SPECTRA.items():
        picks = [cells[int(t) - 1] for t in label.split(".")]
        K = assemble_K(D333, picks)
        base = forced_size(K)
        spec = weight_spectrum(K)
        assert len(spec) == 10
        for d, expected in enumerate(column):
            if base + d < len(spec):
                assert spec[base + d] == expected, (label, d)
            else:
                assert expected == 0, (label, d)
        assert all(x == 0 for x in spec[:base]), label
        assert all(x == 0 for x in spec[base + len(column):]), label


def test_forced_entries_propagate():
    cells = decompose_first_row(D333)
    K = assemble_K(D333, (cells[5], cells[2], cells[1]))
    assert forced_size(K) == 4
    assert {var_entry(D333, v) for v in K.fixed_one} == {
        (1, 1, 1), (1, 2, 2), (2, 2, 1), (3, 3, 1)}


def test_contradictory_stack_is_infeasible():
    cells = decompose_first_row(D333)
    K = assemble_K(D333, (cells[4], cells[4], cells[4]))
    assert K.infeasible
    with pytest.raises(InfeasibleSystem):
        forced_size(K)
    assert weight_spectrum(K, backend="recursion") == [0] * 10
    assert weight_spectrum(K, backend="enumeration") == [0] * 10


@pytest.mark.parametrize("strategy", ["lex-adaptive", "full-assignment"])
@pytest.mark.parametrize(
    "dims", [Dims(2, 2, 2), Dims(3, 3, 3), Dims(2, 3, 4), Dims(3, 3, 4)]
)
def test_decomposition_matches_direct(dims, strategy):
    direct = weight_spectrum(latin_system(dims))
    assert decomposition_spectrum(dims, strategy) == direct


def test_decomposition_parallel_agrees():
    one = decomposition_spectrum(D333, jobs=1)
    two = decomposition_spectrum(D333, jobs=2)
    assert one == two == SPECTRUM_333


def test_grid_stream_honors_fixings():
    v_one = var_index(Dims(2, 2, 2), 1, 1, 1)
    v_zero = var_index(Dims(2, 2, 2), 2, 2, 2)
    sys = ConstraintSystem(
        Dims(2, 2, 2),
        fixed_one=frozenset({v_one}),
        fixed_zero=frozenset({v_zero}),
    )
    grids = list(iter_solution_grids(sys))
    assert grids
    for g in grids:
        assert g[0] == 1  # cell (1,1) carries symbol 1
        assert g[3] != 2  # cell (2,2) never carries symbol 2
    assert len(set(grids)) == len(grids)


def test_enumerate_solutions_sorted_and_limited():
    sols = enumerate_solutions(latin_system(Dims(1, 2, 2)))
    assert [p.entry_tuples() for p in sols] == [
        (),
        ((1, 1, 1),),
        ((1, 1, 1), (1, 2, 2)),
        ((1, 1, 2),),
        ((1, 1, 2), (1, 2, 1)),
        ((1, 2, 1),),
        ((1, 2, 2),),
    ]
    with pytest.raises(LimitExceeded):
        enumerate_solutions(latin_system(D333), limit=100)


def test_single_forced_solution():
    dims = Dims(1, 1, 1)
    sys = ConstraintSystem(dims, fixed_one=frozenset({var_index(dims, 1, 1, 1)}))
    assert weight_spectrum(sys) == [0, 1]
    sols = enumerate_solutions(sys)
    assert len(sols) == 1 and sols[0] == make_plr(dims, [(1, 1, 1)])
