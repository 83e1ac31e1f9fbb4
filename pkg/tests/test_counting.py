"""Counting layer: spectra, type/structure counts, closed forms, bounds."""

from fractions import Fraction

import pytest

from plrkit.core import Dims, iter_all_plrs, structure_of, type_of
from plrkit.counting import (
    aggregate_size,
    as_structure,
    build_rho_table,
    canonical_structure_triple,
    closed_form_count,
    closed_form_diagonal,
    closed_form_terms,
    count_type,
    count_type_regular,
    feasibility_precheck,
    full_fill_count,
    latin_square_count,
    partitions,
    plex_lower_bound,
    rho,
    size_spectrum,
    sym_poly,
    type_arrangements,
)
from plrkit.errors import (
    BackendUnavailable,
    NonIntegerResult,
    SizeOutOfRange,
    UnknownStrategy,
    WeightMismatch,
)

KNOWN_LS_COUNTS = {1: 1, 2: 2, 3: 12, 4: 576, 5: 161280, 6: 812851200}


def brute_spectrum(dims):
    out = [0] * (dims.r * dims.s + 1)
    for p in iter_all_plrs(dims):
        out[p.size] += 1
    return out


@pytest.mark.parametrize(
    "dims",
    [Dims(1, 1, 1), Dims(1, 2, 2), Dims(2, 2, 2), Dims(2, 2, 3), Dims(2, 3, 3),
     Dims(3, 3, 3), Dims(2, 3, 4)],
)
def test_direct_spectrum_matches_brute_force(dims):
    assert size_spectrum(dims) == brute_spectrum(dims)


@pytest.mark.parametrize("dims", [Dims(2, 2, 2), Dims(3, 3, 3), Dims(2, 3, 4)])
def test_backends_agree(dims):
    direct = size_spectrum(dims, backend="direct")
    assert size_spectrum(dims, backend="decomposition") == direct
    assert size_spectrum(dims, backend="aggregate") == direct


def test_aggregate_backend_is_bounded():
    with pytest.raises(BackendUnavailable):
        size_spectrum(Dims(2, 2, 5), backend="aggregate")
    with pytest.raises(UnknownStrategy):
        size_spectrum(Dims(2, 2, 2), backend="mystery")


def test_total_count_444():
    assert sum(size_spectrum(Dims(4, 4, 4))) == 127545137


def test_full_fill_counts():
    for n, want in KNOWN_LS_COUNTS.items():
        assert latin_square_count(n) == want
    assert full_fill_count(Dims(5, 5, 5)) == 161280
    assert full_fill_count(Dims(6, 6, 6)) == 812851200
    # rectangles: 2x3 on 3 symbols; and n < s forces zero
    assert full_fill_count(Dims(2, 3, 3)) == 12 * 1  # reduced Latin rectangles
    assert full_fill_count(Dims(2, 3, 2)) == 0


def test_feasibility_precheck():
    assert feasibility_precheck((3, 1, 1), (3, 1, 1), (3, 1, 1))
    assert count_type((3, 1, 1), (3, 1, 1), (3, 1, 1)) == 0
    assert feasibility_precheck((2, 2), (2, 2), (2, 2))
    assert count_type((2, 2), (2, 2), (2, 2)) == 2
    assert not feasibility_precheck((2,), (1, 1), (2,))


def test_count_type_examples():
    assert count_type((2, 2), (2, 1, 1), (2, 1, 1)) == 12
    assert count_type_regular((2, 2), (2, 1, 1), (2, 1, 1)) == 4
    assert count_type((), (), ()) == 1
    assert count_type_regular((0, 0), (0, 0), (0, 0)) == 1
    with pytest.raises(WeightMismatch):
        count_type((2, 1), (2, 2), (2, 2))
    with pytest.raises(WeightMismatch):
        count_type_regular((2, 1), (2, 2), (2, 2))


def test_count_type_matches_brute_force():
    dims = Dims(3, 3, 3)
    by_type = {}
    for p in iter_all_plrs(dims):
        by_type[type_of(p)] = by_type.get(type_of(p), 0) + 1
    for (R, C, S), want in by_type.items():
        assert count_type(R, C, S) == want


def test_rho_examples():
    assert rho((2, 2, 1), (2, 2, 1), (2, 2, 1)) == 58
    assert rho((3,), (1, 1, 1), (1, 1, 1)) == 6
    assert rho((2, 2, 2, 2), (2, 2, 2, 2), (2, 2, 2, 2), regular=True) == 67824
    with pytest.raises(WeightMismatch):
        rho((2, 1), (2, 2), (2, 2))


def test_rho_is_role_order_invariant():
    reference = rho((3, 2), (2, 2, 1), (2, 1, 1, 1))
    assert reference > 0
    assert rho((2, 2, 1), (3, 2), (2, 1, 1, 1)) == reference
    assert rho((2, 1, 1, 1), (2, 2, 1), (3, 2)) == reference
    # zero parts and orderings inside one structure do not matter
    assert rho((2, 3, 0), (1, 2, 2), (1, 1, 2, 1)) == reference


def test_structure_normalization():
    assert as_structure((0, 2, 1, 2)) == (2, 2, 1)
    assert as_structure(()) == ()
    assert canonical_structure_triple((1, 2), (3,), (1, 1, 1)) == (
        (1, 1, 1), (2, 1), (3,))


def test_partitions_enumeration():
    assert list(partitions(4, 2, 3)) == [(3, 1), (2, 2)]
    assert list(partitions(3, 3, 3)) == [(3,), (2, 1), (1, 1, 1)]
    assert list(partitions(0, 5, 5)) == [()]
    assert list(partitions(3, 1, 2)) == []


def test_type_arrangements():
    assert type_arrangements(3, (2, 1)) == 6
    assert type_arrangements(3, (1, 1)) == 3
    assert type_arrangements(3, (2, 2)) == 3
    assert type_arrangements(1, (1, 1)) == 0
    assert type_arrangements(4, ()) == 1


def test_aggregate_size_examples():
    dims = Dims(3, 3, 3)
    assert aggregate_size(dims, 2, build_rho_table(dims, 2)) == 270
    assert aggregate_size(dims, 3, build_rho_table(dims, 3)) == 1278
    assert aggregate_size(dims, 0, {}) == 1


def test_sym_poly_values():
    assert sym_poly((1, 1, 1), Dims(2, 3, 4)) == 24
    assert sym_poly((1, 0, 0), Dims(2, 3, 4)) == 9
    assert sym_poly((2, 1, 1), Dims(2, 2, 2)) == 48
    assert sym_poly((0, 0, 0), Dims(5, 6, 6)) == 1
    # fully symmetric in the exponents
    assert sym_poly((2, 1, 0), Dims(2, 3, 4)) == sym_poly((0, 1, 2), Dims(2, 3, 4))


@pytest.mark.parametrize(
    "dims",
    [Dims(2, 3, 5), Dims(3, 3, 5), Dims(2, 4, 6), Dims(3, 4, 5), Dims(4, 4, 4),
     Dims(2, 5, 6), Dims(1, 6, 6)],
)
def test_closed_forms_match_direct(dims):
    spectrum = size_spectrum(dims)
    for m in range(0, 7):
        want = spectrum[m] if m < len(spectrum) else 0
        assert closed_form_count(dims, m) == want, (dims, m)


def test_closed_form_examples_and_range():
    assert closed_form_count(Dims(3, 3, 3), 2) == 270
    assert closed_form_count(Dims(2, 2, 2), 4) == 2
    assert closed_form_diagonal(3, 2) == 270
    with pytest.raises(SizeOutOfRange):
        closed_form_count(Dims(3, 3, 3), 7)
    with pytest.raises(SizeOutOfRange):
        closed_form_diagonal(4, 9)
    with pytest.raises(SizeOutOfRange):
        closed_form_terms(Dims(3, 3, 3), 0)


def test_closed_form_terms_reconstruct_count():
    from math import factorial

    dims = Dims(3, 4, 5)
    for m in range(1, 7):
        rows = closed_form_terms(dims, m)
        inner = sum(coeff * value for _, coeff, value in rows)
        assert sym_poly((1, 1, 1), dims) * inner == closed_form_count(dims, m) * factorial(m)


def test_diagonal_specializes_general():
    for n in range(1, 9):
        for m in range(0, 7):
            assert closed_form_diagonal(n, m) == closed_form_count(Dims(n, n, n), m)


def test_plex_lower_bound():
    assert plex_lower_bound(1, 3) == 6
    assert plex_lower_bound(1, 2) == 2
    assert plex_lower_bound(2, 2) == 1
    assert rho((1, 1, 1), (1, 1, 1), (3,)) == 6
    assert rho((1, 1), (1, 1), (2,)) == 2
    assert rho((2, 2), (2, 2), (2, 2)) == 2
    with pytest.raises(ValueError):
        plex_lower_bound(0, 3)


@pytest.mark.parametrize("t,n", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3)])
def test_plex_bound_never_exceeds_count(t, n):
    bound = plex_lower_bound(t, n)
    value = rho((t,) * n, (t,) * n, (n,) * t)
    assert isinstance(bound, Fraction)
    assert bound <= value


def test_rho_table_covers_aggregation():
    dims = Dims(2, 2, 3)
    direct = size_spectrum(dims)
    for m in range(1, dims.r * dims.s + 1):
        assert aggregate_size(dims, m, build_rho_table(dims, m)) == direct[m]
