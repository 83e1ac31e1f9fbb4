"""Incidence-structure view: seminets, configurations, and the census."""

import csv
import json
from importlib.resources import files

import pytest

from plrkit.core import (
    Dims,
    from_grid,
    is_noncompressible,
    is_regular,
    iter_all_plrs,
    make_plr,
    plr_from_text,
)
from plrkit.errors import NotSeminetSource, RankOutOfRange
from plrkit.seminets import (
    MAX_CENSUS_RANK,
    NAMED_GRIDS,
    CensusRecord,
    census,
    census_jsonl,
    is_configuration,
    is_connected,
    is_n_regular,
    l_order,
    min_line_size,
    named_plr,
    point_rank,
    seminet_from_pls,
)

# 4x4 array with three full parallel classes of four lines each: a net
NET4 = ((1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1))

# rank-5 source whose largest parallel class has four (column) lines
RANK5 = ((0, 1, 0, 2), (1, 0, 2, 0), (2, 0, 0, 0), (0, 0, 0, 0))


def test_net_of_order_four():
    net = seminet_from_pls(from_grid(NET4))
    assert point_rank(net) == 16
    assert len(net.lines) == 12
    assert all(len(cls) == 4 for cls in net.classes)
    assert l_order(net) == 4
    assert is_n_regular(net, 4)
    assert not is_n_regular(net, 3)
    assert is_connected(net)
    assert is_configuration(net)


def test_rank_five_example():
    net = seminet_from_pls(from_grid(RANK5, n=4))
    assert point_rank(net) == 5
    assert l_order(net) == 4
    assert min_line_size(net) == 1
    assert not is_configuration(net)


def test_rejections_name_the_failed_predicate():
    with pytest.raises(NotSeminetSource, match="square"):
        seminet_from_pls(make_plr(Dims(2, 3, 3), [(1, 1, 1)]))
    with pytest.raises(NotSeminetSource, match="non-compressible"):
        seminet_from_pls(make_plr(Dims(3, 3, 3), []))
    # all columns used but a lone-lone cell at (1,1): compressibility passes,
    # regularity fails
    with pytest.raises(NotSeminetSource, match="regular"):
        seminet_from_pls(from_grid(((1, 0, 0), (0, 2, 3), (0, 3, 2))))


def test_named_grids_are_seminet_sources():
    assert len(NAMED_GRIDS) == 27
    for name in NAMED_GRIDS:
        plr = named_plr(name)
        net = seminet_from_pls(plr)  # incidence axioms asserted inside
        assert point_rank(net) == plr.size
    with pytest.raises(KeyError):
        named_plr("F99")


def test_hexagonal_configuration():
    net = seminet_from_pls(named_plr("H"))
    assert point_rank(net) == 7
    assert is_connected(net)
    assert min_line_size(net) >= 2
    assert is_configuration(net)


def test_disconnected_rank8_grid():
    net = seminet_from_pls(named_plr("NC8"))
    assert point_rank(net) == 8
    assert not is_connected(net)
    assert not is_configuration(net)


def test_rank8_named_grids_are_configurations():
    for name in NAMED_GRIDS:
        if name.startswith("F"):
            net = seminet_from_pls(named_plr(name))
            assert point_rank(net) == 8
            assert is_configuration(net), name


def test_seminet_round_trip_exhaustive_small_orders():
    checked = 0
    for dims in (Dims(2, 2, 2), Dims(3, 3, 3)):
        for p in iter_all_plrs(dims):
            if not (is_noncompressible(p) if p.size else False):
                continue
            if not is_regular(p):
                continue
            net = seminet_from_pls(p)
            assert net.points == frozenset(p.entry_tuples())
            # every point lies on exactly one line of each class
            for point in net.points:
                for lines in net.classes:
                    assert sum(1 for line in lines if point in line) == 1
            checked += 1
    assert checked > 50


def test_census_bounds():
    with pytest.raises(RankOutOfRange):
        census(MAX_CENSUS_RANK + 1)
    assert census(2) == []


def test_census_through_rank_six():
    records = census(6)
    by_rank = {}
    configs = {}
    for rec in records:
        by_rank[rec.rank] = by_rank.get(rec.rank, 0) + 1
        if rec.is_configuration:
            configs[rec.rank] = configs.get(rec.rank, 0) + 1
    assert by_rank == {3: 1, 4: 4, 5: 7, 6: 56}
    assert configs == {4: 1, 6: 3}

    # representatives are valid sources of the recorded rank and triple
    for rec in records:
        net = seminet_from_pls(rec.representative)
        assert point_rank(net) == rec.rank
        assert is_configuration(net) == rec.is_configuration
        assert is_connected(net) == rec.is_connected
        assert min_line_size(net) == rec.min_line_size

    # representatives are pairwise distinct
    keys = {(rec.representative.dims, rec.representative.entry_tuples())
            for rec in records}
    assert len(keys) == len(records)


def test_census_accounts_for_reference_table_gaps():
    """Census totals exceed the reference MC sums exactly where the shipped
    missing-rows fixture says rows were dropped from the print."""
    records = census(6)
    fixture_rows = []
    with files("plrkit").joinpath("tables/missing_rows.csv").open() as fh:
        for row in csv.DictReader(fh):
            if int(row["m"]) <= 6:
                triple = tuple(
                    tuple(int(x) for x in row[z].split(",")) for z in ("z1", "z2", "z3"))
                fixture_rows.append((int(row["m"]), triple, int(row["mc"])))
    assert len(fixture_rows) == 2

    reference = {}
    with files("plrkit").joinpath("tables/regular_counts.csv").open() as fh:
        for row in csv.DictReader(fh):
            if int(row["m"]) <= 6:
                key = tuple(sorted(
                    tuple(int(x) for x in row[z].split(",")) for z in ("z1", "z2", "z3")))
                reference[key] = reference.get(key, 0) + int(row["mc"])

    for m, triple, mc in fixture_rows:
        classes = [rec for rec in records
                   if rec.rank == m and tuple(sorted(rec.triple)) == tuple(sorted(triple))]
        assert len(classes) == mc
        assert tuple(sorted(triple)) not in reference


def test_census_record_json():
    records = census(4)
    lines = census_jsonl(records).strip().splitlines()
    assert len(lines) == len(records)
    for line, rec in zip(lines, records):
        doc = json.loads(line)
        assert doc["rank"] == rec.rank
        assert list(doc) == sorted(doc)
        back = plr_from_text(doc["representative"])
        assert back == rec.representative
        assert isinstance(doc["is_configuration"], bool)


def test_census_parallel_matches_serial():
    serial = census(5)
    parallel = census(5, jobs=4)
    assert census_jsonl(serial) == census_jsonl(parallel)
