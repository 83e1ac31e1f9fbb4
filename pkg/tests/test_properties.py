"""Invariant property suite, runnable standalone:

    pytest tests/test_properties.py

Covers the engine's structural laws rather than point values:

* the dominance-order feasibility precheck is necessary — every count triple
  of weight <= 6 that fails it has zero realizations, checked against the
  constraint kernel, which performs no such precheck — and is not sufficient
  (the classic all-(3,1,1) witness);
* the two regularity shortcuts: two lone-free structures force every
  realization to be regular, and more lone parts than entries forbid any
  regular realization;
* type counts depend only on the structures, not on the representative
  count tuples (reordering components and padding with zeros);
* the factorial lower bound for uniform-structure squares;
* canonical forms are constant on isotopism orbits (1000 random pairs);
* parastrophes obey the inverse and involution laws, exhaustively over
  every array at dimensions (3,3,3) with at most 3 entries.
"""

from __future__ import annotations

import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from plrkit.classify import ISOTOPISM, PARATOPISM, GroupSpec, canonical_form
from plrkit.core import (
    Dims,
    Isotopism,
    Parastrophe,
    apply_isotopism,
    iter_all_plrs,
    make_plr,
    parastrophe,
    valid_parastrophisms,
)
from plrkit.counting import (
    count_type_regular,
    count_type,
    feasibility_precheck,
    partitions,
    plex_lower_bound,
    rho,
)
from plrkit.kernel import latin_system, weight_spectrum, with_type

MAX_WEIGHT = 6


def all_structure_triples() -> list[tuple[tuple[int, ...], ...]]:
    """Every ordered triple of integer partitions sharing a weight <= 6."""
    triples = []
    for m in range(1, MAX_WEIGHT + 1):
        parts = list(partitions(m, m, m))
        triples.extend(itertools.product(parts, repeat=3))
    return triples


def kernel_count(z1, z2, z3) -> int:
    """Realization count straight from the constraint kernel (no precheck)."""
    dims = Dims(len(z1), len(z2), len(z3))
    system = with_type(latin_system(dims), z1, z2, z3)
    spectrum = weight_spectrum(system, backend="enumeration")
    m = sum(z1)
    return spectrum[m] if m < len(spectrum) else 0


# ---------------------------------------------------------------------------
# feasibility precheck: necessary, not sufficient
# ---------------------------------------------------------------------------

def test_precheck_failure_means_zero_realizations():
    triples = all_structure_triples()
    assert len(triples) == 1835  # sum of p(m)^3 for m = 1..6
    rejected = [t for t in triples if not feasibility_precheck(*t)]
    assert len(rejected) == 1317  # frozen when this sweep was first run
    for z1, z2, z3 in rejected:
        assert kernel_count(z1, z2, z3) == 0, (z1, z2, z3)


def test_precheck_is_not_sufficient():
    witness = ((3, 1, 1), (3, 1, 1), (3, 1, 1))
    assert feasibility_precheck(*witness)
    assert kernel_count(*witness) == 0
    assert count_type(*witness) == 0


# ---------------------------------------------------------------------------
# regularity shortcuts
# ---------------------------------------------------------------------------

def test_two_lone_free_structures_force_regularity():
    # An entry breaks regularity only when it is alone in two of its three
    # lines; with two structures free of 1-parts no entry can be.
    domain = [t for t in all_structure_triples()
              if sum(1 for z in t if min(z) >= 2) >= 2]
    assert len(domain) == 523
    for z1, z2, z3 in domain:
        assert rho(z1, z2, z3, regular=True) == rho(z1, z2, z3), (z1, z2, z3)


def test_excess_lone_parts_forbid_regularity():
    # Each 1-part pins a lone flag on some entry; more flags than entries
    # means some entry carries two, so no realization is regular.
    domain = [t for t in all_structure_triples()
              if sum(sum(1 for p in z if p == 1) for z in t) > sum(t[0])]
    assert len(domain) == 644
    for z1, z2, z3 in domain:
        assert rho(z1, z2, z3, regular=True) == 0, (z1, z2, z3)


# ---------------------------------------------------------------------------
# representative independence of type counts
# ---------------------------------------------------------------------------

@st.composite
def type_and_shuffle(draw):
    """A count triple plus a reshuffled, zero-padded representative of it."""
    m = draw(st.integers(min_value=1, max_value=MAX_WEIGHT))
    parts = list(partitions(m, m, m))
    base = [draw(st.sampled_from(parts)) for _ in range(3)]
    variants = []
    for z in base:
        padded = list(z) + [0] * draw(st.integers(min_value=0, max_value=3))
        variants.append(tuple(draw(st.permutations(padded))))
    return tuple(base), tuple(variants)


@settings(max_examples=100, deadline=None)
@given(type_and_shuffle())
def test_count_depends_only_on_structures(pair):
    base, variants = pair
    assert count_type(*variants) == count_type(*base)
    assert count_type_regular(*variants) == count_type_regular(*base)


# ---------------------------------------------------------------------------
# uniform-structure lower bound
# ---------------------------------------------------------------------------

def test_uniform_structure_lower_bound():
    for t, n in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4)]:
        z = (t,) * n
        assert plex_lower_bound(t, n) <= rho(z, z, z), (t, n)


# ---------------------------------------------------------------------------
# canonical form constant on isotopism orbits
# ---------------------------------------------------------------------------

def _random_plr(dims: Dims, target: int, rng: random.Random):
    cells = [(i, j, k)
             for i in range(1, dims.r + 1)
             for j in range(1, dims.s + 1)
             for k in range(1, dims.n + 1)]
    rng.shuffle(cells)
    chosen: list[tuple[int, int, int]] = []
    for (i, j, k) in cells:
        if any(i == a and j == b or i == a and c == k or j == b and c == k
               for (a, b, c) in chosen):
            continue
        chosen.append((i, j, k))
        if len(chosen) >= target:
            break
    return make_plr(dims, tuple(sorted(chosen)))


def test_canonical_form_invariant_on_1000_isotopism_pairs():
    dims = Dims(4, 4, 4)
    rng = random.Random(20260816)
    spec = GroupSpec(ISOTOPISM, dims)
    par = GroupSpec(PARATOPISM, dims)

    def perm():
        return tuple(rng.sample(range(1, 5), 4))

    for trial in range(1000):
        plr = _random_plr(dims, rng.randint(0, 12), rng)
        moved = apply_isotopism(plr, Isotopism(perm(), perm(), perm()))
        assert canonical_form(plr, spec) == canonical_form(moved, spec), trial
        if trial % 10 == 0:  # the coarser group, sampled every tenth pair
            assert canonical_form(plr, par) == canonical_form(moved, par), trial


# ---------------------------------------------------------------------------
# parastrophe group laws
# ---------------------------------------------------------------------------

def _inverse(pi: tuple[int, int, int]) -> tuple[int, int, int]:
    inv = [0, 0, 0]
    for position, image in enumerate(pi, start=1):
        inv[image - 1] = position
    return tuple(inv)


def test_parastrophe_inverse_and_involution_exhaustive():
    dims = Dims(3, 3, 3)
    maps = sorted(valid_parastrophisms(dims), key=lambda p: p.pi)
    assert len(maps) == 6
    checked = 0
    for plr in iter_all_plrs(dims, max_size=3):
        for p in maps:
            moved = parastrophe(plr, p)
            assert parastrophe(moved, Parastrophe(_inverse(p.pi))) == plr
            if sorted(p.pi) == [1, 2, 3] and sum(
                    1 for pos, img in enumerate(p.pi, start=1) if pos == img) >= 1:
                # identity or a transposition: self-inverse
                assert parastrophe(moved, p) == plr
            else:
                # a 3-cycle: order three
                assert parastrophe(parastrophe(moved, p), p) == plr
            checked += 1
    assert checked == 1576 * 6


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-v"]))
