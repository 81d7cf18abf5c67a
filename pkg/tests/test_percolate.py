import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidrack.hurwitz import REFERENCE_SIZES, orbit, reference_orbit
from braidrack.percolate import (
    EXPECTED_MIN_PLAGUE,
    EmptySeed,
    closure_instances,
    immunity_table,
    is_plague,
    minimal_plague,
    quarantine_closure,
)
from braidrack.racks import preset


def test_closure_needs_seed():
    o = reference_orbit(3)
    with pytest.raises(EmptySeed):
        quarantine_closure(o, set())


def test_closure_is_extensive_monotone_idempotent():
    rng = random.Random(7)
    for size in (8, 9, 12, 16):
        o = reference_orbit(size)
        for _ in range(25):
            s = {rng.randrange(size) for _ in range(rng.randint(1, size))}
            c = quarantine_closure(o, s)
            assert s <= c
            assert quarantine_closure(o, c) == c
            bigger = s | {rng.randrange(size)}
            assert c <= quarantine_closure(o, bigger)


def test_full_orbit_is_fixed_point():
    for size in (1, 3, 8):
        o = reference_orbit(size)
        assert quarantine_closure(o, set(range(size))) == frozenset(range(size))


def test_size3_singleton_percolates():
    o = reference_orbit(3)
    assert any(is_plague(o, {i}) for i in range(3))


def test_families_cover_orbit():
    for size in REFERENCE_SIZES:
        o = reference_orbit(size)
        inst = closure_instances(o)
        assert len(inst) == size
        covered = {i for tri in inst for i in tri}
        assert covered == set(range(size))


@pytest.mark.parametrize("size", REFERENCE_SIZES)
def test_minimal_plague_matches_reference(size):
    res = minimal_plague(reference_orbit(size))
    assert res.min_size == EXPECTED_MIN_PLAGUE[size]
    assert res.immunity == Fraction(EXPECTED_MIN_PLAGUE[size], size)
    assert res.certified
    # the witness actually percolates
    assert is_plague(reference_orbit(size), set(res.witness))


def test_minimality_certified_exhaustively():
    # spot-check the certification: no subset of size min-1 percolates
    import itertools

    for size in (8, 9, 12):
        o = reference_orbit(size)
        k = EXPECTED_MIN_PLAGUE[size] - 1
        for seed in itertools.combinations(range(size), k):
            assert not is_plague(o, set(seed))


def test_eight_orbit_pair_structure():
    # two-element seeds never percolate the 8-orbit
    import itertools

    o = reference_orbit(8)
    for seed in itertools.combinations(range(8), 2):
        assert not is_plague(o, set(seed))


def test_witness_is_lexicographically_least():
    o = reference_orbit(8)
    res = minimal_plague(o)
    import itertools

    for seed in itertools.combinations(range(8), res.min_size):
        if is_plague(o, set(seed)):
            assert tuple(seed) == res.witness
            break


IMMUNITY_EXPECTED = {
    "C": {1: "1", 3: "1/3", 8: "3/8", 9: "1/3", 16: "5/16"},
    "T": {1: "1", 8: "3/8", 12: "1/3"},
    "Aff(7,3)": {1: "1", 8: "3/8", 24: "7/24"},
}


@pytest.mark.parametrize("name", sorted(IMMUNITY_EXPECTED))
def test_immunity_tables(name):
    table = immunity_table(preset(name))
    got = {size: str(res.immunity) for size, res in table.items()}
    assert got == IMMUNITY_EXPECTED[name]


def test_immunity_table_certify_each_agrees():
    table = immunity_table(preset("T"), certify_each=True)
    assert {s: r.min_size for s, r in table.items()} == {1: 1, 8: 3, 12: 4}


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(0, 15), min_size=1))
def test_closure_operator_properties_random(seed):
    o = reference_orbit(16)
    c = quarantine_closure(o, seed)
    assert seed <= c
    assert quarantine_closure(o, c) == c
