from collections import Counter

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from subtile.core import Library, PieceMultiset, Polyomino, TransformMode, multiset_of, validate_tiling, vertical_faults
from subtile.enumeration import enumerate_multisets
from subtile.errors import BudgetExceeded, PreconditionError
from subtile.reduce import reduce_partition
from subtile.subtiling import (
    ROTATIONS,
    TRANSLATIONS,
    beta_empirical,
    certify_staircase_family,
    has_subtiling,
    parse_mode,
    staircase_library,
    staircase_tiling,
    tiling_has_subtiling,
)

R = Polyomino.rect


def test_parse_mode():
    assert parse_mode("trans") == TRANSLATIONS and parse_mode("GEN") == ROTATIONS
    with pytest.raises(ValueError):
        parse_mode("sideways")


def test_simple_split():
    w = has_subtiling(PieceMultiset.of({R(1, 2): 2}), 1, 4)
    assert w.split == 2
    assert vertical_faults(w.combined()) == [2]


def test_width_one_never_splits():
    assert has_subtiling(PieceMultiset.of({R(3, 1): 1}), 3, 1) is None
    assert has_subtiling(PieceMultiset.of({R(1, 1): 2}), 2, 1) is None


def test_input_must_tile():
    with pytest.raises(PreconditionError):
        has_subtiling(PieceMultiset.of({R(2, 2): 1}), 1, 4)
    with pytest.raises(PreconditionError):
        has_subtiling(PieceMultiset.of({R(1, 2): 1}), 1, 4)


def test_translation_query_rejects_rotation_classes():
    with pytest.raises(ValueError):
        has_subtiling(PieceMultiset.of({R(1, 2): 2}, rotations=True), 1, 4, TRANSLATIONS)


def test_rotations_enable_a_split():
    T = PieceMultiset.of({R(2, 1): 1, R(1, 2): 2})
    assert has_subtiling(T, 2, 3, TRANSLATIONS).split == 1
    # two stacked dominoes only split once each may stand upright
    T2 = PieceMultiset.of({R(1, 2): 2})
    assert has_subtiling(T2, 2, 2, TRANSLATIONS) is None
    assert has_subtiling(T2, 2, 2, ROTATIONS).split == 1
    T3 = PieceMultiset.of({R(1, 3): 3})
    assert has_subtiling(T3, 3, 3, TRANSLATIONS) is None
    assert has_subtiling(T3, 3, 3, ROTATIONS) is not None


def test_reduction_instance_splits():
    inst = reduce_partition([1, 2, 3])
    w = has_subtiling(inst.multiset, inst.n, inst.m, ROTATIONS)
    assert w is not None
    assert validate_tiling(w.combined()) == []


def test_budget_exceeded_is_raised():
    T = PieceMultiset.of({R(1, 2): 18})
    with pytest.raises(BudgetExceeded):
        has_subtiling(T, 6, 6, budget=5)


def _check_witness(w, T, n, m, rot):
    assert 1 <= w.split <= m - 1
    assert validate_tiling(w.left) == [] and validate_tiling(w.right) == []
    combined = w.combined()
    assert validate_tiling(combined) == []
    assert w.split in vertical_faults(combined)
    assert multiset_of(combined, rotations=rot) == T.with_symmetry(rot, T.reflections)


SHAPES = [
    R(1, 1), R(1, 2), R(2, 1), R(1, 3), R(2, 2), R(3, 1),
    Polyomino(((0, 0), (0, 1), (1, 1))),
    Polyomino(((0, 0), (1, 0), (1, 1), (2, 1))),
    Polyomino(((0, 0), (1, 0), (2, 0), (1, 1))),
]


@st.composite
def tiled_multisets(draw):
    pieces = draw(st.lists(st.sampled_from(SHAPES), min_size=1, max_size=3, unique=True))
    mode = draw(st.sampled_from(list(TransformMode)))
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 24 // n))
    lib = Library(tuple(pieces), mode)
    found = list(enumerate_multisets(lib, n, m))
    assume(found)
    return draw(st.sampled_from(found)), n, m


@given(tiled_multisets(), st.booleans())
def test_agrees_with_naive_oracle(case, rot):
    T, n, m = case
    w = has_subtiling(T, n, m, ROTATIONS if rot else TRANSLATIONS)
    key = Counter()
    for s, c in T.items:
        key[oracles.cls_key(s.cells, rot)] += c
    assert (w is not None) == oracles.subtiling_exists(key, n, m, rotations=rot)
    if w is not None:
        _check_witness(w, T, n, m, rot)


@given(tiled_multisets())
def test_translation_witness_implies_rotation_witness(case):
    T, n, m = case
    if has_subtiling(T, n, m, TRANSLATIONS) is not None:
        assert has_subtiling(T, n, m, ROTATIONS) is not None


def test_tiling_wrapper():
    t = staircase_tiling(5)
    assert tiling_has_subtiling(t, "gen") is None
    assert tiling_has_subtiling(t, "trans") is None


def test_beta_examples():
    assert beta_empirical(Library((R(1, 2),)), 1, 8).beta == 2
    assert beta_empirical(Library((R(1, 1),)), 1, 6).beta == 1
    r = beta_empirical(staircase_library(), 2, 10, ROTATIONS)
    assert r.counterexample_widths == [3, 5, 7, 9] and r.exhaustive
    assert validate_tiling(r.tiling) == []


def test_beta_budget_reports_incomplete_widths():
    r = beta_empirical(Library((R(1, 2),), TransformMode.ROTATIONS_AND_REFLECTIONS), 3, 8, budget=50)
    assert not r.exhaustive
    assert any(not w.complete for w in r.widths)


def test_staircase_construction():
    for w in (3, 5, 7):
        t, cert = certify_staircase_family(w)
        assert validate_tiling(t) == [] and cert.width == w
        assert cert.split_widths_checked == tuple(range(1, w // 2 + 1))
    for bad in (1, 2, 4):
        with pytest.raises(PreconditionError):
            staircase_tiling(bad)


def test_staircase_with_reflections():
    _, cert = certify_staircase_family(9, reflections=True)
    assert cert.reflections
