import pytest
from hypothesis import given, strategies as st

import oracles
from subtile.core import (
    Library,
    PieceMultiset,
    Placement,
    Polyomino,
    Tiling,
    TransformMode,
    close_library,
    juxtapose,
    multiset_of,
    normalize,
    transforms,
    validate_tiling,
    vertical_faults,
)
from subtile.errors import InvalidTilingError, ShapeError
from subtile.subtiling import staircase_library, staircase_tiling

R = Polyomino.rect
L_TROMINO = Polyomino(((0, 0), (0, 1), (1, 1)))


@st.composite
def polyominoes(draw, max_cells=6):
    """Grow a connected cell set one neighbour at a time."""
    k = draw(st.integers(1, max_cells))
    cells = [(draw(st.integers(-3, 3)), draw(st.integers(-3, 3)))]
    while len(cells) < k:
        x, y = cells[draw(st.integers(0, len(cells) - 1))]
        dx, dy = draw(st.sampled_from([(1, 0), (-1, 0), (0, 1), (0, -1)]))
        if (x + dx, y + dy) not in cells:
            cells.append((x + dx, y + dy))
    return cells


def test_normalize_examples():
    assert normalize([(3, 5)]).cells == ((0, 0),)
    assert set(normalize([(1, 1), (2, 1), (1, 0)]).cells) == {(0, 1), (1, 1), (0, 0)}
    with pytest.raises(ShapeError):
        normalize([(0, 0), (2, 0)])
    with pytest.raises(ShapeError):
        normalize([])


def test_rect_shape_properties():
    p = R(2, 3)
    assert (p.height, p.width, p.area, p.is_rectangle) == (2, 3, 6, True)
    assert not L_TROMINO.is_rectangle


def test_transform_examples():
    assert set(transforms(R(2, 3), TransformMode.ROTATIONS_AND_REFLECTIONS)) == {R(2, 3), R(3, 2)}
    assert len(set(transforms(L_TROMINO, TransformMode.VERTICAL_REFLECTIONS))) == 2
    for mode in TransformMode:
        assert set(transforms(R(1, 1), mode)) == {R(1, 1)}


def test_mode_order():
    assert TransformMode.FIXED < TransformMode.VERTICAL_REFLECTIONS < TransformMode.ROTATIONS_AND_REFLECTIONS


def test_close_library_examples():
    assert close_library(Library((R(1, 2),))).pieces == (R(1, 2),)
    lib = close_library(Library((R(1, 2),), TransformMode.ROTATIONS_AND_REFLECTIONS))
    assert set(lib.pieces) == {R(1, 2), R(2, 1)}
    assert len(staircase_library().pieces) == 6


@given(polyominoes())
def test_normalize_idempotent(cells):
    p = normalize(cells)
    assert normalize(p.cells) == p
    assert min(x for x, _ in p.cells) == 0 and min(y for _, y in p.cells) == 0


@given(polyominoes(), st.sampled_from(list(TransformMode)))
def test_orbit_is_closed_and_matches_oracle(cells, mode):
    p = normalize(cells)
    orbit = set(transforms(p, mode))
    for q in orbit:
        assert set(transforms(q, mode)) == orbit
    rot = mode == TransformMode.ROTATIONS_AND_REFLECTIONS
    ref = mode != TransformMode.FIXED
    assert {q.cells for q in orbit} == {tuple(sorted(c, key=lambda c: (c[1], c[0]))) for c in oracles.orients(p.cells, rot, ref)}


@given(st.lists(polyominoes(5), min_size=1, max_size=3), st.sampled_from(list(TransformMode)))
def test_close_library_idempotent_and_monotone(cells_list, mode):
    lib = Library(tuple(normalize(c) for c in cells_list), mode)
    closed = close_library(lib)
    assert close_library(closed).pieces == closed.pieces
    assert closed.is_closed
    for weaker in TransformMode:
        if weaker <= mode:
            assert set(close_library(Library(lib.pieces, weaker)).pieces) <= set(closed.pieces)


def test_library_dedupes_translates():
    lib = Library((R(1, 2), normalize([(5, 5), (6, 5)])))
    assert lib.pieces == (R(1, 2),)


def test_validate_examples():
    lib = Library((R(1, 2), R(1, 1)))
    assert validate_tiling(Tiling(1, 2, [Placement(0, 0, (0, 0))], lib)) == []
    bad = validate_tiling(Tiling(1, 2, [Placement(1, 0, (0, 0)), Placement(1, 0, (0, 0))], lib))
    assert [(v.kind, v.cell) for v in bad] == [("overlap", (0, 0)), ("uncovered", (1, 0))]
    out = validate_tiling(Tiling(1, 1, [Placement(0, 0, (0, 0))], lib))
    assert [v.kind for v in out] == ["outside"]
    wrong = validate_tiling(Tiling(2, 1, [Placement(0, 1, (0, 0))], lib))
    assert wrong[0].kind == "transform"


def test_multiset_and_faults_examples():
    lib = Library((R(1, 1), R(1, 2)))
    four = Tiling(2, 2, [Placement(0, 0, (x, y)) for x in range(2) for y in range(2)], lib)
    assert multiset_of(four).as_dict() == {R(1, 1): 4}
    two = Tiling(2, 2, [Placement(1, 0, (0, 0)), Placement(1, 0, (0, 1))], lib)
    assert multiset_of(two).as_dict() == {R(1, 2): 2}
    assert vertical_faults(Tiling(1, 4, [Placement(1, 0, (0, 0)), Placement(1, 0, (2, 0))], lib)) == [2]
    assert vertical_faults(Tiling(1, 2, [Placement(1, 0, (0, 0))], lib)) == []
    with pytest.raises(InvalidTilingError):
        multiset_of(Tiling(1, 3, [Placement(1, 0, (0, 0))], lib))


def test_staircase_has_no_faults():
    for w in (3, 5, 9):
        assert vertical_faults(staircase_tiling(w)) == []


def test_multiset_merges_rotations():
    T = PieceMultiset.of({R(1, 2): 1, R(2, 1): 2}, rotations=True)
    assert T.counts == [3] and T.area == 6
    assert PieceMultiset.of({R(1, 2): 1, R(2, 1): 2}).size == 3
    assert PieceMultiset.of({R(1, 2): 0}).items == ()


def test_juxtapose_faults():
    lib = Library((R(1, 2),))
    a = Tiling(1, 2, [Placement(0, 0, (0, 0))], lib)
    j = juxtapose(a, a)
    assert validate_tiling(j) == [] and vertical_faults(j) == [2]
    with pytest.raises(ValueError):
        juxtapose(a, Tiling(2, 2, [], lib))


def test_area_sum_property():
    t = staircase_tiling(7)
    assert sum(s.area for s in t.shapes()) == t.n * t.m
