from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from subtile.bounds import (
    bound_general,
    bound_inputs,
    bound_unit_height,
    bound_vs_empirical,
    ceil,
    lcm_lower_bound,
)
from subtile.core import Library, Polyomino
from subtile.errors import PreconditionError, ShapeError
from subtile.represent import NOT_REP_LIBRARY

rects = Library.rects


def test_general_examples():
    assert bound_general(rects((1, 2)), 1) == 2
    assert bound_general(rects((1, 2), (2, 1)), 2) == Fraction(9, 2)
    assert bound_general(rects((5, 5)), 2) == 2


def test_unit_examples():
    assert bound_unit_height(rects((1, 1), (1, 2), (1, 3)), 2) == Fraction(243, 2)
    assert bound_unit_height(rects((1, 1)), 3) == 2
    assert bound_unit_height(rects((1, 2)), 1) == 3
    with pytest.raises(PreconditionError):
        bound_unit_height(rects((1, 2), (2, 1)), 2)


def test_inputs():
    inp = bound_inputs(rects((1, 2), (2, 1), (3, 3)), 2)
    assert inp.heights == (1, 2) and inp.max_area == 2 and inp.max_width == 3
    assert inp.dimension == 3
    with pytest.raises(ShapeError):
        bound_inputs(Library((Polyomino(((0, 0), (0, 1), (1, 1))),)), 2)


def test_general_refuses_unknown_representability():
    with pytest.raises(PreconditionError):
        bound_general(NOT_REP_LIBRARY, 5)
    assert bound_general(NOT_REP_LIBRARY, 5, assume_representable=True) > 2


def test_ceil_and_lcm():
    assert ceil(Fraction(9, 2)) == 5 and ceil(Fraction(4)) == 4
    assert lcm_lower_bound(rects((1, 4), (1, 6))) == 12


dims = st.tuples(st.integers(1, 4), st.integers(1, 4))


@given(st.lists(dims, min_size=1, max_size=4), dims, st.integers(1, 3))
def test_general_monotone_and_at_least_two(pieces, extra, n):
    lib = rects(*pieces)
    more = rects(*pieces, extra)
    a = bound_general(lib, n, assume_representable=True)
    b = bound_general(more, n, assume_representable=True)
    assert 2 <= a <= b


@given(st.lists(st.integers(1, 5), min_size=1, max_size=3), st.integers(1, 5), st.integers(1, 4))
def test_unit_monotone_and_at_least_two(widths, extra, n):
    a = bound_unit_height(rects(*[(1, w) for w in widths]), n)
    b = bound_unit_height(rects(*[(1, w) for w in widths + [extra]]), n)
    assert 2 <= a <= b


def test_vs_empirical():
    c = bound_vs_empirical(rects((1, 2)), 1, 6)
    assert c.empirical.beta == 2 and c.bounds == {"general": 2, "unit_height": 3}
    assert c.consistent and c.lcm_lower == 2
    c = bound_vs_empirical(rects((4, 3), (3, 3), (1, 1)), 4, 9)
    assert "unit_height" in c.skipped and c.consistent
