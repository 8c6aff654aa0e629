"""The compiled and pure-Python kernels must agree result for result."""
import pytest
from hypothesis import given, strategies as st

from subtile import kernel
from subtile.core import Library, PieceMultiset, Polyomino, TransformMode, symmetry_group
from subtile.enumeration import build_moves, count_tilings, library_options, multiset_options, reachable_vectors
from subtile.errors import BudgetExceeded

needs_c = pytest.mark.skipif("cython" not in kernel.available_backends(), reason="extension not built")

R = Polyomino.rect
SHAPES = [
    R(1, 1), R(1, 2), R(1, 3), R(2, 2), R(2, 3),
    Polyomino(((0, 0), (0, 1), (1, 1))),
    Polyomino(((0, 0), (1, 0), (1, 1), (2, 1))),
]


@st.composite
def cases(draw):
    pieces = draw(st.lists(st.sampled_from(SHAPES), min_size=1, max_size=3, unique=True))
    lib = Library(tuple(pieces), draw(st.sampled_from(list(TransformMode))))
    return lib, draw(st.integers(1, 5)), draw(st.integers(0, 7))


def test_python_backend_always_available():
    assert "python" in kernel.available_backends()
    assert kernel.BACKEND in ("python", "cython")


@needs_c
@given(cases())
def test_count_agrees(case):
    lib, n, m = case
    assert count_tilings(lib, n, m, backend="python") == count_tilings(lib, n, m, backend="cython")


@needs_c
@given(cases(), st.data())
def test_search_agrees(case, data):
    lib, n, m = case
    options, classes = library_options(lib)
    rows, _ = build_moves(n, options)
    caps = None
    if data.draw(st.booleans()):
        caps = [data.draw(st.integers(0, 4)) for _ in classes]
    a = kernel.search(n, m, rows, caps, backend="python")
    b = kernel.search(n, m, rows, caps, backend="cython")
    assert a == b  # same move order, so the same first witness


@needs_c
@given(cases(), st.booleans())
def test_reachable_agrees(case, rot):
    lib, n, m = case
    options, classes = library_options(lib, symmetry_group(rot))
    a = reachable_vectors(n, m, options, len(classes), backend="python")
    b = reachable_vectors(n, m, options, len(classes), backend="cython")
    assert a == b


@needs_c
@pytest.mark.parametrize("backend", ["python", "cython"])
def test_budget_raises_on_both(backend):
    lib = Library((R(1, 2),), TransformMode.ROTATIONS_AND_REFLECTIONS)
    with pytest.raises(BudgetExceeded):
        count_tilings(lib, 6, 6, budget=10, backend=backend)
    T = PieceMultiset.of({R(1, 2): 18}, rotations=True)
    opts = multiset_options(T)
    with pytest.raises(BudgetExceeded):
        reachable_vectors(6, 6, opts, 1, budget=10, backend=backend)


@needs_c
def test_identical_budget_accounting():
    """The last budget that raises is the same on both kernels."""
    lib = Library((R(1, 2),), TransformMode.ROTATIONS_AND_REFLECTIONS)

    def threshold(backend):
        b = 0
        while True:
            try:
                count_tilings(lib, 4, 4, budget=b, backend=backend)
                return b
            except BudgetExceeded:
                b += 1

    assert threshold("python") == threshold("cython")


def test_wide_masks_fall_back_to_python():
    # a 1 x 70 bar on a 1-row board needs a 70-bit pattern
    lib = Library((R(1, 70), R(1, 1)))
    assert count_tilings(lib, 1, 71) == 3
