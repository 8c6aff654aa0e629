"""Tiling existence, counting, witnesses and multiset enumeration for rectangles.

Everything here is a thin layer over :mod:`subtile.kernel`: pieces are
turned into anchored bit patterns (one per orientation and per allowed
bottom row), the kernel sweeps the board column by column, and results
are mapped back to :class:`~subtile.core.Tiling` objects.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import kernel
from .core import (
    IDENTITY,
    Library,
    Placement,
    PieceMultiset,
    Polyomino,
    Tiling,
    TransformMode,
    canonical,
    orientations,
    symmetry_group,
)


@dataclass(frozen=True)
class ShapeOption:
    """One orientation the search may place.

    ``cls`` is the count-vector slot it consumes; ``piece``/``transform``
    say how to write the placement back against the output library.
    ``rows`` optionally restricts the bottom row of the piece.
    """

    cls: int
    piece: int
    transform: int
    shape: Polyomino
    rows: Optional[frozenset] = None


def build_moves(n: int, options: Sequence[ShapeOption]):
    """Per-row move lists for the kernel plus the per-option anchor row offset."""
    rows = [[] for _ in range(n)]
    lifts = []
    for idx, opt in enumerate(options):
        cells = opt.shape.cells
        ax, ay = min(cells)  # first cell in column-major order (x = 0)
        lifts.append(ay)
        bits = 0
        for x, y in cells:
            bits |= 1 << ((x - ax) * n + (y - ay))
        h = opt.shape.height
        for y0 in range(n):
            bottom = y0 - ay
            if bottom < 0 or bottom + h > n:
                continue
            if opt.rows is not None and bottom not in opt.rows:
                continue
            rows[y0].append((idx, opt.cls, bits, opt.shape.width - 1))
    return rows, lifts


def decode(n: int, m: int, path, options, lifts, library: Library) -> Tiling:
    placements = []
    for idx, p in path:
        opt = options[idx]
        placements.append(Placement(opt.piece, opt.transform, (p // n, p % n - lifts[idx])))
    return Tiling(n, m, tuple(placements), library)


def library_options(lib: Library, group: Optional[tuple] = None) -> tuple[list[ShapeOption], list[Polyomino]]:
    """Distinct placeable shapes of ``lib`` and their class representatives.

    Each library piece contributes its orientations under the library's
    mode.  Classes are orbits under ``group`` (translations only when
    ``None``), listed in order of first appearance.
    """
    group = group or (IDENTITY,)
    options: list[ShapeOption] = []
    classes: list[Polyomino] = []
    seen: set = set()
    for i, piece in enumerate(lib.pieces):
        for t, shape in orientations(piece, lib.mode.group):
            if shape in seen:
                continue
            seen.add(shape)
            rep = canonical(shape, group)
            if rep not in classes:
                classes.append(rep)
            options.append(ShapeOption(classes.index(rep), i, t, shape))
    return options, classes


def class_library(counts: PieceMultiset) -> Library:
    """Library whose piece ``i`` is class ``i`` of ``counts``."""
    mode = TransformMode.ROTATIONS_AND_REFLECTIONS if len(counts.group) > 1 else TransformMode.FIXED
    return Library(tuple(counts.shapes), mode)


def class_options(classes: Sequence[Polyomino], group: tuple) -> list[ShapeOption]:
    """Every orientation of every class; class ``i`` is also output piece ``i``."""
    options = []
    for i, shape in enumerate(classes):
        for t, q in orientations(shape, group):
            options.append(ShapeOption(i, i, t, q))
    return options


def multiset_options(counts: PieceMultiset) -> list[ShapeOption]:
    return class_options(counts.shapes, counts.group)


def _check_dims(n, m):
    if n < 1 or m < 0:
        raise ValueError(f"board {n}x{m} must have n >= 1 and m >= 0")


def count_tilings(lib: Library, n: int, m: int, budget: Optional[int] = None, backend=None) -> int:
    """Number of distinct tilings of the ``n x m`` board by ``lib``."""
    _check_dims(n, m)
    options, _ = library_options(lib)
    rows, _ = build_moves(n, options)
    return kernel.count(n, m, rows, budget, backend)


def find_tiling(lib: Library, n: int, m: int, budget: Optional[int] = None, backend=None) -> Optional[Tiling]:
    """First tiling in sweep order, or ``None`` if the board cannot be tiled."""
    _check_dims(n, m)
    options, _ = library_options(lib)
    rows, lifts = build_moves(n, options)
    path = kernel.search(n, m, rows, None, budget, backend)
    if path is None:
        return None
    return decode(n, m, path, options, lifts, lib)


def can_tile(lib: Library, n: int, m: int, budget: Optional[int] = None, backend=None) -> bool:
    return find_tiling(lib, n, m, budget, backend) is not None


def tile_with_counts(
    n: int, m: int, counts: PieceMultiset, budget: Optional[int] = None, backend=None
) -> Optional[Tiling]:
    """A tiling using exactly ``counts``, or ``None``.

    Copies may take any orientation in the multiset's symmetry group.  The
    returned tiling is written against :func:`class_library` of ``counts``.
    """
    _check_dims(n, m)
    if counts.area != n * m:
        return None
    options = multiset_options(counts)
    rows, lifts = build_moves(n, options)
    path = kernel.search(n, m, rows, counts.counts, budget, backend)
    if path is None:
        return None
    return decode(n, m, path, options, lifts, class_library(counts))


def reachable_vectors(
    n: int, m: int, options, nclasses: int, caps=None, budget: Optional[int] = None, backend=None
) -> list[tuple[int, ...]]:
    """Count vectors that tile the board, in canonical order.

    Canonical order is descending lexicographic on the vector, i.e. the
    earliest class is used as heavily as possible first.
    """
    _check_dims(n, m)
    rows, _ = build_moves(n, options)
    found = kernel.reachable(n, m, rows, nclasses, caps, budget, backend)
    return sorted(found, key=lambda v: tuple(-c for c in v))


def enumerate_multisets(
    lib: Library,
    n: int,
    m: int,
    rotations: bool = False,
    reflections: bool = False,
    budget: Optional[int] = None,
    backend=None,
) -> Iterator[PieceMultiset]:
    """Every multiset of ``lib`` pieces that tiles the board, each once.

    With ``rotations``/``reflections`` the classes are merged orbits, which
    is how multisets are compared for rearrangements with rotations.
    """
    group = symmetry_group(rotations, reflections)
    options, classes = library_options(lib, group)
    for vec in reachable_vectors(n, m, options, len(classes), None, budget, backend):
        yield PieceMultiset(tuple(zip(classes, vec)), rotations, reflections)
