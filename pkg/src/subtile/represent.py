"""Row-assigned rectangles: the area/row equations, tilers and representability checks.

Rows are numbered ``1..n`` from the bottom, so row ``l`` is ``y = l - 1``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from . import kernel
from .core import Library, Placement, Polyomino, Tiling, close_library, validate_tiling
from .enumeration import ShapeOption, build_moves
from .errors import PreconditionError, ShapeError


@dataclass(frozen=True, order=True)
class RowInterval:
    start: int
    length: int

    def __post_init__(self):
        if self.start < 1 or self.length < 1:
            raise ValueError(f"bad row interval start={self.start} length={self.length}")

    @property
    def stop(self) -> int:
        """Last row covered (inclusive)."""
        return self.start + self.length - 1

    @property
    def rows(self) -> range:
        return range(self.start, self.start + self.length)

    def check(self, n: int) -> None:
        if self.stop > n:
            raise ValueError(f"interval {self.start}..{self.stop} leaves a board of {n} rows")


@dataclass(frozen=True, order=True)
class RowAssignedPiece:
    height: int
    width: int
    interval: RowInterval

    def __post_init__(self):
        if self.height < 1 or self.width < 1:
            raise ShapeError(f"bad rectangle {self.height}x{self.width}")
        if self.interval.length != self.height:
            raise ValueError(f"a {self.height}x{self.width} piece cannot span {self.interval.length} rows")

    @classmethod
    def of(cls, height: int, width: int, start: int) -> "RowAssignedPiece":
        return cls(height, width, RowInterval(start, height))

    @property
    def rect(self) -> Polyomino:
        return Polyomino.rect(self.height, self.width)

    @property
    def bottom(self) -> int:
        return self.interval.start - 1

    def __str__(self):
        return f"({self.height}x{self.width}, rows {self.interval.start}-{self.interval.stop})"


@dataclass(frozen=True)
class RowConvexRegion:
    """One horizontal segment ``(x_start, width)`` per row, bottom row first."""

    segments: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for x, w in self.segments:
            if x < 0 or w < 0:
                raise ValueError(f"bad segment ({x}, {w})")

    @property
    def n(self) -> int:
        return len(self.segments)

    @property
    def m(self) -> int:
        return max((x + w for x, w in self.segments if w), default=0)

    def cells(self) -> frozenset:
        return frozenset((x, y) for y, (x0, w) in enumerate(self.segments) for x in range(x0, x0 + w))

    @classmethod
    def from_cells(cls, cells: Iterable[tuple[int, int]], n: int) -> "RowConvexRegion":
        """Raises ``ValueError`` when some row is not a single segment."""
        rows: list[list[int]] = [[] for _ in range(n)]
        for x, y in cells:
            rows[y].append(x)
        segs = []
        for y, xs in enumerate(rows):
            if not xs:
                segs.append((0, 0))
                continue
            lo, hi = min(xs), max(xs)
            if hi - lo + 1 != len(xs):
                raise ValueError(f"row {y + 1} is not a single segment")
            segs.append((lo, hi - lo + 1))
        return cls(tuple(segs))


def _check_pieces(P: Sequence[RowAssignedPiece], n: int) -> None:
    for p in P:
        p.interval.check(n)


def row_widths(P: Sequence[RowAssignedPiece], n: int) -> list[int]:
    """Total assigned width in each row ``1..n`` (list index ``i`` is row ``i + 1``)."""
    out = [0] * n
    for p in P:
        for r in p.interval.rows:
            out[r - 1] += p.width
    return out


def check_rep_equations(P: Sequence[RowAssignedPiece], n: int) -> Optional[int]:
    """The width ``m`` for which ``P`` meets the area and per-row equations, or ``None``."""
    _check_pieces(P, n)
    widths = row_widths(P, n)
    m = widths[0] if widths else 0
    if any(w != m for w in widths):
        return None
    if sum(p.height * p.width for p in P) != n * m:
        return None
    return m


def _rect_library(P: Sequence[RowAssignedPiece]) -> Library:
    seen: dict[Polyomino, None] = {}
    for p in sorted(P):
        seen.setdefault(p.rect, None)
    return Library(tuple(seen))


def tile_with_row_assignments(
    P: Sequence[RowAssignedPiece], n: int, m: Optional[int] = None, budget=None, backend=None
) -> Optional[Tiling]:
    """A tiling of ``R(n x m)`` with every piece on exactly its assigned rows, or ``None``."""
    got = check_rep_equations(P, n)
    if got is None or (m is not None and got != m):
        raise PreconditionError("row assignments do not satisfy the area and row-width equations")
    m = got
    lib = _rect_library(P)
    types = sorted(Counter(P).items())
    options = [
        ShapeOption(i, lib.pieces.index(p.rect), 0, p.rect, frozenset({p.bottom}))
        for i, (p, _) in enumerate(types)
    ]
    rows, lifts = build_moves(n, options)
    path = kernel.search(n, m, rows, [c for _, c in types], budget, backend)
    if path is None:
        return None
    placements = tuple(
        Placement(options[idx].piece, 0, (pos // n, pos % n - lifts[idx])) for idx, pos in path
    )
    return Tiling(n, m, placements, lib)


def respects_assignments(t: Tiling, P: Sequence[RowAssignedPiece]) -> bool:
    """Every placement matches a distinct assigned piece on its rows (counted as a multiset)."""
    used = Counter()
    for pl in t.placements:
        shape = pl.shape(t.library)
        used[RowAssignedPiece.of(shape.height, shape.width, pl.at[1] + 1)] += 1
    return used == Counter(P)


def tile_row_convex(region: RowConvexRegion, P: Sequence[RowAssignedPiece]) -> Tiling:
    """Fill each row of ``region`` left to right with its unit-height pieces, widest first."""
    if any(p.height != 1 for p in P):
        raise PreconditionError("row-convex filling takes unit-height pieces only")
    n = region.n
    _check_pieces(P, n)
    widths = row_widths(P, n)
    for y, (x0, w) in enumerate(region.segments):
        if widths[y] != w:
            raise PreconditionError(f"row {y + 1}: pieces have width {widths[y]}, region has {w}")
    lib = _rect_library(P)
    placements = []
    cursor = [x0 for x0, _ in region.segments]
    for p in sorted(P, key=lambda p: (p.interval.start, -p.width)):
        y = p.bottom
        placements.append(Placement(lib.pieces.index(p.rect), 0, (cursor[y], y)))
        cursor[y] += p.width
    return Tiling(n, region.m, tuple(placements), lib, region=region.cells())


# --- sufficient conditions ------------------------------------------------

def _rects(lib: Library) -> list[Polyomino]:
    if not lib.is_rectangular:
        raise ShapeError("representability is defined for rectangular pieces only")
    return list(close_library(lib).pieces)


def rep_sufficient(lib: Library, n: int) -> Optional[str]:
    """Which known sufficient condition makes ``lib`` ``n``-representable, if any.

    ``None`` is inconclusive, not a refutation.
    """
    pieces = [p for p in _rects(lib) if p.height <= n]
    if n <= 3:
        return "n<=3"
    if all(p.height == 1 or p.height >= n - 1 for p in pieces):
        return "heights in {1} or >= n-1"
    if n == 4 and len({p.width for p in pieces if p.height == 2}) <= 1:
        return "n=4, equal-width height-2 pieces"
    return None


def staircase_arrangement(
    P: Sequence[RowAssignedPiece], n: int
) -> tuple[list[tuple[RowAssignedPiece, int]], RowConvexRegion]:
    """Place the non-unit pieces in blocks so the rest of the board is row-convex.

    Returns ``(piece, x)`` pairs (the bottom row is fixed by the
    assignment) and the untiled region.
    """
    m = check_rep_equations(P, n)
    if m is None:
        raise PreconditionError("row assignments do not satisfy the area and row-width equations")
    big = [p for p in P if p.height > 1]
    if all(p.height >= n - 1 for p in big):
        layouts = [_layout_general(big, n, m)]
    elif n == 4 and all(p.height >= 2 for p in big) and len({p.width for p in big if p.height == 2}) == 1:
        layouts = [_layout_four(big, m, extra_bottom=True), _layout_four(big, m, extra_bottom=False)]
    else:
        raise PreconditionError("height profile is not covered by the block arrangement")
    for placed in layouts:
        if len(placed) != len(big):
            continue
        region = _leftover(placed, n, m)
        if region is not None:
            return placed, region
    raise PreconditionError("no block layout leaves a row-convex region")


def _by_kind(big, key):
    return sorted((p for p in big if key(p)), key=lambda p: -p.width)


def _layout_general(big, n, m):
    full = _by_kind(big, lambda p: p.height == n)
    low = _by_kind(big, lambda p: p.height == n - 1 and p.interval.start == 1)
    high = _by_kind(big, lambda p: p.height == n - 1 and p.interval.start == 2)
    placed, x = [], 0
    for p in full + low:
        placed.append((p, x))
        x += p.width
    x = m
    for p in high:
        x -= p.width
        placed.append((p, x))
    return placed


def _layout_four(big, m, extra_bottom):
    """Blocks for ``n = 4``: full pieces, stacked 2-pairs, bottom 3s, then the leftovers.

    ``extra_bottom`` chooses which height-2 pieces join the left side:
    the bottom ones left over from pairing, or the middle ones.
    """
    full = _by_kind(big, lambda p: p.height == 4)
    b3 = _by_kind(big, lambda p: p.height == 3 and p.interval.start == 1)
    t3 = _by_kind(big, lambda p: p.height == 3 and p.interval.start == 2)
    lo = _by_kind(big, lambda p: p.height == 2 and p.interval.start == 1)
    mid = _by_kind(big, lambda p: p.height == 2 and p.interval.start == 2)
    hi = _by_kind(big, lambda p: p.height == 2 and p.interval.start == 3)
    pairs = min(len(lo), len(hi))
    placed, x = [], 0
    for p in full:
        placed.append((p, x))
        x += p.width
    for a, b in zip(lo[:pairs], hi[:pairs]):
        placed += [(a, x), (b, x)]
        x += a.width
    left_tail = lo[pairs:] if extra_bottom else mid
    right_tail = mid if extra_bottom else hi[pairs:]
    for p in b3 + left_tail:
        placed.append((p, x))
        x += p.width
    x = m
    for p in t3 + right_tail:
        x -= p.width
        placed.append((p, x))
    return placed


def _leftover(placed, n, m) -> Optional[RowConvexRegion]:
    taken = set()
    for p, x in placed:
        for cx in range(x, x + p.width):
            for cy in range(p.bottom, p.bottom + p.height):
                if not (0 <= cx < m) or (cx, cy) in taken:
                    return None
                taken.add((cx, cy))
    rest = {(x, y) for x in range(m) for y in range(n)} - taken
    try:
        return RowConvexRegion.from_cells(rest, n)
    except ValueError:
        return None


def represent(P: Sequence[RowAssignedPiece], n: int) -> Tiling:
    """Block arrangement plus row-by-row filling: a full tiling respecting assignments."""
    placed, region = staircase_arrangement(P, n)
    units = [p for p in P if p.height == 1]
    fill = tile_row_convex(region, units)
    m = check_rep_equations(P, n)
    lib = _rect_library(P)
    placements = [Placement(lib.pieces.index(p.rect), 0, (x, p.bottom)) for p, x in placed]
    placements += [
        Placement(lib.pieces.index(fill.library.pieces[pl.piece]), 0, pl.at) for pl in fill.placements
    ]
    t = Tiling(n, m, tuple(placements), lib)
    if validate_tiling(t):
        raise AssertionError("block arrangement produced an invalid tiling")
    return t


# --- bounded counterexample search ----------------------------------------

def assignment_types(lib: Library, n: int) -> list[RowAssignedPiece]:
    """Every (rectangle, interval) pairing that fits ``n`` rows, tallest first."""
    out = []
    for p in sorted(_rects(lib), key=lambda p: (-p.height, -p.width)):
        if p.height <= n:
            out += [RowAssignedPiece.of(p.height, p.width, s) for s in range(1, n - p.height + 2)]
    return out


def _assignments(types, n, m, count_max) -> Iterator[list[int]]:
    """Count vectors over ``types`` with every row summing to ``m``, lexicographic."""
    k = len(types)
    residual = [m] * n
    vec = [0] * k

    def rec(i):
        if i == k:
            if not any(residual):
                yield list(vec)
            return
        t = types[i]
        rows = [r - 1 for r in t.interval.rows]
        c = 0
        while True:
            yield from rec(i + 1)
            if c == count_max or any(residual[r] < t.width for r in rows):
                break
            for r in rows:
                residual[r] -= t.width
            c += 1
            vec[i] = c
        for r in rows:
            residual[r] += t.width * c
        vec[i] = 0

    yield from rec(0)


def find_rep_counterexample(
    lib: Library, n: int, m_max: int, count_max: int, budget=None, backend=None
) -> Optional[tuple[list[RowAssignedPiece], int]]:
    """Smallest-width multiset meeting the equations but with no row-respecting tiling.

    ``None`` means every multiset up to ``m_max`` and ``count_max`` copies
    per (rectangle, interval) type was checked.
    """
    types = assignment_types(lib, n)
    for m in range(1, m_max + 1):
        for vec in _assignments(types, n, m, count_max):
            P = [t for t, c in zip(types, vec) for _ in range(c)]
            if all(p.height == 1 for p in P):
                continue  # rows are independent
            if tile_with_row_assignments(P, n, m, budget, backend) is None:
                return P, m
    return None


NOT_REP_LIBRARY = Library.rects((1, 3), (1, 2), (1, 1), (3, 1))
NOT_REP_MULTISET = (
    RowAssignedPiece.of(1, 3, 1),
    RowAssignedPiece.of(1, 3, 5),
    RowAssignedPiece.of(3, 1, 1),
    RowAssignedPiece.of(3, 1, 2),
    RowAssignedPiece.of(3, 1, 3),
    RowAssignedPiece.of(1, 1, 3),
    RowAssignedPiece.of(1, 2, 2),
    RowAssignedPiece.of(1, 2, 4),
)
