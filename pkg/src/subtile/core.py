"""Polyominoes, libraries, placements and tilings of rectangles.

Coordinates follow the usual board convention: ``x`` is the column,
``y`` is the row, and ``(0, 0)`` is the bottom-left unit square.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional

from .errors import InvalidTilingError, ShapeError

Cell = tuple[int, int]

# Element ``t`` of D4 acts as "reflect x -> -x if t >= 4, then rotate a
# quarter turn counter-clockwise (t % 4) times".  Id 4 is the vertical
# reflection (mirror across a vertical line).
IDENTITY = 0
VERTICAL_REFLECTION = 4
ROTATIONS = (0, 1, 2, 3)
ALL_TRANSFORMS = tuple(range(8))


class TransformMode(enum.IntEnum):
    """Transform group a library is closed under, ordered by permissiveness."""

    FIXED = 0
    VERTICAL_REFLECTIONS = 1
    ROTATIONS_AND_REFLECTIONS = 2

    @property
    def group(self) -> tuple[int, ...]:
        return _MODE_GROUPS[self]

    @classmethod
    def parse(cls, text: str) -> "TransformMode":
        key = text.strip().lower().replace("-", "_")
        aliases = {
            "fixed": cls.FIXED,
            "translations": cls.FIXED,
            "vertical": cls.VERTICAL_REFLECTIONS,
            "vertical_reflections": cls.VERTICAL_REFLECTIONS,
            "verticalreflections": cls.VERTICAL_REFLECTIONS,
            "rotations": cls.ROTATIONS_AND_REFLECTIONS,
            "all": cls.ROTATIONS_AND_REFLECTIONS,
            "rotations_and_reflections": cls.ROTATIONS_AND_REFLECTIONS,
            "rotationsandreflections": cls.ROTATIONS_AND_REFLECTIONS,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown transform mode {text!r}") from None


_MODE_GROUPS = {
    TransformMode.FIXED: (IDENTITY,),
    TransformMode.VERTICAL_REFLECTIONS: (IDENTITY, VERTICAL_REFLECTION),
    TransformMode.ROTATIONS_AND_REFLECTIONS: ALL_TRANSFORMS,
}


def symmetry_group(rotations: bool = False, reflections: bool = False) -> tuple[int, ...]:
    """Transform ids available to a rearrangement query."""
    if rotations and reflections:
        return ALL_TRANSFORMS
    if rotations:
        return ROTATIONS
    if reflections:
        return (IDENTITY, VERTICAL_REFLECTION)
    return (IDENTITY,)


def transform_cell(cell: Cell, transform_id: int) -> Cell:
    x, y = cell
    if transform_id >= 4:
        x = -x
    for _ in range(transform_id % 4):
        x, y = -y, x
    return x, y


def _is_connected(cells: frozenset) -> bool:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


@dataclass(frozen=True)
class Polyomino:
    """A translation-normalized, edge-connected set of unit cells.

    The constructor accepts any iterable of ``(x, y)`` pairs; the stored
    ``cells`` are shifted so that ``min x = min y = 0`` and sorted row-major.
    """

    cells: tuple[Cell, ...]

    def __post_init__(self):
        raw = frozenset((int(x), int(y)) for x, y in self.cells)
        if not raw:
            raise ShapeError("a polyomino needs at least one cell")
        if not _is_connected(raw):
            raise ShapeError(f"cells {sorted(raw)} are not edge-connected")
        x0 = min(x for x, _ in raw)
        y0 = min(y for _, y in raw)
        norm = sorted(((x - x0, y - y0) for x, y in raw), key=lambda c: (c[1], c[0]))
        object.__setattr__(self, "cells", tuple(norm))

    @classmethod
    def rect(cls, height: int, width: int) -> "Polyomino":
        if height < 1 or width < 1:
            raise ShapeError(f"rectangle {height}x{width} must have positive sides")
        return cls(tuple((x, y) for y in range(height) for x in range(width)))

    @cached_property
    def width(self) -> int:
        return max(x for x, _ in self.cells) + 1

    @cached_property
    def height(self) -> int:
        return max(y for _, y in self.cells) + 1

    @property
    def area(self) -> int:
        return len(self.cells)

    @property
    def is_rectangle(self) -> bool:
        return self.area == self.width * self.height

    @property
    def dims(self) -> tuple[int, int]:
        """``(height, width)``, matching the ``p_{a x b}`` naming."""
        return self.height, self.width

    @cached_property
    def cell_set(self) -> frozenset:
        return frozenset(self.cells)

    @property
    def sort_key(self):
        return (self.height, self.width, self.cells)

    def transformed(self, transform_id: int) -> "Polyomino":
        if transform_id == IDENTITY:
            return self
        return Polyomino(tuple(transform_cell(c, transform_id) for c in self.cells))

    def __repr__(self):
        if self.is_rectangle:
            return f"Polyomino.rect({self.height}, {self.width})"
        return f"Polyomino({list(self.cells)!r})"

    def __str__(self):
        if self.is_rectangle:
            return f"{self.height}x{self.width}"
        rows = []
        for y in reversed(range(self.height)):
            rows.append("".join("#" if (x, y) in self.cell_set else "." for x in range(self.width)))
        return "/".join(rows)


def normalize(cells: Iterable[Cell]) -> Polyomino:
    """Translate ``cells`` to the origin; rejects empty or disconnected sets."""
    return Polyomino(tuple(cells))


def transforms(p: Polyomino, mode) -> list[Polyomino]:
    """Orbit of ``p`` under ``mode`` (a TransformMode or a tuple of transform ids).

    Returned in transform-id order with duplicates removed, so the first
    element is always ``p`` itself.
    """
    group = mode.group if isinstance(mode, TransformMode) else tuple(mode)
    out: list[Polyomino] = []
    for t in group:
        q = p.transformed(t)
        if q not in out:
            out.append(q)
    return out


def orientations(p: Polyomino, group: tuple[int, ...]) -> list[tuple[int, Polyomino]]:
    """Distinct shapes of ``p`` under ``group`` with the first transform id reaching each."""
    seen: dict[Polyomino, int] = {}
    for t in group:
        seen.setdefault(p.transformed(t), t)
    return [(t, q) for q, t in seen.items()]


def canonical(p: Polyomino, group: tuple[int, ...]) -> Polyomino:
    """Deterministic representative of the orbit of ``p`` under ``group``."""
    if len(group) == 1:
        return p
    return min(transforms(p, group), key=lambda q: q.sort_key)


@dataclass(frozen=True)
class Library:
    """An ordered, translation-deduplicated list of pieces plus a closure mode."""

    pieces: tuple[Polyomino, ...]
    mode: TransformMode = TransformMode.FIXED

    def __post_init__(self):
        unique: list[Polyomino] = []
        for p in self.pieces:
            if p not in unique:
                unique.append(p)
        object.__setattr__(self, "pieces", tuple(unique))
        object.__setattr__(self, "mode", TransformMode(self.mode))

    @classmethod
    def rects(cls, *dims: tuple[int, int], mode=TransformMode.FIXED) -> "Library":
        return cls(tuple(Polyomino.rect(h, w) for h, w in dims), mode)

    def __len__(self):
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    @property
    def is_rectangular(self) -> bool:
        return all(p.is_rectangle for p in self.pieces)

    def is_closed(self) -> bool:
        return close_library(self).pieces == self.pieces


def close_library(lib: Library) -> Library:
    """Extend the piece list by every transform allowed by the library's mode."""
    out: list[Polyomino] = []
    for p in lib.pieces:
        for q in transforms(p, lib.mode):
            if q not in out:
                out.append(q)
    return Library(tuple(out), lib.mode)


class Placement(NamedTuple):
    """Piece ``piece`` of the library, transformed by ``transform``, with the
    bottom-left corner of its bounding box on cell ``at``."""

    piece: int
    transform: int
    at: Cell

    def cells(self, library: Library) -> list[Cell]:
        shape = library.pieces[self.piece].transformed(self.transform)
        ax, ay = self.at
        return [(ax + x, ay + y) for x, y in shape.cells]

    def shape(self, library: Library) -> Polyomino:
        return library.pieces[self.piece].transformed(self.transform)


@dataclass(frozen=True)
class Tiling:
    """Placements that should exactly partition the ``n x m`` board.

    ``region`` optionally restricts the target to a sub-region of the board
    (used for row-convex regions); ``None`` means the whole rectangle.
    """

    n: int
    m: int
    placements: tuple[Placement, ...]
    library: Library
    region: Optional[frozenset] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "placements", tuple(Placement(p[0], p[1], tuple(p[2])) for p in self.placements)
        )

    def target_cells(self) -> frozenset:
        if self.region is not None:
            return self.region
        return frozenset((x, y) for x in range(self.m) for y in range(self.n))

    def shapes(self) -> list[Polyomino]:
        return [pl.shape(self.library) for pl in self.placements]

    def grid(self) -> list[list[int]]:
        """Row-major owner grid, ``grid[y][x]`` = placement index or -1."""
        g = [[-1] * self.m for _ in range(self.n)]
        for i, pl in enumerate(self.placements):
            for x, y in pl.cells(self.library):
                if 0 <= x < self.m and 0 <= y < self.n:
                    g[y][x] = i
        return g


class Violation(NamedTuple):
    kind: str  # "piece", "transform", "outside", "overlap", "uncovered"
    cell: Optional[Cell]
    placement: Optional[int] = None


def validate_tiling(t: Tiling) -> list[Violation]:
    """All reasons ``t`` fails to be an exact partition; empty when valid."""
    bad: list[Violation] = []
    outside: list[Violation] = []
    cover: Counter = Counter()
    target = t.target_cells()
    allowed = set(t.library.mode.group)
    for i, pl in enumerate(t.placements):
        if not 0 <= pl.piece < len(t.library):
            bad.append(Violation("piece", None, i))
            continue
        if pl.transform not in allowed:
            bad.append(Violation("transform", None, i))
        for c in pl.cells(t.library):
            if c not in target:
                outside.append(Violation("outside", c, i))
            else:
                cover[c] += 1
    overlaps = [Violation("overlap", c) for c in sorted(cover) if cover[c] > 1]
    uncovered = [Violation("uncovered", c) for c in sorted(target) if c not in cover]
    return bad + outside + overlaps + uncovered


def require_valid(t: Tiling) -> None:
    problems = validate_tiling(t)
    if problems:
        raise InvalidTilingError(f"invalid tiling: {problems[:5]}")


@dataclass(frozen=True)
class PieceMultiset:
    """Counts of shape classes.

    Keys are canonical representatives under the multiset's symmetry
    (translations only by default; quarter turns and/or reflections when
    the flags are set), so two multisets compare equal iff their class
    counts agree.
    """

    items: tuple[tuple[Polyomino, int], ...]
    rotations: bool = False
    reflections: bool = False

    def __post_init__(self):
        group = self.group
        merged: Counter = Counter()
        for shape, count in self.items:
            if count < 0:
                raise ValueError("multiset counts must be non-negative")
            if count:
                merged[canonical(shape, group)] += int(count)
        items = tuple(sorted(merged.items(), key=lambda kv: kv[0].sort_key))
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, counts: Mapping[Polyomino, int] | Iterable[tuple[Polyomino, int]], rotations=False, reflections=False):
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        return cls(tuple(pairs), rotations, reflections)

    @property
    def group(self) -> tuple[int, ...]:
        return symmetry_group(self.rotations, self.reflections)

    @property
    def shapes(self) -> list[Polyomino]:
        return [s for s, _ in self.items]

    @property
    def counts(self) -> list[int]:
        return [c for _, c in self.items]

    def as_dict(self) -> dict[Polyomino, int]:
        return dict(self.items)

    @property
    def area(self) -> int:
        return sum(s.area * c for s, c in self.items)

    @property
    def size(self) -> int:
        return sum(c for _, c in self.items)

    def with_symmetry(self, rotations=False, reflections=False) -> "PieceMultiset":
        return PieceMultiset(self.items, rotations, reflections)

    def __str__(self):
        body = ", ".join(f"{s}: {c}" for s, c in self.items)
        return "{" + body + "}"


def multiset_of(t: Tiling, rotations: bool = False, reflections: bool = False) -> PieceMultiset:
    """Class counts of the pieces placed in a valid tiling."""
    require_valid(t)
    counts: Counter = Counter(t.shapes())
    return PieceMultiset.of(counts, rotations, reflections)


def vertical_faults(t: Tiling) -> list[int]:
    """Interior vertical grid lines ``x`` (1..m-1) crossing no piece."""
    require_valid(t)
    crossed = [False] * (t.m + 1)
    for pl in t.placements:
        xs = [x for x, _ in pl.cells(t.library)]
        for x in range(min(xs) + 1, max(xs) + 1):
            crossed[x] = True
    return [x for x in range(1, t.m) if not crossed[x]]


def juxtapose(left: Tiling, right: Tiling) -> Tiling:
    """Place ``right`` immediately to the right of ``left`` (same height)."""
    if left.n != right.n:
        raise ValueError("juxtaposed tilings must share the same height")
    if left.library != right.library:
        raise ValueError("juxtaposed tilings must share a library")
    shift = left.m
    moved = [Placement(p.piece, p.transform, (p.at[0] + shift, p.at[1])) for p in right.placements]
    return Tiling(left.n, left.m + right.m, left.placements + tuple(moved), left.library)
