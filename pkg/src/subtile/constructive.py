"""Closed-form results for single rectangles and for "tall" rectangle libraries."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import Library, Placement, PieceMultiset, Polyomino, Tiling, TransformMode, close_library
from .errors import PreconditionError
from .subtiling import BetaReport, beta_empirical


def nonneg_combination(total: int, a: int, b: int) -> Optional[tuple[int, int]]:
    """``(x, y)`` with ``a*x + b*y == total`` and ``x, y >= 0``, smallest ``x`` first."""
    for x in range(total // a + 1):
        rest = total - a * x
        if rest % b == 0:
            return x, rest // b
    return None


@dataclass(frozen=True)
class RectPackVerdict:
    result: bool
    condition_a: bool
    n_combination: Optional[tuple[int, int]]
    m_combination: Optional[tuple[int, int]]

    @property
    def condition_b(self) -> bool:
        return self.n_combination is not None and self.m_combination is not None


def rect_tiles(a: int, b: int, n: int, m: int) -> RectPackVerdict:
    """Whether the ``a x b`` rectangle (either orientation) tiles ``R(n x m)``.

    (a) ``a`` divides ``n`` or ``m`` and ``b`` divides ``n`` or ``m``;
    (b) ``n`` and ``m`` are both non-negative integer combinations of ``a`` and ``b``.
    """
    if min(a, b, n, m) < 1:
        raise ValueError("all of a, b, n, m must be positive")
    cond_a = (n % a == 0 or m % a == 0) and (n % b == 0 or m % b == 0)
    cn = nonneg_combination(n, a, b)
    cm = nonneg_combination(m, a, b)
    return RectPackVerdict(cond_a and cn is not None and cm is not None, cond_a, cn, cm)


def _grid(out, piece, x0, y0, width, height, ph, pw):
    for x in range(x0, x0 + width, pw):
        for y in range(y0, y0 + height, ph):
            out.append(Placement(piece, 0, (x, y)))


def rect_library(a: int, b: int) -> Library:
    return close_library(Library((Polyomino.rect(a, b),), TransformMode.ROTATIONS_AND_REFLECTIONS))


def rect_tiling_witness(a: int, b: int, n: int, m: int) -> Optional[Tiling]:
    """Block-decomposition tiling of ``R(n x m)`` by ``a x b`` pieces, or ``None``.

    Pieces are written as the upright (``a`` high) or turned (``b`` high)
    entry of :func:`rect_library`.
    """
    if not rect_tiles(a, b, n, m).result:
        return None
    lib = rect_library(a, b)
    up = lib.pieces.index(Polyomino.rect(a, b))
    turned = lib.pieces.index(Polyomino.rect(b, a))
    out: list[Placement] = []
    if n % a == 0 and m % b == 0:
        _grid(out, up, 0, 0, m, n, a, b)
    elif n % b == 0 and m % a == 0:
        _grid(out, turned, 0, 0, m, n, b, a)
    elif n % a == 0 and n % b == 0:
        x, y = nonneg_combination(m, a, b)
        _grid(out, turned, 0, 0, a * x, n, b, a)
        _grid(out, up, a * x, 0, b * y, n, a, b)
    else:  # a | m and b | m
        x, y = nonneg_combination(n, a, b)
        _grid(out, up, 0, 0, m, a * x, a, b)
        _grid(out, turned, 0, a * x, m, b * y, b, a)
    return Tiling(n, m, tuple(out), lib)


@dataclass
class SingleRectBeta:
    a: int
    b: int
    n: int
    case: str
    paper_value: Optional[int]
    empirical: BetaReport

    @property
    def empirical_value(self) -> int:
        return self.empirical.beta

    @property
    def agrees(self) -> Optional[bool]:
        """``None`` when there is no stated value to compare against."""
        if self.paper_value is None:
            return None
        return self.paper_value == self.empirical.beta


def single_rect_case(a: int, b: int, n: int) -> tuple[str, Optional[int]]:
    """Case label for ``n`` and the closed-form beta stated for that case, if any."""
    da, db = n % a == 0, n % b == 0
    if n % (a * b) == 0:
        return "ab divides n", None
    if not da and not db:
        return "divisible by neither", 2 * a * b
    if da != db:
        return "exactly one", 2 * b if da else 2 * a
    return "both divide, ab does not", None


def single_rect_beta(a: int, b: int, n: int, m_max: Optional[int] = None, budget=None, backend=None) -> SingleRectBeta:
    """Classify ``n`` and compute an empirical beta (rotations allowed).

    The stated value and the empirical one are both reported; they are
    not reconciled here.
    """
    if min(a, b, n) < 1:
        raise ValueError("a, b, n must be positive")
    case, stated = single_rect_case(a, b, n)
    if m_max is None:
        m_max = 2 * stated if stated else 4 * a * b
    report = beta_empirical(rect_library(a, b), n, m_max, "rotations", budget=budget, backend=backend)
    return SingleRectBeta(a, b, n, case, stated, report)


# --- tall libraries --------------------------------------------------------

@dataclass(frozen=True)
class TallData:
    tall: tuple[Polyomino, ...]
    unit: Optional[Polyomino]
    gcd: int


def _fitting_rects(lib: Library, n: int) -> list[Polyomino]:
    if not lib.is_rectangular:
        raise PreconditionError("tall-library results need rectangular pieces")
    return [p for p in close_library(lib).pieces if p.height <= n]


def tall_precondition(lib: Library, n: int) -> Optional[TallData]:
    """Tall-library hypotheses, or ``None`` if they fail.

    Every piece that fits is either taller than ``n/2`` or the single
    unit-height piece, whose width divides the gcd of the tall widths.
    """
    pieces = _fitting_rects(lib, n)
    tall = tuple(p for p in pieces if 2 * p.height > n and not (p.height == 1 and n > 1))
    short = [p for p in pieces if p not in tall]
    if len(short) > 1 or any(p.height != 1 for p in short):
        return None
    g = math.gcd(*(p.width for p in tall)) if tall else 0
    unit = short[0] if short else None
    if unit is not None and tall and g % unit.width:
        return None
    return TallData(tall, unit, g)


def tall_beta(lib: Library, n: int) -> int:
    """The threshold width: the largest width of any piece that fits."""
    data = tall_precondition(lib, n)
    if data is None:
        raise PreconditionError("library does not satisfy the tall-rectangle hypotheses")
    widths = [p.width for p in data.tall] + ([data.unit.width] if data.unit else [])
    return max(widths)


def tall_rearrange(T: PieceMultiset, n: int, m: int) -> Tiling:
    """Tall pieces bottom-aligned by descending height, unit pieces packed above.

    Each row's free part is a suffix of the row, filled left to right, so
    every boundary between tall pieces is a vertical fault.
    """
    if T.rotations or T.reflections:
        raise PreconditionError("tall_rearrange works with translation classes")
    lib = Library(tuple(T.shapes))
    data = tall_precondition(lib, n)
    if data is None:
        raise PreconditionError("multiset does not satisfy the tall-rectangle hypotheses")
    if T.area != n * m:
        raise PreconditionError(f"multiset area {T.area} != {n * m}")
    counts = T.as_dict()
    talls = sorted(
        (p for p in counts if p in data.tall), key=lambda p: (-p.height, -p.width, p.sort_key)
    )
    placements: list[Placement] = []
    col_top = [0] * m
    x = 0
    for p in talls:
        for _ in range(counts[p]):
            if x + p.width > m:
                raise PreconditionError("tall pieces are wider than the board")
            placements.append(Placement(lib.pieces.index(p), 0, (x, 0)))
            for c in range(x, x + p.width):
                col_top[c] = p.height
            x += p.width
    units_needed = 0
    if data.unit is not None:
        u = data.unit.width
        ui = lib.pieces.index(data.unit)
        for y in range(n):
            start = next((c for c in range(m) if col_top[c] <= y), m)
            if (m - start) % u:
                raise PreconditionError("unit pieces cannot fill the space above the staircase")
            for c in range(start, m, u):
                placements.append(Placement(ui, 0, (c, y)))
                units_needed += 1
        have = counts.get(data.unit, 0)
    else:
        have = 0
        if any(h < n for h in col_top):
            raise PreconditionError("no unit piece to fill the space above the staircase")
    if units_needed != have:
        raise PreconditionError(f"multiset has {have} unit pieces, arrangement needs {units_needed}")
    return Tiling(n, m, tuple(placements), lib)
