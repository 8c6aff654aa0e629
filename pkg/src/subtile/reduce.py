"""Partition instances turned into subtiling instances, and back.

For ``M = {m_1, ..., m_k}`` with even sum ``2N`` the library is the
``(2N+1) x m_i`` rectangles plus ``1 x N``.  The board is
``R((2N+2) x 2N)``: the tall pieces stand side by side on the bottom
row and the two ``1 x N`` pieces share the top row.  A subtiling
exists exactly when ``M`` splits into two halves of sum ``N``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernel
from .core import (
    Library,
    PieceMultiset,
    Placement,
    Polyomino,
    Tiling,
    TransformMode,
    orientations,
    require_valid,
    symmetry_group,
)
from .enumeration import ShapeOption, build_moves
from .errors import BudgetExceeded
from .subtiling import ROTATIONS, SubtilingWitness, has_subtiling


@dataclass(frozen=True)
class PartitionInstance:
    items: tuple[int, ...]

    def __post_init__(self):
        if any(int(v) != v or v < 1 for v in self.items):
            raise ValueError("partition items must be positive integers")

    @classmethod
    def parse(cls, text: str) -> "PartitionInstance":
        parts = [s for s in text.replace(" ", ",").split(",") if s]
        return cls(tuple(int(s) for s in parts))

    @property
    def total(self) -> int:
        return sum(self.items)

    @property
    def half(self) -> Optional[int]:
        return self.total // 2 if self.total % 2 == 0 else None


def partition_brute(M: Sequence[int], budget: Optional[int] = None) -> Optional[tuple[list[int], list[int]]]:
    """Equal-sum split of ``M`` by subset enumeration, first by bitmask order."""
    items = list(M)
    total = sum(items)
    if total % 2:
        return None
    k = len(items)
    if budget is not None and (1 << k) > budget:
        raise BudgetExceeded(budget)
    for mask in range(1, 1 << k):
        if sum(v for i, v in enumerate(items) if mask >> i & 1) * 2 == total:
            left = [v for i, v in enumerate(items) if mask >> i & 1]
            right = [v for i, v in enumerate(items) if not mask >> i & 1]
            return left, right
    return None


@dataclass(frozen=True)
class ReductionInstance:
    partition: PartitionInstance
    N: int
    library: Library
    multiset: PieceMultiset
    tiling: Tiling

    @property
    def n(self) -> int:
        return 2 * self.N + 2

    @property
    def m(self) -> int:
        return 2 * self.N


def reduce_partition(M: Sequence[int] | PartitionInstance) -> Optional[ReductionInstance]:
    """The tiling instance for ``M``, or ``None`` when the sum is odd."""
    inst = M if isinstance(M, PartitionInstance) else PartitionInstance(tuple(M))
    if not inst.items:
        raise ValueError("partition instance is empty")
    N = inst.half
    if N is None:
        return None
    bar = Polyomino.rect(1, N)
    talls = {w: Polyomino.rect(2 * N + 1, w) for w in sorted(set(inst.items))}
    lib = Library(tuple(talls.values()) + (bar,), TransformMode.ROTATIONS_AND_REFLECTIONS)
    placements = []
    x = 0
    for w in inst.items:
        placements.append(Placement(lib.pieces.index(talls[w]), 0, (x, 0)))
        x += w
    bi = lib.pieces.index(bar)
    placements += [Placement(bi, 0, (0, 2 * N + 1)), Placement(bi, 0, (N, 2 * N + 1))]
    t = Tiling(2 * N + 2, 2 * N, tuple(placements), lib)
    require_valid(t)
    counts = Counter(talls[w] for w in inst.items)
    counts[bar] += 2
    return ReductionInstance(inst, N, lib, PieceMultiset.of(counts), t)


def witness_partition(inst: ReductionInstance, w: SubtilingWitness) -> tuple[list[int], list[int]]:
    """Read the tall-piece widths on each side of a subtiling witness."""
    tall = 2 * inst.N + 1

    def widths(ms: PieceMultiset):
        out = []
        for shape, c in ms.items:
            if max(shape.dims) == tall:
                out += [min(shape.dims)] * c
        return sorted(out)

    return widths(w.left_counts), widths(w.right_counts)


def solve_partition_via_tiling(M: Sequence[int], budget: Optional[int] = None, backend=None) -> bool:
    """Decide the partition problem with a rotations-allowed subtiling search."""
    inst = reduce_partition(M)
    if inst is None:
        return False
    return has_subtiling(inst.multiset, inst.n, inst.m, ROTATIONS, budget=budget, backend=backend) is not None


def rotation_rigidity_check(inst: ReductionInstance, budget: Optional[int] = None, backend=None) -> bool:
    """True when no rearrangement of the reduction board uses a quarter-turned copy."""
    return no_turned_rearrangement(inst.multiset, inst.n, inst.m, budget, backend)


def no_turned_rearrangement(T: PieceMultiset, n: int, m: int, budget: Optional[int] = None, backend=None) -> bool:
    """True when every tiling of ``R(n x m)`` by ``T`` keeps all copies unturned.

    For each non-square class and each ``r >= 1`` the search is run with
    exactly ``r`` copies of that class turned; every run must fail.
    Square classes look the same turned, so they are skipped.
    """
    group = symmetry_group(rotations=True)
    shapes, counts = T.shapes, T.counts
    for c, shape in enumerate(shapes):
        if shape.height == shape.width:
            continue
        turned_slot = len(shapes)
        options = []
        for i, s in enumerate(shapes):
            for t, q in orientations(s, group):
                turned = q.dims != s.dims
                slot = turned_slot if (i == c and turned) else i
                options.append(ShapeOption(slot, i, t, q))
        rows, _ = build_moves(n, options)
        for r in range(1, counts[c] + 1):
            caps = list(counts) + [r]
            caps[c] -= r
            if kernel.search(n, m, rows, caps, budget, backend) is not None:
                return False
    return True
