"""Pure-Python frontier search kernel.

Board cells are linearised column-major (``index = x * n + y``) and always
filled at the first empty index.  A state is ``(p, mask)``: every cell
before ``p`` is covered and bit ``i`` of ``mask`` says whether cell
``p + i`` is.  Bit 0 of a stored mask is always clear.

A move is a tuple ``(shape, cls, bits, reach)`` listed under the row of
the anchor cell: ``bits`` is the occupancy pattern relative to the anchor
(bit 0 set) and ``reach`` the number of columns right of the anchor the
shape extends.  ``cls`` indexes the count vector.
"""
from __future__ import annotations

import sys

from .errors import BudgetExceeded

BACKEND = "python"


def _advance(mask: int) -> int:
    """Number of trailing set bits."""
    return (~mask & (mask + 1)).bit_length() - 1


def count(n, m, rows, budget=None):
    total = n * m
    layers = [dict() for _ in range(total + 1)]
    layers[0][0] = 1
    steps = 0
    for p in range(total):
        states = layers[p]
        if not states:
            continue
        layers[p] = None
        y0 = p % n
        room = m - p // n
        moves = rows[y0]
        for mask, ways in states.items():
            for _shape, _cls, bits, reach in moves:
                if reach >= room or mask & bits:
                    continue
                steps += 1
                if budget is not None and steps > budget:
                    raise BudgetExceeded(budget)
                nm = mask | bits
                t = _advance(nm)
                nxt = layers[p + t]
                key = nm >> t
                nxt[key] = nxt.get(key, 0) + ways
    return layers[total].get(0, 0)


def search(n, m, rows, caps=None, budget=None):
    """First tiling in canonical order as ``[(shape, anchor_index), ...]``.

    ``caps`` (per-class counts) must be used up exactly; ``None`` means
    unlimited supply.  Returns ``None`` when no tiling exists.
    """
    total = n * m
    caps = None if caps is None else list(caps)
    failed = set()
    path: list[tuple[int, int]] = []
    nodes = 0

    def rec(p, mask):
        nonlocal nodes
        if p == total:
            return caps is None or not any(caps)
        key = (p, mask) if caps is None else (p, mask, tuple(caps))
        if key in failed:
            return False
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(budget)
        room = m - p // n
        for shape, cls, bits, reach in rows[p % n]:
            if reach >= room or mask & bits:
                continue
            if caps is not None:
                if not caps[cls]:
                    continue
                caps[cls] -= 1
            nm = mask | bits
            t = _advance(nm)
            path.append((shape, p))
            if rec(p + t, nm >> t):
                return True
            path.pop()
            if caps is not None:
                caps[cls] += 1
        failed.add(key)
        return False

    limit = sys.getrecursionlimit()
    if total + 200 > limit:
        sys.setrecursionlimit(total + 200)
    try:
        found = rec(0, 0)
    finally:
        sys.setrecursionlimit(limit)
    return list(path) if found else None


def reachable(n, m, rows, nclasses, caps=None, budget=None):
    """Every per-class count vector (bounded by ``caps``) that tiles the board."""
    total = n * m
    zero = (0,) * nclasses
    layers = [dict() for _ in range(total + 1)]
    layers[0][0] = {zero}
    steps = 0
    for p in range(total):
        states = layers[p]
        if not states:
            continue
        layers[p] = None
        room = m - p // n
        moves = rows[p % n]
        for mask, vectors in states.items():
            for _shape, cls, bits, reach in moves:
                if reach >= room or mask & bits:
                    continue
                nm = mask | bits
                t = _advance(nm)
                nxt = layers[p + t]
                key = nm >> t
                bucket = nxt.get(key)
                if bucket is None:
                    bucket = nxt[key] = set()
                for vec in vectors:
                    if caps is not None and vec[cls] >= caps[cls]:
                        continue
                    steps += 1
                    if budget is not None and steps > budget:
                        raise BudgetExceeded(budget)
                    bucket.add(vec[:cls] + (vec[cls] + 1,) + vec[cls + 1:])
    return layers[total].get(0, set())
