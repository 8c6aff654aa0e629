"""Deterministic SVG and ASCII pictures of tilings, with vertical faults marked."""
from __future__ import annotations

import random
import string
from dataclasses import dataclass
from xml.sax.saxutils import quoteattr

from .core import Tiling, canonical, require_valid, symmetry_group, vertical_faults


@dataclass(frozen=True)
class RenderSpec:
    cell: int = 24
    seed: int = 0
    fault_dash: str = "6,4"
    format: str = "svg"


def palette(k: int, seed: int = 0) -> list[str]:
    """``k`` distinct fill colours; the hue offset comes from ``seed``."""
    rng = random.Random(seed)
    base = rng.uniform(0, 360)
    return [f"hsl({(base + 137.508 * i) % 360:.1f},55%,72%)" for i in range(k)]


def _outline(cells):
    """Boundary loops of a cell set as lists of lattice points (y up)."""
    edges = {}
    for x, y in cells:
        for a, b in (((x, y), (x + 1, y)), ((x + 1, y), (x + 1, y + 1)),
                     ((x + 1, y + 1), (x, y + 1)), ((x, y + 1), (x, y))):
            if (b, a) in edges:
                del edges[(b, a)]
            else:
                edges[(a, b)] = True
    nxt: dict = {}
    for a, b in sorted(edges):
        nxt.setdefault(a, []).append(b)
    loops = []
    while nxt:
        start = min(nxt)
        loop, cur = [start], start
        while True:
            ends = nxt[cur]
            b = ends.pop()
            if not ends:
                del nxt[cur]
            if b == start:
                break
            loop.append(b)
            cur = b
        loops.append(loop)
    return loops


def _classes(t: Tiling):
    group = symmetry_group(True, True)
    reps: list = []
    out = []
    for s in t.shapes():
        r = canonical(s, group)
        if r not in reps:
            reps.append(r)
        out.append(reps.index(r))
    return out, len(reps)


def render_svg(t: Tiling, spec: RenderSpec = RenderSpec()) -> str:
    require_valid(t)
    c = spec.cell
    W, H = t.m * c, t.n * c
    cls, k = _classes(t)
    colours = palette(k, spec.seed)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {W} {H}" width="{W}" height="{H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
    ]
    for i, pl in enumerate(t.placements):
        shape = pl.shape(t.library)
        fill = quoteattr(colours[cls[i]])
        x0, y0 = pl.at
        if shape.is_rectangle:
            x, y = x0 * c, (t.n - y0 - shape.height) * c
            lines.append(
                f'<rect x="{x}" y="{y}" width="{shape.width * c}" height="{shape.height * c}" '
                f'fill={fill} stroke="black" stroke-width="1" data-piece="{pl.piece}"/>'
            )
            continue
        parts = []
        for loop in _outline(pl.cells(t.library)):
            pts = " L ".join(f"{px * c} {(t.n - py) * c}" for px, py in loop)
            parts.append(f"M {pts} Z")
        lines.append(
            f'<path d="{" ".join(parts)}" fill={fill} fill-rule="evenodd" stroke="black" '
            f'stroke-width="1" data-piece="{pl.piece}"/>'
        )
    for x in vertical_faults(t):
        lines.append(
            f'<line x1="{x * c}" y1="0" x2="{x * c}" y2="{H}" stroke="red" stroke-width="2" '
            f'stroke-dasharray="{spec.fault_dash}" class="fault"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


_GLYPHS = string.ascii_uppercase + string.ascii_lowercase + string.digits


def render_ascii(t: Tiling) -> str:
    """Top row first; one glyph per placement, ``|`` between columns at a fault."""
    require_valid(t)
    faults = set(vertical_faults(t))
    grid = t.grid()
    out = []
    for y in reversed(range(t.n)):
        row = []
        for x in range(t.m):
            if x:
                row.append("|" if x in faults else " ")
            i = grid[y][x]
            row.append("." if i < 0 else _GLYPHS[i % len(_GLYPHS)])
        out.append("".join(row))
    return "\n".join(out) + "\n"


def render(t: Tiling, spec: RenderSpec = RenderSpec()) -> str:
    if spec.format == "svg":
        return render_svg(t, spec)
    if spec.format == "ascii":
        return render_ascii(t)
    raise ValueError(f"unknown render format {spec.format!r}")
