"""JSON encoding of shapes, libraries, tilings, multisets and row-assigned pieces.

Shapes are ``[[x, y], ...]`` cell lists or ``{"rect": [h, w]}``.  Tilings
carry their library so a file is self-contained::

    {"n": 2, "m": 3, "library": {"mode": "fixed", "pieces": [...]},
     "placements": [{"piece": 0, "transform": 0, "at": [0, 0]}]}

The pair encoding (``--paper-encoding``) lists rectangles as
``[[h, w], [x, y]]`` pairs; numbers may be ints or strings of binary
digits.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

from .core import Library, PieceMultiset, Placement, Polyomino, Tiling, TransformMode, require_valid
from .errors import SubtileError
from .represent import RowAssignedPiece

MODE_NAMES = {
    TransformMode.FIXED: "fixed",
    TransformMode.VERTICAL_REFLECTIONS: "vertical",
    TransformMode.ROTATIONS_AND_REFLECTIONS: "rotations",
}


class SchemaError(SubtileError, ValueError):
    """Input JSON does not match the expected shape."""


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing key {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"{key!r} must be {getattr(kind, '__name__', kind)}")
    return val


def _int(v, what="value") -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{what} must be an integer, got {v!r}")
    return v


def poly_to_json(p: Polyomino) -> Any:
    if p.is_rectangle:
        return {"rect": [p.height, p.width]}
    return [list(c) for c in p.cells]


def poly_from_json(obj) -> Polyomino:
    if isinstance(obj, dict):
        h, w = _need(obj, "rect", list)
        return Polyomino.rect(_int(h, "height"), _int(w, "width"))
    if not isinstance(obj, list) or not obj:
        raise SchemaError("a polyomino is a non-empty list of [x, y] cells or {'rect': [h, w]}")
    cells = []
    for c in obj:
        if not isinstance(c, list) or len(c) != 2:
            raise SchemaError(f"bad cell {c!r}")
        cells.append((_int(c[0], "x"), _int(c[1], "y")))
    return Polyomino(tuple(cells))


def library_to_json(lib: Library) -> dict:
    return {"mode": MODE_NAMES[lib.mode], "pieces": [poly_to_json(p) for p in lib.pieces]}


def library_from_json(obj) -> Library:
    if isinstance(obj, list):  # bare piece list
        obj = {"pieces": obj}
    pieces = _need(obj, "pieces", list)
    mode = TransformMode.parse(obj.get("mode", "fixed"))
    return Library(tuple(poly_from_json(p) for p in pieces), mode)


def tiling_to_json(t: Tiling) -> dict:
    return {
        "n": t.n,
        "m": t.m,
        "library": library_to_json(t.library),
        "placements": [{"piece": p.piece, "transform": p.transform, "at": list(p.at)} for p in t.placements],
    }


def tiling_from_json(obj, library: Optional[Library] = None) -> Tiling:
    n, m = _int(_need(obj, "n"), "n"), _int(_need(obj, "m"), "m")
    if "library" in obj:
        library = library_from_json(obj["library"])
    if library is None:
        raise SchemaError("tiling needs a library (in the file or via --library)")
    placements = []
    for pl in _need(obj, "placements", list):
        i = _int(_need(pl, "piece"), "piece")
        if not 0 <= i < len(library.pieces):
            raise SchemaError(f"piece index {i} out of range")
        t = _int(pl.get("transform", 0), "transform")
        if t not in library.mode.group:
            raise SchemaError(f"transform {t} not allowed in mode {MODE_NAMES[library.mode]}")
        x, y = _need(pl, "at", list)
        placements.append(Placement(i, t, (_int(x, "x"), _int(y, "y"))))
    return Tiling(n, m, tuple(placements), library)


def multiset_to_json(T: PieceMultiset) -> dict:
    return {
        "rotations": T.rotations,
        "reflections": T.reflections,
        "counts": [{"piece": poly_to_json(s), "count": c} for s, c in T.items],
    }


def multiset_from_json(obj) -> PieceMultiset:
    items = [(poly_from_json(_need(e, "piece")), _int(_need(e, "count"), "count")) for e in _need(obj, "counts", list)]
    return PieceMultiset(tuple(items), bool(obj.get("rotations", False)), bool(obj.get("reflections", False)))


def row_piece_to_json(p: RowAssignedPiece) -> dict:
    return {"rect": [p.height, p.width], "rows": [p.interval.start, p.interval.length]}


def row_piece_from_json(obj) -> RowAssignedPiece:
    h, w = _need(obj, "rect", list)
    start, length = _need(obj, "rows", list)
    try:
        p = RowAssignedPiece.of(_int(h, "height"), _int(w, "width"), _int(start, "row"))
    except ValueError as e:
        raise SchemaError(str(e)) from None
    if p.interval.length != _int(length, "length"):
        raise SchemaError(f"rows {obj['rows']} do not match height {h}")
    return p


# --- pair encoding --------------------------------------------------------

def _num(v) -> int:
    if isinstance(v, str):
        if not v or set(v) - {"0", "1"}:
            raise SchemaError(f"{v!r} is not a binary number")
        return int(v, 2)
    return _int(v)


def tiling_from_pairs(obj) -> Tiling:
    """``{"n", "m", "tiles": [[[h, w], [x, y]], ...]}``; rectangles only."""
    n, m = _num(_need(obj, "n")), _num(_need(obj, "m"))
    shapes, placements = [], []
    for entry in _need(obj, "tiles", list):
        try:
            (h, w), (x, y) = entry
        except (TypeError, ValueError):
            raise SchemaError(f"bad tile entry {entry!r}") from None
        p = Polyomino.rect(_num(h), _num(w))
        if p not in shapes:
            shapes.append(p)
        placements.append(Placement(shapes.index(p), 0, (_num(x), _num(y))))
    lib = Library(tuple(shapes), TransformMode.ROTATIONS_AND_REFLECTIONS)
    return Tiling(n, m, tuple(placements), lib)


def tiling_to_pairs(t: Tiling, binary: bool = False) -> dict:
    enc = (lambda v: format(v, "b")) if binary else (lambda v: v)
    tiles = []
    for p in t.placements:
        s = p.shape(t.library)
        if not s.is_rectangle:
            raise SchemaError("the pair encoding holds rectangles only")
        tiles.append([[enc(s.height), enc(s.width)], [enc(p.at[0]), enc(p.at[1])]])
    return {"n": enc(t.n), "m": enc(t.m), "tiles": tiles}


# --- instance files -------------------------------------------------------

@dataclass
class Instance:
    n: int
    m: int
    library: Optional[Library]
    tiling: Optional[Tiling]
    multiset: Optional[PieceMultiset]


def load_instance(obj, library: Optional[Library] = None, paper_encoding: bool = False) -> Instance:
    """A tiling (validated) or a bare multiset with board size."""
    if paper_encoding:
        t = tiling_from_pairs(obj)
        require_valid(t)
        return Instance(t.n, t.m, t.library, t, None)
    if "multiset" in obj:
        n, m = _int(_need(obj, "n"), "n"), _int(_need(obj, "m"), "m")
        lib = library_from_json(obj["library"]) if "library" in obj else library
        return Instance(n, m, lib, None, multiset_from_json(obj["multiset"]))
    src = obj.get("tiling", obj)
    t = tiling_from_json(src, library)
    require_valid(t)
    return Instance(t.n, t.m, t.library, t, None)


def read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: malformed JSON ({e})") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
