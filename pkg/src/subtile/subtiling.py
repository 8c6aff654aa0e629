"""Subtiling decisions (translations / rotations) and empirical beta search.

A tiling of ``R(n x m)`` admits a subtiling when its pieces can be
rearranged into a tiling of ``R(n x m')`` next to a tiling of
``R(n x m'')`` with ``m' + m'' = m`` and both positive.  Because each
side may be rearranged freely, the question depends only on the piece
multiset, so every decision here takes a :class:`PieceMultiset`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import kernel
from .core import (
    Library,
    PieceMultiset,
    Placement,
    Polyomino,
    Tiling,
    TransformMode,
    close_library,
    juxtapose,
    multiset_of,
    symmetry_group,
)
from .enumeration import (
    build_moves,
    class_library,
    class_options,
    decode,
    enumerate_multisets,
    library_options,
    multiset_options,
    reachable_vectors,
    tile_with_counts,
)
from .errors import BudgetExceeded, PreconditionError

TRANSLATIONS = "translations"
ROTATIONS = "rotations"


def parse_mode(mode: str) -> str:
    key = mode.strip().lower()
    if key in ("trans", "translations", "trans-st"):
        return TRANSLATIONS
    if key in ("gen", "rotations", "gen-st"):
        return ROTATIONS
    raise ValueError(f"unknown subtiling mode {mode!r} (expected trans or gen)")


@dataclass(frozen=True)
class SubtilingWitness:
    split: int
    left: Tiling
    right: Tiling
    left_counts: PieceMultiset
    right_counts: PieceMultiset

    def combined(self) -> Tiling:
        """The rearranged full tiling, with a vertical fault at ``split``."""
        return juxtapose(self.left, self.right)


def _as_query(T: PieceMultiset, mode: str, reflections: bool) -> PieceMultiset:
    mode = parse_mode(mode)
    if mode == TRANSLATIONS:
        if T.rotations:
            raise ValueError("a rotation-class multiset cannot be queried with translations only")
        return T.with_symmetry(False, reflections or T.reflections)
    return T.with_symmetry(True, reflections or T.reflections)


def _split_vector(T_counts, left_tables, right_tables):
    """First left vector ``a`` (canonical order) with ``T - a`` in the right table."""
    for a in left_tables:
        if all(x <= t for x, t in zip(a, T_counts)):
            rest = tuple(t - x for x, t in zip(a, T_counts))
            if rest in right_tables:
                return a, rest
    return None


def has_subtiling(
    T: PieceMultiset,
    n: int,
    m: int,
    mode: str = TRANSLATIONS,
    reflections: bool = False,
    budget: Optional[int] = None,
    backend=None,
) -> Optional[SubtilingWitness]:
    """Witness for a subtiling of the multiset ``T`` on ``R(n x m)``, or ``None``.

    ``mode`` is ``"translations"`` (TRANS-ST) or ``"rotations"`` (GEN-ST,
    each copy independently turned by quarter turns).  ``reflections``
    additionally allows mirror images.  ``None`` is returned only after
    every split width and every sub-multiset has been ruled out.
    """
    Q = _as_query(T, mode, reflections)
    if Q.area != n * m or tile_with_counts(n, m, Q, budget, backend) is None:
        raise PreconditionError(f"multiset {T} does not tile R({n}x{m})")
    options = multiset_options(Q)
    caps = Q.counts
    k = len(caps)
    for left_w in range(1, m // 2 + 1):
        right_w = m - left_w
        lefts = reachable_vectors(n, left_w, options, k, caps, budget, backend)
        if not lefts:
            continue
        rights = lefts if right_w == left_w else reachable_vectors(n, right_w, options, k, caps, budget, backend)
        hit = _split_vector(caps, lefts, set(rights))
        if hit is None:
            continue
        a, rest = hit
        shapes = Q.shapes
        left_counts = PieceMultiset(tuple(zip(shapes, a)), Q.rotations, Q.reflections)
        right_counts = PieceMultiset(tuple(zip(shapes, rest)), Q.rotations, Q.reflections)
        left = _pin(tile_with_counts(n, left_w, left_counts, budget, backend), Q)
        right = _pin(tile_with_counts(n, right_w, right_counts, budget, backend), Q)
        return SubtilingWitness(left_w, left, right, left_counts, right_counts)
    return None


def _pin(t: Tiling, Q: PieceMultiset) -> Tiling:
    """Re-express ``t`` against the class library of the full query multiset.

    Sub-multisets drop zero-count classes, so piece indices differ between
    the two sides until mapped back to ``Q``'s class order.
    """
    lib = class_library(Q)
    index = {s: i for i, s in enumerate(Q.shapes)}
    placements = tuple(Placement(index[t.library.pieces[p.piece]], p.transform, p.at) for p in t.placements)
    return Tiling(t.n, t.m, placements, lib)


def tiling_has_subtiling(t: Tiling, mode: str = TRANSLATIONS, reflections: bool = False, budget=None, backend=None):
    """Convenience wrapper: decide for the multiset of an existing tiling."""
    rot = parse_mode(mode) == ROTATIONS
    return has_subtiling(multiset_of(t, rot, reflections), t.n, t.m, mode, reflections, budget, backend)


@dataclass
class WidthResult:
    m: int
    multisets: int = 0
    counterexample: Optional[PieceMultiset] = None
    tiling: Optional[Tiling] = None
    complete: bool = True


@dataclass
class BetaReport:
    """Outcome of an exhaustive search up to ``m_max``.

    ``beta`` is the largest width with a tiling admitting no subtiling
    (0 when none was found).  It is only a lower bound on the true
    threshold: no finite search can certify finiteness.
    """

    n: int
    mode: str
    m_max: int
    beta: int
    counterexample: Optional[PieceMultiset]
    tiling: Optional[Tiling]
    exhaustive: bool
    widths: list[WidthResult] = field(default_factory=list)

    @property
    def counterexample_widths(self) -> list[int]:
        return [w.m for w in self.widths if w.counterexample is not None]


def beta_empirical(
    lib: Library,
    n: int,
    m_max: int,
    mode: str = TRANSLATIONS,
    reflections: bool = False,
    budget: Optional[int] = None,
    backend=None,
) -> BetaReport:
    """Largest width ``m <= m_max`` with a library tiling that has no subtiling.

    Every multiset that tiles ``R(n x m)`` with the (closed) library is
    tested.  Per-width reachable tables for the rearrangement pieces are
    computed once and shared across all multisets.
    """
    mode = parse_mode(mode)
    rot = mode == ROTATIONS
    lib = close_library(lib)
    group = symmetry_group(rot, reflections)
    _, classes = library_options(lib, group)
    rearrange = class_options(classes, group)
    index = {c: i for i, c in enumerate(classes)}
    k = len(classes)
    tables: dict[int, tuple[list, set]] = {}

    def table(w):
        if w not in tables:
            vecs = reachable_vectors(n, w, rearrange, k, None, budget, backend)
            tables[w] = (vecs, set(vecs))
        return tables[w]

    report = BetaReport(n, mode, m_max, 0, None, None, True)
    for m in range(1, m_max + 1):
        res = WidthResult(m)
        report.widths.append(res)
        try:
            for T in enumerate_multisets(lib, n, m, rot, reflections, budget, backend):
                res.multisets += 1
                vec = [0] * k
                for shape, c in T.items:
                    vec[index[shape]] = c
                if not any(
                    _split_vector(vec, table(w)[0], table(m - w)[1]) for w in range(1, m // 2 + 1)
                ):
                    res.counterexample = T
                    res.tiling = _library_tiling(lib, n, m, vec, group, budget, backend)
                    break
        except BudgetExceeded:
            res.complete = False
            report.exhaustive = False
            continue
        if res.counterexample is not None:
            report.beta, report.counterexample, report.tiling = m, res.counterexample, res.tiling
    return report


def _library_tiling(lib, n, m, vec, group, budget, backend) -> Optional[Tiling]:
    """A tiling by the library pieces themselves realising class counts ``vec``."""
    options, _ = library_options(lib, group)
    rows, lifts = build_moves(n, options)
    path = kernel.search(n, m, rows, list(vec), budget, backend)
    return None if path is None else decode(n, m, path, options, lifts, lib)


# --- the staircase family with no subtiling -------------------------------

STAIRCASE_MIN_WIDTH = 3


STAIR_START = Polyomino(((0, 0), (0, 1), (1, 1)))
STAIR_END = Polyomino(((0, 0), (1, 0), (1, 1)))
STAIR_STEP = Polyomino(((0, 0), (1, 0), (1, 1), (2, 1)))


def staircase_library() -> Library:
    """Two L-tromino orientations and an S-tetromino, closed under vertical reflection."""
    pieces = (STAIR_START, STAIR_END, STAIR_STEP)
    return close_library(Library(pieces, TransformMode.VERTICAL_REFLECTIONS))


def staircase_tiling(width: int) -> Tiling:
    """The chained tiling of ``R(2 x width)``: an L, ``(width-3)/2`` S pieces, an L.

    Constructible exactly for odd ``width >= 3``.
    """
    if width < STAIRCASE_MIN_WIDTH or width % 2 == 0:
        raise PreconditionError(f"staircase tilings exist for odd widths >= {STAIRCASE_MIN_WIDTH}, not {width}")
    lib = staircase_library()
    k = (width - 3) // 2
    placements = [Placement(lib.pieces.index(STAIR_START), 0, (0, 0))]
    for j in range(1, k + 1):
        placements.append(Placement(lib.pieces.index(STAIR_STEP), 0, (2 * j - 1, 0)))
    placements.append(Placement(lib.pieces.index(STAIR_END), 0, (2 * k + 1, 0)))
    return Tiling(2, width, tuple(placements), lib)


@dataclass(frozen=True)
class NoSubtilingCertificate:
    width: int
    mode: str
    reflections: bool
    multiset: PieceMultiset
    split_widths_checked: tuple[int, ...]


def certify_staircase_family(width: int, reflections: bool = False, budget=None, backend=None):
    """Build the staircase tiling and prove by exhaustive search it has no subtiling."""
    t = staircase_tiling(width)
    T = multiset_of(t, rotations=True, reflections=reflections)
    witness = has_subtiling(T, 2, width, ROTATIONS, reflections, budget, backend)
    if witness is not None:
        raise AssertionError(f"staircase of width {width} unexpectedly splits at {witness.split}")
    cert = NoSubtilingCertificate(width, ROTATIONS, reflections, T, tuple(range(1, width // 2 + 1)))
    return t, cert
