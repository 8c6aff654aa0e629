"""Closed-form upper bounds on the threshold width, in exact rationals."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import Library, close_library
from .errors import PreconditionError, ShapeError
from .represent import rep_sufficient
from .subtiling import TRANSLATIONS, BetaReport, beta_empirical


@dataclass(frozen=True)
class BoundInputs:
    n: int
    heights: tuple[int, ...]  # h_n(L), ascending
    per_height: dict  # height -> number of pieces of that height
    max_area: int  # A, over pieces of height <= n (0 if none)
    max_width: int  # omega, over all pieces
    widths: tuple[int, ...]

    @property
    def dimension(self) -> int:
        """``sum over heights i of (n - i + 1) * |L(i)|``."""
        return sum((self.n - i + 1) * c for i, c in self.per_height.items())


def bound_inputs(lib: Library, n: int) -> BoundInputs:
    if n < 1:
        raise ValueError("n must be positive")
    if not lib.is_rectangular:
        raise ShapeError("bounds are defined for rectangular pieces only")
    pieces = close_library(lib).pieces
    fit = [p for p in pieces if p.height <= n]
    per = Counter(p.height for p in fit)
    return BoundInputs(
        n,
        tuple(sorted(per)),
        dict(per),
        max((p.area for p in fit), default=0),
        max((p.width for p in pieces), default=0),
        tuple(sorted({p.width for p in pieces})),
    )


def bound_general(lib: Library, n: int, assume_representable: bool = False) -> Fraction:
    """``max(2, 3/4 * A**(n-1) * dim)`` for an ``n``-representable library.

    Refuses unless a known sufficient condition certifies
    representability or the caller vouches for it.
    """
    inp = bound_inputs(lib, n)
    if not assume_representable and rep_sufficient(lib, n) is None:
        raise PreconditionError("library is not known to be n-representable; the bound does not apply")
    value = Fraction(3, 4) * Fraction(inp.max_area) ** (n - 1) * inp.dimension
    return max(Fraction(2), value)


def bound_unit_height(lib: Library, n: int) -> Fraction:
    """``max(2, 3/8 * omega**n * lcm(widths)**2)`` for unit-height libraries."""
    inp = bound_inputs(lib, n)
    if any(p.height != 1 for p in close_library(lib).pieces):
        raise PreconditionError("every piece must have unit height")
    if not inp.widths:
        return Fraction(2)
    value = Fraction(3, 8) * inp.max_width**n * math.lcm(*inp.widths) ** 2
    return max(Fraction(2), value)


def lcm_lower_bound(lib: Library) -> int:
    """The lcm of the piece widths (informational only)."""
    widths = [p.width for p in close_library(lib).pieces]
    return math.lcm(*widths) if widths else 0


def ceil(q: Fraction) -> int:
    return -(-q.numerator // q.denominator)


@dataclass
class BoundComparison:
    n: int
    empirical: BetaReport
    bounds: dict = field(default_factory=dict)  # name -> Fraction
    skipped: dict = field(default_factory=dict)  # name -> reason
    lcm_lower: int = 0

    @property
    def violations(self) -> list[str]:
        return [k for k, b in self.bounds.items() if self.empirical.beta > ceil(b)]

    @property
    def consistent(self) -> bool:
        return not self.violations


def bound_vs_empirical(lib: Library, n: int, m_max: int, budget=None, backend=None) -> BoundComparison:
    """Empirical beta (translations only) against every bound whose hypotheses hold."""
    report = beta_empirical(lib, n, m_max, TRANSLATIONS, budget=budget, backend=backend)
    out = BoundComparison(n, report, lcm_lower=lcm_lower_bound(lib))
    for name, fn in (("general", bound_general), ("unit_height", bound_unit_height)):
        try:
            out.bounds[name] = fn(lib, n)
        except PreconditionError as e:
            out.skipped[name] = str(e)
    return out
