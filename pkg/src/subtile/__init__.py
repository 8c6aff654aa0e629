"""Exact search for subtilings of polyomino tilings of rectangles."""
from .core import (
    Library,
    Placement,
    PieceMultiset,
    Polyomino,
    Tiling,
    TransformMode,
    close_library,
    multiset_of,
    normalize,
    transforms,
    validate_tiling,
    vertical_faults,
)
from .enumeration import (
    can_tile,
    count_tilings,
    enumerate_multisets,
    find_tiling,
    tile_with_counts,
)
from .errors import BudgetExceeded, InvalidTilingError, PreconditionError, ShapeError, SubtileError
from .kernel import BACKEND
from .subtiling import (
    ROTATIONS,
    TRANSLATIONS,
    BetaReport,
    SubtilingWitness,
    beta_empirical,
    has_subtiling,
    staircase_tiling,
    tiling_has_subtiling,
)

__version__ = "0.1.0"
