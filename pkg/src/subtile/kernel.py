"""Backend selection for the frontier search kernel.

The compiled ``_ckernel`` is used when it imported successfully and the
instance fits its 64-bit state encoding; otherwise the pure-Python
``_pykernel`` runs.  Set ``SUBTILE_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

if os.environ.get("SUBTILE_PURE_PYTHON", "").strip() not in ("", "0"):
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernel is not None else [])


def _use_c(backend, n, m, rows) -> bool:
    if backend == "python" or _ckernel is None:
        if backend == "cython":
            raise RuntimeError("compiled kernel is not available")
        return False
    return _ckernel.fits(n, m, rows)


def count(n, m, rows, budget=None, backend=None) -> int:
    if _use_c(backend, n, m, rows):
        try:
            return _ckernel.count(n, m, rows, budget)
        except _ckernel.CountOverflow:
            pass
    return _pykernel.count(n, m, rows, budget)


def search(n, m, rows, caps=None, budget=None, backend=None):
    if _use_c(backend, n, m, rows) and _ckernel.search_fits(n, m, caps):
        return _ckernel.search(n, m, rows, caps, budget)
    return _pykernel.search(n, m, rows, caps, budget)


def reachable(n, m, rows, nclasses, caps=None, budget=None, backend=None) -> set:
    if _use_c(backend, n, m, rows):
        eff = caps if caps is not None else _ckernel.class_caps(n, m, rows, nclasses)
        if _ckernel.reachable_fits(eff):
            return _ckernel.reachable(n, m, rows, nclasses, eff, budget)
    return _pykernel.reachable(n, m, rows, nclasses, caps, budget)
