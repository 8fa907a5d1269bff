"""Hot kernels, compiled when available.

The Cython extension ``_ckernels`` is used if it imports; otherwise the
pure-Python ``_pykernels`` is used.  Setting ``TORICARR_PURE_PYTHON=1``
forces the fallback.  The compiled kernels work in 64-bit integers and
raise ``OverflowError`` rather than wrap; every wrapper here catches that
and redoes the call in arbitrary precision.
"""

import os

from . import _pykernels

_c = None
if not os.environ.get("TORICARR_PURE_PYTHON"):
    try:
        from . import _ckernels as _c
    except ImportError:
        _c = None

BACKEND = "cython" if _c is not None else "python"


def hnf(rows, ncols):
    if _c is not None:
        try:
            return _c.hnf(rows, ncols)
        except OverflowError:
            pass
    return _pykernels.hnf(rows, ncols)


def contains(basis, vec):
    if _c is not None:
        try:
            return _c.contains(basis, vec)
        except OverflowError:
            pass
    return _pykernels.contains(basis, vec)


class Reps:
    """Orbit representatives, packed once for the compiled membership test."""

    def __init__(self, vectors, ncols):
        self.vectors = [tuple(v) for v in vectors]
        self.table = None
        if _c is not None:
            try:
                self.table = _c.prepare_reps(self.vectors, ncols)
            except OverflowError:
                self.table = None


def orbit_mask(basis, reps):
    if not isinstance(reps, Reps):
        reps = Reps(reps, len(reps[0]) if len(reps) else 0)
    if reps.table is not None:
        try:
            return _c.orbit_mask(basis, reps.table)
        except OverflowError:
            pass
    return _pykernels.orbit_mask(basis, reps.vectors)


def mobius_from_masks(masks):
    if _c is not None:
        try:
            return _c.mobius_from_masks(masks)
        except OverflowError:
            pass
    return _pykernels.mobius_from_masks(masks)
