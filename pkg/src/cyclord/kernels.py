"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure ``_pykernels`` versions. Setting ``CYCLORD_PURE=1`` forces the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("CYCLORD_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels


def backends():
    """Return every importable backend module keyed by name."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found


mv_axiom_scan = _impl.mv_axiom_scan
pco_axiom_scan = _impl.pco_axiom_scan
good_add = _impl.good_add
