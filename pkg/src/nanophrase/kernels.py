"""Backend selection for the restriction kernels.

The compiled module is used when it was built and imports cleanly; setting
``NANOPHRASE_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _kernels_py

if os.environ.get("NANOPHRASE_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND


def restrict(word, lengths, proj, mask):
    if _impl is not _kernels_py:
        try:
            return _impl.restrict(word, lengths, proj, mask)
        except OverflowError:
            pass
    return _kernels_py.restrict(word, lengths, proj, mask)


def canonicalize(word, lengths, proj):
    if _impl is not _kernels_py:
        try:
            return _impl.canonicalize(word, lengths, proj)
        except OverflowError:
            pass
    return _kernels_py.canonicalize(word, lengths, proj)


def subforms(word, lengths, proj, k=-1):
    if _impl is not _kernels_py and len(proj) <= 30:
        return _impl.subforms(word, lengths, proj, k)
    return _kernels_py.subforms(word, lengths, proj, k)


def backends():
    """All importable kernel modules, Python first (used by tests/benchmarks)."""
    mods = [_kernels_py]
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        mods.append(_ckernels)
    return mods
