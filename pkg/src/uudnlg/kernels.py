"""Import-time selection between the compiled kernels and their
pure-Python fallback.

Set ``UUDNLG_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and the equivalence tests).
"""

import os

from . import _kernels_py

if os.environ.get("UUDNLG_PURE_PYTHON") == "1":
    _impl = _kernels_py
    HAVE_SPEEDUPS = False
else:
    try:
        from . import _speedups as _impl
        HAVE_SPEEDUPS = True
    except ImportError:
        _impl = _kernels_py
        HAVE_SPEEDUPS = False

lcs_length = _impl.lcs_length


def lcs_length_tokens(a, b):
    """LCS length over arbitrary hashable tokens (interned to ints)."""
    ids = {}
    return lcs_length([ids.setdefault(t, len(ids)) for t in a],
                      [ids.setdefault(t, len(ids)) for t in b])
