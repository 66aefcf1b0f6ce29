"""Pick the compiled row-reduction kernels when available.

Set ``MILNOR_DESCENT_PURE=1`` to force the pure-Python fallback.
"""

import os

from . import _kernels_py

if os.environ.get("MILNOR_DESCENT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
rref_modp = _impl.rref_modp
rref_int = _impl.rref_int
