"""Hot arithmetic kernels, compiled when available.

Set ``QSCHUR_PURE=1`` to force the pure-Python implementations.
"""

import os

from . import _purekernels

FIELD_BITS = 8
FIELD = _purekernels.FIELD

_impl = _purekernels
BACKEND = "python"
if not os.environ.get("QSCHUR_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _purekernels

mul_terms = _impl.mul_terms
div_difference = _impl.div_difference
swap_fields = _impl.swap_fields
IncrementalRank = _impl.IncrementalRank
