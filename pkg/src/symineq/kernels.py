"""Backend selection for the evaluation kernel.

The compiled extension is used when it was built; set
``SYMINEQ_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

from . import _hkernel_py

BACKEND = "python"
_impl = _hkernel_py

if os.environ.get("SYMINEQ_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _hkernel as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

power_sums = _impl.power_sums
h_from_power_sums = _impl.h_from_power_sums
complete_h_table = _impl.complete_h_table
complete_h_batch = _impl.complete_h_batch
first_violation = _impl.first_violation


def available_backends():
    """Map of backend name to module, for tests and benchmarks."""
    out = {"python": _hkernel_py}
    try:
        from . import _hkernel
    except ImportError:
        return out
    out["cython"] = _hkernel
    return out
