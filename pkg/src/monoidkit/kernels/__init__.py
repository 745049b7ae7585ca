"""Table-scan kernels with a compiled fast path.

The Cython module is used when it was built; setting MONOIDKIT_PURE=1 in the
environment (or a failed build) selects the pure-Python implementation.
``IMPL`` names the active backend so tests and benchmarks can report it.
"""

import os

from . import _tables_py

if os.environ.get("MONOIDKIT_PURE"):
    _impl = _tables_py
    IMPL = "python"
else:
    try:
        from . import _tables_cy as _impl

        IMPL = "cython"
    except ImportError:
        _impl = _tables_py
        IMPL = "python"

find_assoc_violation = _impl.find_assoc_violation
find_comm_violation = _impl.find_comm_violation
find_neutral_violation = _impl.find_neutral_violation
find_cancel_violation = _impl.find_cancel_violation
find_add_witness = _impl.find_add_witness
regular_classes = _impl.regular_classes
nsum_index = _impl.nsum_index
orbit_hits_diagonal = _impl.orbit_hits_diagonal
exists_nsum_eq = _impl.exists_nsum_eq
u_classes = _impl.u_classes
div_scan = _impl.div_scan

ALL_IMPLS = {"python": _tables_py}
try:
    from . import _tables_cy

    ALL_IMPLS["cython"] = _tables_cy
except ImportError:
    pass
