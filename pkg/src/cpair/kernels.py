"""Kernel backend selection.

The compiled extension is used when it was built and
``CPAIR_PURE_PYTHON`` is unset; otherwise the pure-Python kernels run.
"""

import os

from . import _kernels_py

OFF, FINITE, LOG = _kernels_py.OFF, _kernels_py.FINITE, _kernels_py.LOG

_compiled = None
if not os.environ.get("CPAIR_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _matrix(rows, width):
    import numpy as np

    if not rows:
        return np.zeros((0, width), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), width)


def allowance_table(counts, powers, floors, kinds, backend=None):
    """Per-tensor pole allowances as a list of tuples."""
    backend = backend or BACKEND
    if backend == "python" or _compiled is None:
        return _kernels_py.allowance_table(counts, powers, floors, kinds)
    import numpy as np

    d = len(powers)
    res = _compiled.allowance_table(
        _matrix(counts, d),
        np.asarray(powers, dtype=np.int64),
        np.asarray(floors, dtype=np.int64),
        np.asarray(kinds, dtype=np.int64),
    )
    return [tuple(int(v) for v in row) for row in res]


def box_scan(lo, hi, dim, gens_a, gens_b, thresholds, backend=None):
    """Mismatch count between generator membership and thresholds on a box."""
    backend = backend or BACKEND
    if backend == "python" or _compiled is None:
        return _kernels_py.box_scan(lo, hi, dim, gens_a, gens_b, thresholds)
    import numpy as np

    bad, total = _compiled.box_scan(
        lo, hi, dim, _matrix(gens_a, dim), _matrix(gens_b, dim),
        np.asarray(thresholds, dtype=np.int64),
    )
    return int(bad), int(total)
