"""Backend selection for the hot kernels.

The compiled extension ``seminf._ckernels`` is used when it is importable;
otherwise the numpy/pure-Python versions in ``seminf._kernels_py`` are used.
Setting ``SEMINF_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("SEMINF_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

OP_VAR, OP_INV, OP_MUL, OP_ADD = (
    _kernels_py.OP_VAR, _kernels_py.OP_INV, _kernels_py.OP_MUL, _kernels_py.OP_ADD
)
AXIOMS = _kernels_py.AXIOMS

first_nonassociative = _impl.first_nonassociative
semiring_violations = _impl.semiring_violations
eval_program = _impl.eval_program
eval_registers = _impl.eval_registers
search_additions = _impl.search_additions


def backends():
    """Map of backend name to kernel module for every available backend."""
    found = {"python": _kernels_py}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
