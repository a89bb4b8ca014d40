"""Backend selection for the letter kernels.

The compiled ``_speedups`` extension is used when it has been built; set
``MRQ_PURE_PYTHON=1`` to force the pure-Python implementation.
"""
import os

from mrq import _purekernels

if os.environ.get("MRQ_PURE_PYTHON", "") not in ("", "0"):
    _impl = _purekernels
else:
    try:
        from mrq import _speedups as _impl
    except ImportError:  # extension not built
        _impl = _purekernels

BACKEND = "python" if _impl is _purekernels else "cython"

free_reduce = _impl.free_reduce
cancel_length = _impl.cancel_length
periodic_lcp = _impl.periodic_lcp
smallest_period = _impl.smallest_period
least_rotation = _impl.least_rotation
substitute_reduce = _impl.substitute_reduce

__all__ = [
    "BACKEND",
    "free_reduce",
    "cancel_length",
    "periodic_lcp",
    "smallest_period",
    "least_rotation",
    "substitute_reduce",
]
