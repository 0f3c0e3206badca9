"""Search kernels with a compiled fast path.

Importing this package picks the compiled extension when it was built and
silently falls back to the numpy reference otherwise.  Both expose the same
functions with the same grids, iteration order, and tie-breaking.  Values
agree to the last ulp or so (numpy's vectorized complex products contract
multiply-adds; the compiled loop does not), which can swap the winner among
analytically tied maximizers, so reports are reproducible per backend rather
than across backends.  BACKEND says which one is active.
"""

from . import _reference

try:
    from . import _native as _impl
except ImportError:
    _impl = _reference

BACKEND = _impl.BACKEND

FS = _reference.FS
A2 = _reference.A2
A3 = _reference.A3
A4 = _reference.A4
H2_1 = _reference.H2_1
H2_2 = _reference.H2_2
A2A3_A4 = _reference.A2A3_A4

lz_search = _impl.lz_search
member_coeffs_batch = _impl.member_coeffs_batch

reference_lz_search = _reference.lz_search
reference_member_coeffs_batch = _reference.member_coeffs_batch

__all__ = [
    "BACKEND",
    "FS",
    "A2",
    "A3",
    "A4",
    "H2_1",
    "H2_2",
    "A2A3_A4",
    "lz_search",
    "member_coeffs_batch",
    "reference_lz_search",
    "reference_member_coeffs_batch",
]
