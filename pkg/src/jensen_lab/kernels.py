"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Set ``JENSEN_LAB_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from jensen_lab import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("JENSEN_LAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from jensen_lab import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _pykernels

splitmix64 = _impl.splitmix64
bytes_hash = _impl.bytes_hash
noise_values = _impl.noise_values

# int64 intermediates stay well below 2**62 under this bound
_C_SAFE = 1 << 58


def heisenberg_box_scan(radius: int, a: int, b: int, cmn: int, ck: int):
    """Exhaustive exact Jensen-defect scan over the box [-radius, radius]^3 squared.

    Falls back to the arbitrary-precision Python loop whenever int64
    intermediates could overflow.
    """
    r2 = 2 * radius + 1
    scale = (abs(a) + abs(b) + abs(ck)) * 4 * r2 + abs(cmn) * 4 * r2 * r2
    if _impl is not _pykernels and scale * 8 < _C_SAFE:
        return _impl.heisenberg_box_scan(radius, a, b, cmn, ck)
    return _pykernels.heisenberg_box_scan(radius, a, b, cmn, ck)
