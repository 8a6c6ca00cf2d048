"""Backend selection for the scan kernel.

The compiled Cython kernel is used when it was built and the environment
variable DIOFACT_PURE is unset; otherwise the pure-Python twin takes over.
Both expose the same scan_chunk signature and produce identical output.
"""

from __future__ import annotations

import os

from . import _brocard_py

_compiled = None
if not os.environ.get("DIOFACT_PURE"):
    try:
        from . import _brocard as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

if _compiled is not None:
    scan_chunk = _compiled.scan_chunk
    BACKEND = "compiled"
else:
    scan_chunk = _brocard_py.scan_chunk
    BACKEND = "pure-python"

# primes at or above 2^32 overflow the compiled kernel's 64-bit products
COMPILED_PRIME_LIMIT = 1 << 32


def scan_chunk_for(witnesses):
    """Kernel able to handle these witnesses (compiled unless too large)."""
    if _compiled is not None and all(p < COMPILED_PRIME_LIMIT for p in witnesses):
        return _compiled.scan_chunk
    return _brocard_py.scan_chunk


def backend_for(witnesses) -> str:
    if _compiled is not None and all(p < COMPILED_PRIME_LIMIT for p in witnesses):
        return "compiled"
    return "pure-python"
