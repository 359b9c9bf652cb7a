"""Kernel backend selection.

The compiled Cython extension is preferred when it imported cleanly; the
numpy fallback is always available.  Set ``TFPHOTON_KERNELS=python`` to force
the fallback or ``TFPHOTON_KERNELS=compiled`` to require the extension.
"""

import os

from . import py_backend

_choice = os.environ.get("TFPHOTON_KERNELS", "").strip().lower()
_impl = py_backend
_name = "python"

if _choice != "python":
    try:
        from . import _fast

        _impl = _fast
        _name = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise RuntimeError(
                "TFPHOTON_KERNELS=compiled but the compiled extension is not available; "
                "build it with 'pip install -e . --no-build-isolation'"
            ) from None

corr_pure = _impl.corr_pure
corr_mixed = _impl.corr_mixed
lag_sums = _impl.lag_sums


def backend_name() -> str:
    """Which implementation is active, ``"compiled"`` or ``"python"``."""
    return _name
