"""Kernel backend selection.

The compiled extension (``enosepca._native``) is preferred when it
built; otherwise the pure-Python twin in ``pure.py`` takes over. Set
``ENOSEPCA_BACKEND=python`` to force the fallback or
``ENOSEPCA_BACKEND=native`` to require the extension (ImportError if
it is missing). ``BACKEND`` reports which one is live.
"""

import os

_choice = os.environ.get("ENOSEPCA_BACKEND", "").strip().lower()
if _choice not in ("", "native", "python"):
    raise ValueError(
        f"ENOSEPCA_BACKEND must be 'native' or 'python', got {_choice!r}"
    )

if _choice == "python":
    from enosepca._kernels import pure as _impl

    BACKEND = "python"
else:
    try:
        from enosepca import _native as _impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        if _choice == "native":
            raise
        from enosepca._kernels import pure as _impl  # type: ignore[no-redef]

        BACKEND = "python"

dft_magnitude = _impl.dft_magnitude
fft_pow2_magnitude = _impl.fft_pow2_magnitude
jacobi_sweeps = _impl.jacobi_sweeps

__all__ = ["BACKEND", "dft_magnitude", "fft_pow2_magnitude", "jacobi_sweeps"]
