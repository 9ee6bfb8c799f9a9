"""Kernel backend selection.

The compiled extension is used when importable; ``DELAYMARGIN_BACKEND``
(``auto`` | ``compiled`` | ``python``) overrides the choice.
"""
import os

from . import _pykernels

_choice = os.environ.get("DELAYMARGIN_BACKEND", "auto").lower()

if _choice == "python":
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        kernels = _pykernels
        BACKEND = "python"

compiled_kernels = kernels if BACKEND == "compiled" else None
python_kernels = _pykernels
