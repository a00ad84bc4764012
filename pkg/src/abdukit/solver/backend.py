"""Kernel selection: compiled extension if available, pure Python otherwise.

ABDUKIT_KERNEL=c or =python forces the choice; forcing c without the
extension built is an error rather than a silent fallback.
"""

from __future__ import annotations

import os

from ..core import AbdukitError


def load_kernel():
    choice = os.environ.get("ABDUKIT_KERNEL", "").strip().lower()
    if choice not in ("", "c", "python"):
        raise AbdukitError("ABDUKIT_KERNEL must be 'c' or 'python', got %r" % choice)
    if choice != "python":
        try:
            from . import _kernel  # type: ignore[attr-defined]

            return _kernel
        except ImportError:
            if choice == "c":
                raise AbdukitError(
                    "ABDUKIT_KERNEL=c but the compiled kernel is not built"
                ) from None
    from . import kernel_py

    return kernel_py
