"""Pick the AO loop implementation at import time.

The compiled ``_kernels`` module is preferred; ``AINFO_BACKEND=python``
forces the numpy fallback.
"""

import os

from ainfo import _fallback

BACKEND = "python"
kernels = _fallback

if os.environ.get("AINFO_BACKEND", "").lower() != "python":
    try:
        from ainfo import _kernels as kernels  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        pass


def get(name: str | None = None):
    """Return a kernel module by name ("cython" or "python"); default is active."""
    if name is None:
        return kernels
    if name == "python":
        return _fallback
    if name == "cython":
        from ainfo import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
